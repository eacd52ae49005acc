#include "rftdist/seqmodel.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rftdist/error.hpp"

namespace rftdist::seq {

char to_char(Nucleotide nuc) {
  static constexpr char kChars[] = {'A', 'T', 'C', 'G'};
  return kChars[static_cast<std::size_t>(nuc)];
}

std::vector<DnaRecord> parse_fasta(std::istream& in) {
  std::vector<DnaRecord> records;
  std::string line;
  std::size_t line_no = 0;
  std::size_t header_line = 0;

  auto close_record = [&]() {
    if (!records.empty() && records.back().bases.empty()) {
      throw ParseError("record '" + records.back().id + "' has an empty sequence", header_line);
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '>') {
      close_record();
      header_line = line_no;
      DnaRecord rec;
      const std::string_view header = std::string_view(line).substr(1);
      const auto start = header.find_first_not_of(" \t");
      if (start == std::string_view::npos) throw ParseError("header without identifier", line_no);
      const auto end = header.find_first_of(" \t", start);
      rec.id = std::string(header.substr(start, end - start));
      if (end != std::string_view::npos) {
        const auto desc = header.find_first_not_of(" \t", end);
        if (desc != std::string_view::npos) rec.description = std::string(header.substr(desc));
      }
      records.push_back(std::move(rec));
      continue;
    }
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (records.empty()) throw ParseError("sequence data before the first '>' header", line_no);
      records.back().bases.push_back(
          static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  close_record();
  return records;
}

std::vector<DnaRecord> parse_fasta(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_fasta(in);
}

std::vector<DnaRecord> read_fasta_file(const std::filesystem::path& path) {
  if (path == "-") return parse_fasta(std::cin);
  std::ifstream in(path);
  if (!in) throw Error("cannot open FASTA file " + path.string());
  return parse_fasta(in);
}

void write_fasta(std::ostream& out, std::span<const DnaRecord> records, std::size_t width) {
  if (width == 0) throw InvalidArgument("FASTA line width must be positive");
  for (const auto& rec : records) {
    out << '>' << rec.id;
    if (!rec.description.empty()) out << ' ' << rec.description;
    out << '\n';
    for (std::size_t pos = 0; pos < rec.bases.size(); pos += width) {
      out << std::string_view(rec.bases).substr(pos, width) << '\n';
    }
  }
}

std::string to_fasta(std::span<const DnaRecord> records, std::size_t width) {
  std::ostringstream out;
  write_fasta(out, records, width);
  return out.str();
}

std::vector<double> IndicatorSet::signal(Nucleotide nuc) const {
  const auto& bits = indicator(nuc);
  return {bits.begin(), bits.end()};
}

IndicatorSet to_indicators(const DnaRecord& rec) {
  IndicatorSet out;
  const std::size_t n = rec.bases.size();
  for (auto& s : out.signals_) s.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    switch (std::toupper(static_cast<unsigned char>(rec.bases[i]))) {
      case 'A': out.signals_[0][i] = 1; break;
      case 'T':
      case 'U': out.signals_[1][i] = 1; break;
      case 'C': out.signals_[2][i] = 1; break;
      case 'G': out.signals_[3][i] = 1; break;
      default: ++out.ambiguous_count_; break;
    }
  }
  out.original_length_ = n;
  return out;
}

IndicatorSet pad_to(const IndicatorSet& ind, std::size_t m) {
  if (m < ind.padded_length()) {
    throw InvalidArgument("cannot pad a length-" + std::to_string(ind.padded_length()) +
                          " indicator set down to " + std::to_string(m));
  }
  IndicatorSet out = ind;
  for (auto& s : out.signals_) s.resize(m, 0);
  return out;
}

}  // namespace rftdist::seq
