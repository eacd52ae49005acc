#include "rftdist/io.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rftdist/error.hpp"

namespace rftdist::io {

namespace {

// Storage positions [lo, hi) selected by the view.
std::pair<std::size_t, std::size_t> view_range(const transform::PowerSpectrum& ps,
                                               SpectrumView view) {
  if (!view.plot) return {0, ps.size()};
  if (ps.kind == transform::SpectrumKind::rft) return {std::min<std::size_t>(1, ps.size()), ps.size()};
  return {std::min<std::size_t>(1, ps.size()), std::min(ps.size(), ps.size() / 2 + 1)};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field", line_no);
  out.push_back(std::move(field));
  return out;
}

double parse_double(const std::string& token, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (token.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError("'" + token + "' is not a number", line_no);
  }
}

metric::DistanceMatrix parse_phylip(std::string_view text, metric::Method method) {
  std::istringstream in{std::string(text)};
  std::size_t n = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  {
    std::istringstream head(line);
    if (!(head >> n) || n == 0) throw ParseError("PHYLIP header must be a positive count", line_no);
  }
  std::vector<std::string> labels;
  std::vector<double> values;
  while (labels.size() < n && std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::string label;
    if (!(row >> label)) continue;
    labels.push_back(label);
    std::string token;
    std::size_t got = 0;
    while (row >> token) {
      values.push_back(parse_double(token, line_no));
      ++got;
    }
    if (got != n) {
      throw ParseError("PHYLIP row '" + label + "' has " + std::to_string(got) + " values, expected " +
                           std::to_string(n),
                       line_no);
    }
  }
  if (labels.size() != n) throw ParseError("PHYLIP matrix has fewer rows than declared", line_no);
  return metric::DistanceMatrix(std::move(labels), std::move(values), method);
}

metric::DistanceMatrix parse_square_csv(std::string_view text, metric::Method method) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    header = split_csv_line(line, line_no);
    break;
  }
  if (header.size() < 2) throw ParseError("CSV matrix needs a header row of labels", line_no);
  std::vector<std::string> labels(header.begin() + 1, header.end());
  const std::size_t n = labels.size();
  std::vector<double> values;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line, line_no);
    if (fields.size() != n + 1) throw ParseError("CSV matrix row has the wrong number of fields", line_no);
    if (rows >= n || fields[0] != labels[rows]) {
      throw ParseError("CSV matrix row label does not match the header order", line_no);
    }
    for (std::size_t j = 1; j <= n; ++j) values.push_back(parse_double(fields[j], line_no));
    ++rows;
  }
  if (rows != n) throw ParseError("CSV matrix is not square", line_no);
  return metric::DistanceMatrix(std::move(labels), std::move(values), method);
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  static std::atomic<unsigned> counter{0};
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  if (!dir.empty()) std::filesystem::create_directories(dir);
  auto temp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()) + "." +
                     std::to_string(counter.fetch_add(1)));
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(temp, ec);
      throw Error("cannot write " + path.string());
    }
  }
  std::filesystem::rename(temp, path);
}

std::string power_spectrum_csv(const transform::PowerSpectrum& ps, SpectrumView view) {
  const auto [lo, hi] = view_range(ps, view);
  std::string out = "index,value\n";
  for (std::size_t i = lo; i < hi; ++i) {
    out += std::to_string(i + ps.first_index()) + "," + format_number(ps.values[i]) + "\n";
  }
  return out;
}

nlohmann::json power_spectrum_json(const transform::PowerSpectrum& ps, SpectrumView view) {
  const auto [lo, hi] = view_range(ps, view);
  nlohmann::json values = nlohmann::json::array();
  for (std::size_t i = lo; i < hi; ++i) values.push_back(std::stod(format_number(ps.values[i])));
  return {{"kind", transform::to_string(ps.kind)},
          {"N", ps.size()},
          {"includes_first_term", ps.includes_first_term && lo == 0},
          {"first_index", lo + ps.first_index()},
          {"values", values}};
}

std::string spectra_csv(const std::array<transform::Spectrum, 4>& spectra) {
  const std::size_t n = spectra[0].source_length();
  const std::size_t base = spectra[0].kind() == transform::SpectrumKind::rft ? 1 : 0;
  std::string out = "index,value_A,value_T,value_C,value_G\n";
  for (std::size_t i = 0; i < n; ++i) {
    out += std::to_string(i + base);
    for (const auto& s : spectra) {
      const double v = s.kind() == transform::SpectrumKind::rft ? s.real()[i] : s.magnitude(i);
      out += "," + format_number(v);
    }
    out += "\n";
  }
  return out;
}

nlohmann::json spectra_json(const std::array<transform::Spectrum, 4>& spectra) {
  const auto kind = spectra[0].kind();
  nlohmann::json out = {{"kind", transform::to_string(kind)},
                        {"N", spectra[0].source_length()},
                        {"includes_first_term", true},
                        {"first_index", kind == transform::SpectrumKind::rft ? 1 : 0}};
  for (std::size_t s = 0; s < 4; ++s) {
    nlohmann::json values = nlohmann::json::array();
    for (std::size_t i = 0; i < spectra[s].source_length(); ++i) {
      const double v = kind == transform::SpectrumKind::rft ? spectra[s].real()[i] : spectra[s].magnitude(i);
      values.push_back(std::stod(format_number(v)));
    }
    out[std::string("values_") + seq::to_char(seq::kNucleotides[s])] = values;
  }
  return out;
}

std::string distance_matrix_csv(const metric::DistanceMatrix& matrix) {
  std::string out;
  for (const auto& label : matrix.labels()) out += "," + csv_field(label);
  out += "\n";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out += csv_field(matrix.labels()[i]);
    for (std::size_t j = 0; j < matrix.size(); ++j) out += "," + format_number(matrix(i, j));
    out += "\n";
  }
  return out;
}

std::string distance_matrix_phylip(const metric::DistanceMatrix& matrix) {
  for (const auto& label : matrix.labels()) {
    if (label.find_first_of(" \t\n") != std::string::npos) {
      throw InvalidArgument("PHYLIP labels cannot contain whitespace: '" + label + "'");
    }
  }
  std::string out = std::to_string(matrix.size()) + "\n";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    std::string label = matrix.labels()[i];
    if (label.size() < 10) label.resize(10, ' ');
    out += label;
    for (std::size_t j = 0; j < matrix.size(); ++j) out += " " + format_number(matrix(i, j));
    out += "\n";
  }
  return out;
}

metric::DistanceMatrix parse_distance_matrix(std::string_view text, metric::Method method) {
  std::istringstream probe{std::string(text)};
  std::string first;
  probe >> first;
  if (first.empty()) throw ParseError("empty distance matrix", 1);
  if (first.find_first_not_of("0123456789") == std::string::npos) return parse_phylip(text, method);
  return parse_square_csv(text, method);
}

nlohmann::json dendrogram_json(const phylo::PhyloTree& tree) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < tree.node_count(); ++i) {
    const auto& n = tree.node(i);
    nlohmann::json node = {{"id", i},
                           {"height", std::stod(format_number(n.height))},
                           {"branch_length", std::stod(format_number(tree.branch_length(i)))}};
    if (n.is_leaf()) {
      node["label"] = n.label;
    } else {
      node["children"] = {n.left, n.right};
    }
    nodes.push_back(node);
  }
  return {{"root", tree.root()},
          {"leaves", tree.leaf_count()},
          {"newick", phylo::to_newick(tree)},
          {"nodes", nodes}};
}

nlohmann::json report_json(const labkit::ExperimentReport& report) {
  nlohmann::json out = {{"experiment", report.experiment},
                        {"x_label", report.x_label},
                        {"y_label", report.y_label},
                        {"predicate", report.predicate},
                        {"predicate_passed", report.predicate_passed},
                        {"metadata", report.metadata}};
  out["pearson_r"] = report.pearson_r ? nlohmann::json(*report.pearson_r) : nlohmann::json(nullptr);
  nlohmann::json x = nlohmann::json::array();
  nlohmann::json y = nlohmann::json::array();
  for (double v : report.x) x.push_back(std::stod(format_number(v)));
  for (double v : report.y) y.push_back(std::stod(format_number(v)));
  out["x"] = x;
  out["y"] = y;
  return out;
}

std::string report_csv(const labkit::ExperimentReport& report) {
  std::string out = report.x_label + "," + report.y_label + "\n";
  for (std::size_t i = 0; i < report.x.size(); ++i) {
    out += format_number(report.x[i]) + "," + format_number(report.y[i]) + "\n";
  }
  return out;
}

nlohmann::json timing_json(const labkit::TimingReport& report) {
  return {{"n", report.n},
          {"rounds", report.rounds},
          {"build_seconds", report.build_seconds},
          {"rft_seconds", report.rft_seconds},
          {"dft_seconds", report.dft_seconds},
          {"rft_dft_ratio", report.ratio()}};
}

}  // namespace rftdist::io
