#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rftdist::seq {

// Indicator order used throughout: A, T, C, G.
enum class Nucleotide : std::uint8_t { A = 0, T = 1, C = 2, G = 3 };

inline constexpr std::array<Nucleotide, 4> kNucleotides{Nucleotide::A, Nucleotide::T,
                                                        Nucleotide::C, Nucleotide::G};

char to_char(Nucleotide nuc);

struct DnaRecord {
  std::string id;
  std::string description;
  std::string bases;  // uppercase

  std::size_t length() const noexcept { return bases.size(); }
};

// Reads FASTA. Sequence lines are concatenated with whitespace removed and
// folded to uppercase. Throws ParseError for data before the first header or
// for a header with no sequence.
std::vector<DnaRecord> parse_fasta(std::istream& in);
std::vector<DnaRecord> parse_fasta(std::string_view text);
// "-" reads standard input.
std::vector<DnaRecord> read_fasta_file(const std::filesystem::path& path);

void write_fasta(std::ostream& out, std::span<const DnaRecord> records, std::size_t width = 70);
std::string to_fasta(std::span<const DnaRecord> records, std::size_t width = 70);

// Four binary signals over one sequence, possibly zero-padded past the end of
// the sequence.
class IndicatorSet {
 public:
  const std::vector<std::uint8_t>& indicator(Nucleotide nuc) const {
    return signals_[static_cast<std::size_t>(nuc)];
  }
  std::vector<double> signal(Nucleotide nuc) const;

  std::size_t original_length() const noexcept { return original_length_; }
  std::size_t padded_length() const noexcept { return signals_[0].size(); }
  // Symbols outside {A,C,G,T,U}; encoded as zero in all four signals.
  std::size_t ambiguous_count() const noexcept { return ambiguous_count_; }

  friend IndicatorSet to_indicators(const DnaRecord& rec);
  friend IndicatorSet pad_to(const IndicatorSet& ind, std::size_t m);

 private:
  std::array<std::vector<std::uint8_t>, 4> signals_;
  std::size_t original_length_ = 0;
  std::size_t ambiguous_count_ = 0;
};

// u_a(n) = 1 iff base n is a. U counts as T; anything else is all-zero.
IndicatorSet to_indicators(const DnaRecord& rec);

// Zero-extends every signal to length m. Throws InvalidArgument if m is
// shorter than the current length.
IndicatorSet pad_to(const IndicatorSet& ind, std::size_t m);

}  // namespace rftdist::seq
