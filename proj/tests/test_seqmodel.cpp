#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "rftdist/error.hpp"
#include "rftdist/labkit.hpp"
#include "rftdist/seqmodel.hpp"

using namespace rftdist;
using seq::Nucleotide;

namespace {

std::vector<std::uint8_t> bits(std::string_view s) {
  std::vector<std::uint8_t> out;
  for (char c : s) out.push_back(c == '1' ? 1 : 0);
  return out;
}

}  // namespace

TEST(ParseFasta, SingleRecord) {
  const auto recs = seq::parse_fasta(">s1\nACGT\n");
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].id, "s1");
  EXPECT_EQ(recs[0].bases, "ACGT");
  EXPECT_EQ(recs[0].length(), 4u);
}

TEST(ParseFasta, FoldsCaseAndConcatenatesLines) {
  const auto recs = seq::parse_fasta(">s1 first one\nac\ngt\n>s2\nTTTT\n");
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].bases, "ACGT");
  EXPECT_EQ(recs[0].description, "first one");
  EXPECT_EQ(recs[1].bases, "TTTT");
}

TEST(ParseFasta, ToleratesCrlfBlankLinesAndInnerWhitespace) {
  const auto recs = seq::parse_fasta(">a\r\nAC GT\r\n\r\nnn\r\n");
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].bases, "ACGTNN");
  EXPECT_TRUE(seq::parse_fasta("").empty());
}

TEST(ParseFasta, ErrorsNameTheLine) {
  try {
    seq::parse_fasta("ACGT\n>s\nA\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  try {
    seq::parse_fasta(">ok\nAC\n>empty\n>next\nA\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(seq::parse_fasta(">only\n"), ParseError);
  EXPECT_THROW(seq::parse_fasta(">\nACGT\n"), ParseError);
}

TEST(ParseFasta, RoundTripThroughWriter) {
  std::vector<seq::DnaRecord> recs;
  for (int i = 0; i < 5; ++i) {
    recs.push_back(labkit::random_sequence("r" + std::to_string(i), 50 + 37 * i, i));
  }
  recs[2].description = "with description";
  const auto text = seq::to_fasta(recs);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line[0] != '>') {
      EXPECT_LE(line.size(), 70u);
    }
  }
  const auto back = seq::parse_fasta(text);
  ASSERT_EQ(back.size(), recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(back[i].id, recs[i].id);
    EXPECT_EQ(back[i].bases, recs[i].bases);
    EXPECT_EQ(back[i].description, recs[i].description);
  }
  EXPECT_THROW(seq::to_fasta(recs, 0), InvalidArgument);
}

TEST(Indicators, AcgtExample) {
  const auto ind = seq::to_indicators({"s", "", "ACGT"});
  EXPECT_EQ(ind.indicator(Nucleotide::A), bits("1000"));
  EXPECT_EQ(ind.indicator(Nucleotide::C), bits("0100"));
  EXPECT_EQ(ind.indicator(Nucleotide::G), bits("0010"));
  EXPECT_EQ(ind.indicator(Nucleotide::T), bits("0001"));
  EXPECT_EQ(ind.original_length(), 4u);
  EXPECT_EQ(ind.padded_length(), 4u);
}

TEST(Indicators, PositionsOfA) {
  const auto ind = seq::to_indicators({"s", "", "CGTACAGAAA"});
  EXPECT_EQ(ind.indicator(Nucleotide::A), bits("0001010111"));
}

TEST(Indicators, AmbiguousSymbolsAreZeroAndUIsT) {
  const auto ind = seq::to_indicators({"s", "", "ANGT-U"});
  for (auto nuc : seq::kNucleotides) {
    EXPECT_EQ(ind.indicator(nuc)[1], 0);
    EXPECT_EQ(ind.indicator(nuc)[4], 0);
  }
  EXPECT_EQ(ind.indicator(Nucleotide::T)[5], 1);
  EXPECT_EQ(ind.ambiguous_count(), 2u);
}

TEST(Indicators, PartitionAcgtPositions) {
  const auto rec = labkit::random_sequence("r", 300, 12);
  seq::DnaRecord noisy = rec;
  noisy.bases[10] = 'N';
  noisy.bases[99] = 'R';
  const auto ind = seq::to_indicators(noisy);
  std::size_t total = 0;
  for (std::size_t i = 0; i < noisy.length(); ++i) {
    int sum = 0;
    for (auto nuc : seq::kNucleotides) sum += ind.indicator(nuc)[i];
    EXPECT_EQ(sum, (i == 10 || i == 99) ? 0 : 1);
    total += static_cast<std::size_t>(sum);
  }
  EXPECT_EQ(total, noisy.length() - 2);
  const auto sig = ind.signal(Nucleotide::G);
  EXPECT_EQ(sig.size(), noisy.length());
}

TEST(PadTo, Examples) {
  const auto ind = seq::pad_to(seq::to_indicators({"s", "", "AC"}), 4);
  EXPECT_EQ(ind.indicator(Nucleotide::A), bits("1000"));
  EXPECT_EQ(ind.indicator(Nucleotide::C), bits("0100"));
  EXPECT_EQ(ind.indicator(Nucleotide::G), bits("0000"));
  EXPECT_EQ(ind.indicator(Nucleotide::T), bits("0000"));
  EXPECT_EQ(ind.original_length(), 2u);
  EXPECT_EQ(ind.padded_length(), 4u);

  const auto same = seq::pad_to(ind, 4);
  for (auto nuc : seq::kNucleotides) EXPECT_EQ(same.indicator(nuc), ind.indicator(nuc));
  EXPECT_THROW(seq::pad_to(ind, 3), InvalidArgument);
}

TEST(PadTo, CommonLengthKeepsPrefix) {
  const auto exon = seq::to_indicators(labkit::coding_like_sequence("e", 386, 1));
  const auto intron = seq::to_indicators(labkit::random_sequence("i", 654, 2));
  const auto pe = seq::pad_to(exon, 654);
  const auto pi = seq::pad_to(intron, 654);
  EXPECT_EQ(pe.padded_length(), 654u);
  EXPECT_EQ(pi.padded_length(), 654u);
  for (auto nuc : seq::kNucleotides) {
    const auto& before = exon.indicator(nuc);
    const auto& after = pe.indicator(nuc);
    EXPECT_TRUE(std::equal(before.begin(), before.end(), after.begin()));
    EXPECT_TRUE(std::all_of(after.begin() + 386, after.end(), [](auto v) { return v == 0; }));
  }
}
