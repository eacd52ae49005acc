#pragma once

#include <cstddef>
#include <cstdint>
#include <json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rftdist/metric.hpp"
#include "rftdist/seqmodel.hpp"
#include "rftdist/transform.hpp"

// Seeded experiment harness: synthetic signals and sequences, mutation
// simulators, correlation statistics and the RFT/DFT timing comparison.
// Every generator is a pure function of its arguments and seed (see Rng).
namespace rftdist::labkit {

enum class MutationKind { point, deletion };

const char* to_string(MutationKind kind);
MutationKind parse_mutation_kind(std::string_view text);

struct MutationPlan {
  std::uint64_t seed = 0;
  MutationKind kind = MutationKind::point;
  std::size_t amount = 0;  // substitution count or deletion length
  std::vector<std::size_t> positions;  // 0-based, ascending
};

struct Mutant {
  seq::DnaRecord record;
  MutationPlan plan;
};

// s[t] = sin(2 pi t/10 + pi/4) + cos(2 pi t/20 + pi/4) + noise, t = 1..n,
// with Gaussian noise of standard deviation noise_sigma.
std::vector<double> synth_periodic(std::size_t n, std::uint64_t seed, double noise_sigma);

// i.i.d. uniform bases; a stand-in for non-coding sequence.
seq::DnaRecord random_sequence(std::string id, std::size_t length, std::uint64_t seed);

// Bases drawn with codon-position-dependent composition, which gives the
// sequence a period-3 component like protein-coding exons.
seq::DnaRecord coding_like_sequence(std::string id, std::size_t length, std::uint64_t seed);

// AT-rich i.i.d. bases carrying one (CA)n microsatellite of up to 80 bp at an
// even offset: non-coding sequence whose only periodic component is period 2.
seq::DnaRecord intron_like_sequence(std::string id, std::size_t length, std::uint64_t seed);

// Substitutes `count` distinct positions, each with one of the three other
// bases chosen uniformly (any of the four for non-ACGT symbols). For a fixed
// seed the mutations of a smaller count are a prefix of those of a larger one.
Mutant mutate_point(const seq::DnaRecord& rec, std::size_t count, std::uint64_t seed);

// Removes the last del_len bases (3' end). The seed is only recorded.
Mutant mutate_delete(const seq::DnaRecord& rec, std::size_t del_len, std::uint64_t seed);

// Sample Pearson correlation; nullopt when a series has zero variance.
// Throws DimensionError for unequal lengths, InvalidArgument for fewer than
// two points.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

struct ExperimentReport {
  std::string experiment;
  std::string x_label = "x";
  std::string y_label = "y";
  std::vector<double> x;
  std::vector<double> y;
  std::optional<double> pearson_r;
  nlohmann::json metadata = nlohmann::json::object();
  // Outcome of the experiment's built-in acceptance check.
  bool predicate_passed = true;
  std::string predicate;
};

std::vector<std::size_t> default_point_steps();     // 1, 6, ..., 96
std::vector<std::size_t> default_deletion_steps();  // 1..100

// For each step builds a mutant and records its RFT distance to `rec`, padding both to the longer length.
// All steps share one derived seed, so point mutants are nested. Steps must
// be non-empty and strictly increasing.
ExperimentReport run_mutation_series(const seq::DnaRecord& rec, MutationKind kind,
                                     std::span<const std::size_t> steps, std::uint64_t seed,
                                     transform::BasisCache& cache);

// A and B mutate `base` at floor(rate * length) positions; A1, A2 mutate A and
// B1, B2 mutate B at the same count. Returned in order A, A1, A2, B, B1, B2.
std::vector<seq::DnaRecord> simulate_clades(const seq::DnaRecord& base, double rate,
                                            std::uint64_t seed);

// RFT of the synthetic signal (|Y(q)|) and DFT power (|U(k)|^2), with the
// top-2 peak positions of each recorded in the metadata.
ExperimentReport run_synth(std::size_t n, std::uint64_t seed, double noise_sigma,
                           transform::BasisCache& cache);

// Pairwise RFT distances over `count` coding-like sequences with lengths
// in [min_length, max_length]; audits every triple.
ExperimentReport run_triangle(std::size_t count, std::size_t min_length, std::size_t max_length,
                              std::uint64_t seed, transform::BasisCache& cache);

// Simulated clades -> RFT distances -> UPGMA; checks the two clades.
ExperimentReport run_clades(const seq::DnaRecord& base, double rate, std::uint64_t seed,
                            transform::BasisCache& cache);

struct TimingReport {
  std::size_t n = 0;
  std::size_t rounds = 0;
  double build_seconds = 0.0;  // basis construction, once
  double rft_seconds = 0.0;    // rounds x forward RFT
  double dft_seconds = 0.0;    // rounds x forward DFT
  double ratio() const { return dft_seconds > 0.0 ? rft_seconds / dft_seconds : 0.0; }
};

// Single-worker timing of repeated forward transforms on one random binary
// signal. Uses the serial RFT kernel.
TimingReport benchmark_transforms(std::size_t n, std::size_t rounds, std::uint64_t seed = 0);

// Least-squares slope of log(t) against log(n).
double fit_loglog_exponent(std::span<const double> n, std::span<const double> t);

}  // namespace rftdist::labkit
