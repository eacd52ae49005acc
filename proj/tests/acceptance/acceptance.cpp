// Acceptance suite: one PASS/FAIL line per criterion. `--only N` runs a
// single criterion; the exit status is nonzero if any selected one fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "rftdist/fixtures.hpp"
#include "rftdist/labkit.hpp"
#include "rftdist/metric.hpp"
#include "rftdist/numtheory.hpp"
#include "rftdist/phylo.hpp"
#include "rftdist/rng.hpp"
#include "rftdist/transform.hpp"

namespace {

using namespace rftdist;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Outcome fibonacci_golden() {
  const std::vector<double> x{1, 1, 2, 3, 5, 8, 13, 21, 34, 55};
  const std::vector<double> golden{14.3, 3.3, -0.55, -4.0, 3.925, -5.85, -0.8667, 1.8, 2.9, 5.425};
  const auto table = numtheory::RamanujanTable::build(10);
  const auto basis = transform::build_basis(10, table);
  const auto spectrum = transform::rft_forward(x, *basis);
  const auto y = spectrum.real();
  const auto reference = oracle::rft_by_definition(x);
  double golden_err = 0.0;
  double oracle_err = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    golden_err = std::max(golden_err, std::abs(y[i] - golden[i]));
    oracle_err = std::max(oracle_err, std::abs(y[i] - reference[i]));
  }
  return {golden_err <= 1e-3 && oracle_err <= 1e-12,
          "max |Y - printed| = " + fmt(golden_err) + ", max |Y - direct| = " + fmt(oracle_err)};
}

Outcome ramanujan_identities() {
  double worst = 0.0;
  for (std::int64_t q = 1; q <= 200; ++q) {
    for (std::int64_t n = 1; n <= 200; ++n) {
      const double closed = static_cast<double>(numtheory::ramanujan_sum(q, n));
      worst = std::max(worst, std::abs(closed - oracle::ramanujan_exponential_sum(q, n)));
    }
  }
  const auto table = numtheory::RamanujanTable::build(500);
  std::size_t violations = 0;
  for (std::int64_t q = 1; q <= 500; ++q) {
    std::int64_t period_sum = 0;
    for (std::int64_t n = 1; n <= q; ++n) {
      const std::int64_t c = numtheory::ramanujan_sum(q, n);
      period_sum += c;
      if (c != table(q, n)) ++violations;
      if (numtheory::ramanujan_sum(q, n + q) != c || table(q, n + q) != c) ++violations;
    }
    if (period_sum != (q == 1 ? 1 : 0)) ++violations;
    if (numtheory::ramanujan_sum(q, 1) != oracle::moebius_by_definition(q)) ++violations;
    if (numtheory::ramanujan_sum(q, q) != oracle::totient_by_count(q)) ++violations;
  }
  return {worst <= 1e-6 && violations == 0,
          "max |closed - exponential sum| = " + fmt(worst) + " (q,n <= 200), identity violations = " +
              std::to_string(violations) + " (q <= 500)"};
}

Outcome inverse_round_trip() {
  double worst = 0.0;
  transform::BasisCache cache;
  for (const std::size_t n : {10, 64, 101, 654}) {
    const auto basis = cache.get(n);
    Rng rng(derive_seed(3, n));
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> x(n);
      for (auto& v : x) v = static_cast<double>(rng.uniform_below(2));
      const auto back = transform::rft_inverse(transform::rft_forward(x, *basis), *basis);
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(back[i] - x[i]));
    }
  }
  return {worst <= 1e-8, "max |x - inverse(forward(x))| = " + fmt(worst) + " over 400 vectors"};
}

std::string peaks_text(const nlohmann::json& peaks) {
  std::string out = "{";
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(peaks[i].get<std::size_t>());
  }
  return out + "}";
}

// Noise level and seed of the low-noise run.
constexpr double kSynthSigma = 0.25;
constexpr std::uint64_t kSynthSeed = 7;

Outcome hidden_periodicity() {
  transform::BasisCache cache;
  bool ok = true;
  std::string detail;
  for (const double sigma : {0.0, kSynthSigma}) {
    const auto report = labkit::run_synth(100, kSynthSeed, sigma, cache);
    const auto& meta = report.metadata;
    const std::set<std::size_t> rft(meta["rft_peaks"].begin(), meta["rft_peaks"].end());
    const std::set<std::size_t> dft(meta["dft_peaks"].begin(), meta["dft_peaks"].end());
    ok = ok && rft == std::set<std::size_t>{10, 20} && dft == std::set<std::size_t>{5, 10};
    if (!detail.empty()) detail += "; ";
    detail += "sigma " + fmt(sigma) + ": RFT " + peaks_text(meta["rft_peaks"]) + " DFT " +
              peaks_text(meta["dft_peaks"]);
  }
  return {ok, detail + " (seed " + std::to_string(kSynthSeed) + ")"};
}

seq::DnaRecord fixture_or_surrogate(std::string_view accession, bool exon, std::string& source) {
  if (auto rec = fixtures::load_cached(accession)) {
    source = std::string(accession);
    return *rec;
  }
  auto rec = exon ? fixtures::exon_surrogate() : fixtures::intron_surrogate();
  source = rec.id;
  return rec;
}

Outcome exon_intron_periodicity() {
  transform::BasisCache cache;
  std::string exon_source;
  std::string intron_source;
  const auto exon = fixture_or_surrogate(fixtures::kExonAccession, true, exon_source);
  const auto intron = fixture_or_surrogate(fixtures::kIntronAccession, false, intron_source);

  const std::size_t n = exon.length();
  const auto exon_rft = metric::rft_signature(exon, n, cache);
  const auto exon_dft = metric::dft_signature(exon, n);
  const std::size_t rft_peak = transform::peak_indices(exon_rft, 1, true).at(0);
  const std::size_t dft_peak = transform::peak_indices(exon_dft, 1, false).at(0);
  const auto expected_k = static_cast<std::size_t>(std::lround(static_cast<double>(n) / 3.0));

  const auto intron_rft = metric::rft_signature(intron, intron.length(), cache);
  const std::size_t intron_peak = transform::peak_indices(intron_rft, 1, true).at(0);
  // Strictly below the maximum: a tie at q = 3 would still count as maximal.
  const double ps3 = intron_rft.values[2];
  const double ps_max =
      *std::max_element(intron_rft.values.begin() + 1, intron_rft.values.end());

  const bool ok = rft_peak == 3 && dft_peak == expected_k && ps3 < ps_max;
  return {ok, exon_source + " (N=" + std::to_string(n) + "): RFT argmax q=" +
                  std::to_string(rft_peak) + ", DFT argmax k=" + std::to_string(dft_peak) +
                  " (expected " + std::to_string(expected_k) + "); " + intron_source +
                  ": PS(3)=" + fmt(ps3) + " vs max PS=" + fmt(ps_max) + " at q=" +
                  std::to_string(intron_peak)};
}

Outcome mutation_linearity() {
  transform::BasisCache cache;
  std::string source;
  const auto intron = fixture_or_surrogate(fixtures::kIntronAccession, false, source);
  const auto point_steps = labkit::default_point_steps();
  const auto deletion_steps = labkit::default_deletion_steps();
  const auto point =
      labkit::run_mutation_series(intron, labkit::MutationKind::point, point_steps, 11, cache);
  const auto deletion = labkit::run_mutation_series(intron, labkit::MutationKind::deletion,
                                                    deletion_steps, 11, cache);
  const double r_point = point.pearson_r.value_or(NAN);
  const double r_del = deletion.pearson_r.value_or(NAN);
  return {r_point > 0.9 && r_del > 0.9, source + ": point r=" + fmt(r_point) +
                                            ", deletion r=" + fmt(r_del)};
}

Outcome metric_axioms() {
  transform::BasisCache cache;
  constexpr std::size_t kCount = 200;
  std::vector<seq::DnaRecord> records;
  Rng lengths(200);
  for (std::size_t i = 0; i < kCount; ++i) {
    const std::size_t len = 80 + lengths.uniform_below(321);
    records.push_back(labkit::coding_like_sequence("exon" + std::to_string(i), len,
                                                   derive_seed(200, i)));
  }
  bool ok = true;
  std::string detail;
  for (const auto method : {metric::Method::rft, metric::Method::dft}) {
    const auto d = metric::pairwise_distances(records, method, cache);
    std::size_t axiom_violations = 0;
    for (std::size_t i = 0; i < kCount; ++i) {
      if (d(i, i) != 0.0) ++axiom_violations;
      for (std::size_t j = 0; j < kCount; ++j) {
        if (d(i, j) != d(j, i) || !(d(i, j) >= 0.0)) ++axiom_violations;
      }
    }
    const auto sampled = metric::audit_triangle_sampled(d, 100000, 77);
    const auto full = metric::audit_triangle(d);
    double min_slack = INFINITY;
    for (const auto& t : sampled) min_slack = std::min(min_slack, t.slack);
    for (const auto& t : full) min_slack = std::min(min_slack, t.slack);
    ok = ok && axiom_violations == 0 && min_slack >= -1e-9 && sampled.size() == 100000;
    if (!detail.empty()) detail += "; ";
    detail += std::string(metric::to_string(method)) + ": axiom violations " +
              std::to_string(axiom_violations) + ", min slack " + fmt(min_slack) + " over " +
              std::to_string(full.size()) + " triples";
  }
  return {ok, detail};
}

Outcome clade_recovery() {
  transform::BasisCache cache;
  std::string source;
  const auto intron = fixture_or_surrogate(fixtures::kIntronAccession, false, source);
  const auto records = labkit::simulate_clades(intron, 0.1, 2013);
  const auto tree = phylo::upgma(metric::pairwise_distances(records, metric::Method::rft, cache));
  const bool a = tree.has_clade({"A", "A1", "A2"});
  const bool b = tree.has_clade({"B", "B1", "B2"});
  return {a && b, source + ": " + phylo::to_newick(tree)};
}

Outcome influenza_grouping() {
  std::vector<seq::DnaRecord> records;
  std::vector<std::string> missing;
  for (const auto& entry : fixtures::kInfluenzaPanel) {
    if (auto rec = fixtures::load_cached(entry.accession)) {
      records.push_back(std::move(*rec));
    } else {
      missing.emplace_back(entry.accession);
    }
  }
  if (!missing.empty()) {
    return {false, std::to_string(missing.size()) + " of 31 panel records missing from " +
                       fixtures::cache_dir().string() + " (run `rftdist fetch --panel influenza`)"};
  }
  transform::BasisCache cache;
  const auto tree = phylo::upgma(metric::pairwise_distances(records, metric::Method::rft, cache));
  bool ok = true;
  std::string detail;
  for (const std::string subtype : {"H1N1", "H3N2", "H7N9", "H11N9"}) {
    std::set<std::string> members;
    for (const auto& entry : fixtures::kInfluenzaPanel) {
      if (entry.subtype == subtype) members.emplace(entry.accession);
    }
    const bool clade = tree.has_clade(members);
    ok = ok && clade;
    detail += subtype + (clade ? " clade, " : " split, ");
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

// Minimum over repeats keeps scheduler noise out of the fit.
double best_rft_seconds(std::size_t n, std::size_t rounds, int repeats) {
  double best = INFINITY;
  for (int r = 0; r < repeats; ++r) {
    best = std::min(best, labkit::benchmark_transforms(n, rounds, 5).rft_seconds);
  }
  return best / static_cast<double>(rounds);
}

Outcome complexity_scaling() {
  std::vector<double> ns;
  std::vector<double> ts;
  for (const std::size_t n : {256, 512, 1024, 2048}) {
    const std::size_t rounds = std::max<std::size_t>(4, (std::size_t{1} << 26) / (n * n));
    ns.push_back(static_cast<double>(n));
    ts.push_back(best_rft_seconds(n, rounds, 3));
  }
  const double exponent = labkit::fit_loglog_exponent(ns, ts);
  const auto timing = labkit::benchmark_transforms(654, 500, 5);
  const bool ok = exponent >= 1.6 && exponent <= 2.4 && timing.rft_seconds > timing.dft_seconds;
  return {ok, "exponent " + fmt(exponent) + "; n=654 x 500 rounds: RFT " +
                  fmt(timing.rft_seconds) + " s, DFT " + fmt(timing.dft_seconds) + " s"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: " << argv[0] << " [--only N]\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "fibonacci golden vector", fibonacci_golden},
      {2, "ramanujan sum identities", ramanujan_identities},
      {3, "inverse round trip", inverse_round_trip},
      {4, "hidden periodicity", hidden_periodicity},
      {5, "exon/intron periodicity", exon_intron_periodicity},
      {6, "mutation linearity", mutation_linearity},
      {7, "metric axioms", metric_axioms},
      {8, "simulated clade recovery", clade_recovery},
      {9, "influenza subtype grouping", influenza_grouping},
      {10, "complexity scaling", complexity_scaling},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!outcome.passed) ++failures;
    std::cout << "[" << c.id << "] " << (outcome.passed ? "PASS" : "FAIL") << "  " << c.name
              << ": " << outcome.detail << " (" << fmt(secs) << " s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
