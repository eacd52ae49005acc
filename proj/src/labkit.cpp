#include "rftdist/labkit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rftdist/error.hpp"
#include "rftdist/kernels.hpp"
#include "rftdist/phylo.hpp"
#include "rftdist/rng.hpp"

namespace rftdist::labkit {

namespace {

constexpr char kBases[] = {'A', 'T', 'C', 'G'};

// Per codon position composition over A, T, C, G (cumulative).
constexpr double kCodonComposition[3][4] = {
    {0.35, 0.40, 0.50, 1.00},
    {0.25, 0.70, 0.90, 1.00},
    {0.10, 0.25, 0.70, 1.00},
};

// AT-rich background for intron-like sequence.
constexpr double kIntronComposition[4] = {0.30, 0.60, 0.80, 1.00};
constexpr std::size_t kRepeatTract = 80;

int draw_base(Rng& rng, const double (&cumulative)[4]) {
  const double u = rng.uniform01();
  int b = 0;
  while (b < 3 && u >= cumulative[b]) ++b;
  return b;
}

int base_index(char c) {
  switch (c) {
    case 'A': return 0;
    case 'T': return 1;
    case 'C': return 2;
    case 'G': return 3;
    default: return -1;
  }
}

double elapsed_seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

const char* to_string(MutationKind kind) {
  return kind == MutationKind::point ? "point" : "deletion";
}

MutationKind parse_mutation_kind(std::string_view text) {
  if (text == "point") return MutationKind::point;
  if (text == "deletion") return MutationKind::deletion;
  throw InvalidArgument("unknown mutation kind '" + std::string(text) + "'");
}

std::vector<double> synth_periodic(std::size_t n, std::uint64_t seed, double noise_sigma) {
  if (n < 20) throw InvalidArgument("synthetic signal needs n >= 20");
  if (noise_sigma < 0.0) throw InvalidArgument("noise sigma must be non-negative");
  Rng rng(seed);
  std::vector<double> out(n);
  constexpr double pi = std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    const auto t = static_cast<double>(i + 1);
    out[i] = std::sin(2.0 * pi * t / 10.0 + pi / 4.0) + std::cos(2.0 * pi * t / 20.0 + pi / 4.0);
    if (noise_sigma > 0.0) out[i] += noise_sigma * rng.normal();
  }
  return out;
}

seq::DnaRecord random_sequence(std::string id, std::size_t length, std::uint64_t seed) {
  Rng rng(seed);
  seq::DnaRecord rec{std::move(id), "synthetic uniform", std::string(length, 'A')};
  for (auto& c : rec.bases) c = kBases[rng.uniform_below(4)];
  return rec;
}

seq::DnaRecord coding_like_sequence(std::string id, std::size_t length, std::uint64_t seed) {
  Rng rng(seed);
  seq::DnaRecord rec{std::move(id), "synthetic coding-like", std::string(length, 'A')};
  for (std::size_t i = 0; i < length; ++i) {
    rec.bases[i] = kBases[draw_base(rng, kCodonComposition[i % 3])];
  }
  return rec;
}

seq::DnaRecord intron_like_sequence(std::string id, std::size_t length, std::uint64_t seed) {
  Rng rng(seed);
  seq::DnaRecord rec{std::move(id), "synthetic intron-like", std::string(length, 'A')};
  for (auto& c : rec.bases) c = kBases[draw_base(rng, kIntronComposition)];
  const std::size_t tract = std::min(kRepeatTract, length - length % 2);
  const std::size_t start = 2 * rng.uniform_below((length - tract) / 2 + 1);
  for (std::size_t i = 0; i < tract; ++i) rec.bases[start + i] = i % 2 == 0 ? 'C' : 'A';
  return rec;
}

Mutant mutate_point(const seq::DnaRecord& rec, std::size_t count, std::uint64_t seed) {
  const std::size_t n = rec.length();
  if (count > n) {
    throw InvalidArgument("cannot place " + std::to_string(count) + " point mutations in " +
                          std::to_string(n) + " bases");
  }
  Rng rng(seed);
  // Partial Fisher-Yates, each position followed by its substitution draw, so
  // the first k mutations do not depend on count.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Mutant out{rec, MutationPlan{seed, MutationKind::point, count, {}}};
  out.plan.positions.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.uniform_below(n - i));
    std::swap(order[i], order[j]);
    const std::size_t pos = order[i];
    const int current = base_index(out.record.bases[pos]);
    if (current < 0) {
      out.record.bases[pos] = kBases[rng.uniform_below(4)];
    } else {
      const auto shift = 1 + static_cast<int>(rng.uniform_below(3));
      out.record.bases[pos] = kBases[(current + shift) % 4];
    }
    out.plan.positions.push_back(pos);
  }
  std::sort(out.plan.positions.begin(), out.plan.positions.end());
  return out;
}

Mutant mutate_delete(const seq::DnaRecord& rec, std::size_t del_len, std::uint64_t seed) {
  const std::size_t n = rec.length();
  if (del_len == 0 || del_len >= n) {
    throw InvalidArgument("deletion length must be in [1, " + std::to_string(n) + "), got " +
                          std::to_string(del_len));
  }
  Mutant out{rec, MutationPlan{seed, MutationKind::deletion, del_len, {}}};
  out.record.bases.resize(n - del_len);
  for (std::size_t p = n - del_len; p < n; ++p) out.plan.positions.push_back(p);
  return out;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("pearson", x.size(), y.size());
  if (x.size() < 2) throw InvalidArgument("pearson needs at least two points");
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<std::size_t> default_point_steps() {
  std::vector<std::size_t> out;
  for (std::size_t s = 1; s <= 100; s += 5) out.push_back(s);
  return out;
}

std::vector<std::size_t> default_deletion_steps() {
  std::vector<std::size_t> out(100);
  std::iota(out.begin(), out.end(), std::size_t{1});
  return out;
}

ExperimentReport run_mutation_series(const seq::DnaRecord& rec, MutationKind kind,
                                     std::span<const std::size_t> steps, std::uint64_t seed,
                                     transform::BasisCache& cache) {
  if (steps.empty()) throw InvalidArgument("mutation series needs at least one step");
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (steps[i] <= steps[i - 1]) throw InvalidArgument("mutation steps must be increasing");
  }
  const std::size_t count = steps.size();
  std::vector<double> distances(count, 0.0);
  std::vector<MutationPlan> plans(count);
  cache.get(rec.length());

  // One seed for every step: point mutants then form a single accumulating
  // trajectory.
  const std::uint64_t step_seed = derive_seed(seed, 0);
  std::exception_ptr failure;
  const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < total; ++i) {
    try {
      const std::size_t amount = steps[i];
      Mutant m;
      if (amount == 0) {
        m = Mutant{rec, MutationPlan{step_seed, kind, 0, {}}};
      } else if (kind == MutationKind::point) {
        m = mutate_point(rec, amount, step_seed);
      } else {
        m = mutate_delete(rec, amount, step_seed);
      }
      distances[i] = metric::pair_distance(rec, m.record, metric::Method::rft, cache);
      plans[i] = std::move(m.plan);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentReport report;
  report.experiment = kind == MutationKind::point ? "point" : "deletion";
  report.x_label = kind == MutationKind::point ? "mutations" : "deletion_length";
  report.y_label = "rft_distance";
  report.x.assign(steps.begin(), steps.end());
  report.y = std::move(distances);
  report.pearson_r = count >= 2 ? pearson(report.x, report.y) : std::nullopt;
  report.predicate = "pearson_r > 0.9";
  report.predicate_passed = report.pearson_r.has_value() && *report.pearson_r > 0.9;

  auto& meta = report.metadata;
  meta["seed"] = seed;
  meta["method"] = "rft";
  meta["mutation_kind"] = to_string(kind);
  meta["base_id"] = rec.id;
  meta["base_length"] = rec.length();
  meta["pearson_defined"] = report.pearson_r.has_value();
  auto& plan_json = meta["plans"] = nlohmann::json::array();
  for (const auto& p : plans) {
    plan_json.push_back({{"amount", p.amount}, {"seed", p.seed}, {"positions", p.positions}});
  }
  return report;
}

std::vector<seq::DnaRecord> simulate_clades(const seq::DnaRecord& base, double rate,
                                            std::uint64_t seed) {
  if (!(rate > 0.0 && rate < 1.0)) throw InvalidArgument("mutation rate must be in (0, 1)");
  const auto count = static_cast<std::size_t>(std::floor(rate * static_cast<double>(base.length())));
  auto evolve = [&](const seq::DnaRecord& parent, const char* id, std::uint64_t stream) {
    auto rec = mutate_point(parent, count, derive_seed(seed, stream)).record;
    rec.id = id;
    rec.description = "simulated from " + parent.id;
    return rec;
  };
  const auto a = evolve(base, "A", 1);
  const auto b = evolve(base, "B", 2);
  return {a, evolve(a, "A1", 3), evolve(a, "A2", 4), b, evolve(b, "B1", 5), evolve(b, "B2", 6)};
}

ExperimentReport run_synth(std::size_t n, std::uint64_t seed, double noise_sigma,
                           transform::BasisCache& cache) {
  const auto signal = synth_periodic(n, seed, noise_sigma);
  const auto basis = cache.get(n);
  const auto rft = transform::rft_forward(signal, *basis);
  const auto dft = transform::dft_forward(signal);

  transform::PowerSpectrum rft_ps{transform::SpectrumKind::rft, std::vector<double>(n), true};
  transform::PowerSpectrum dft_ps{transform::SpectrumKind::dft, std::vector<double>(n), true};
  for (std::size_t i = 0; i < n; ++i) {
    rft_ps.values[i] = rft.magnitude(i);
    dft_ps.values[i] = std::norm(dft.complex()[i]);
  }
  auto rft_peaks = transform::peak_indices(rft_ps, 2, true);
  auto dft_peaks = transform::peak_indices(dft_ps, 2, true);
  std::sort(rft_peaks.begin(), rft_peaks.end());
  std::sort(dft_peaks.begin(), dft_peaks.end());

  ExperimentReport report;
  report.experiment = "synth";
  report.x_label = "q";
  report.y_label = "rft_abs";
  for (std::size_t i = 0; i < n; ++i) {
    report.x.push_back(static_cast<double>(i + 1));
    report.y.push_back(rft_ps.values[i]);
  }
  const std::vector<std::size_t> want_rft{10, 20};
  const std::vector<std::size_t> want_dft{n / 20, n / 10};
  report.predicate = "top-2 RFT peaks {10,20} and DFT peaks {N/20,N/10}";
  report.predicate_passed = rft_peaks == want_rft && dft_peaks == want_dft;
  auto& meta = report.metadata;
  meta["seed"] = seed;
  meta["n"] = n;
  meta["noise_sigma"] = noise_sigma;
  meta["rft_peaks"] = rft_peaks;
  meta["dft_peaks"] = dft_peaks;
  meta["dft_power"] = dft_ps.values;
  return report;
}

ExperimentReport run_triangle(std::size_t count, std::size_t min_length, std::size_t max_length,
                              std::uint64_t seed, transform::BasisCache& cache) {
  if (count < 3) throw InvalidArgument("triangle audit needs at least three sequences");
  if (min_length == 0 || min_length > max_length) throw InvalidArgument("bad length range");
  Rng lengths(derive_seed(seed, 0));
  std::vector<seq::DnaRecord> records;
  records.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto len = min_length + static_cast<std::size_t>(lengths.uniform_below(max_length - min_length + 1));
    records.push_back(coding_like_sequence("exon" + std::to_string(i + 1), len, derive_seed(seed, i + 1)));
  }
  const auto matrix = metric::pairwise_distances(records, metric::Method::rft, cache);
  const auto all = metric::audit_triangle(matrix);
  double min_slack = std::numeric_limits<double>::infinity();
  for (const auto& t : all) min_slack = std::min(min_slack, t.slack);

  // The per-triple series is a seeded sample so the CSV stays small.
  const auto sample = metric::audit_triangle_sampled(matrix, std::min<std::size_t>(all.size(), 10000),
                                                     derive_seed(seed, count + 1));
  ExperimentReport report;
  report.experiment = "triangle";
  report.x_label = "triple";
  report.y_label = "slack";
  for (std::size_t i = 0; i < sample.size(); ++i) {
    report.x.push_back(static_cast<double>(i));
    report.y.push_back(sample[i].slack);
  }
  report.predicate = "every triple has (d1 + d2) - d3 >= -1e-9";
  report.predicate_passed = min_slack >= -1e-9;
  auto& meta = report.metadata;
  meta["seed"] = seed;
  meta["sequences"] = count;
  meta["length_range"] = {min_length, max_length};
  meta["triples"] = all.size();
  meta["min_slack"] = min_slack;
  return report;
}

ExperimentReport run_clades(const seq::DnaRecord& base, double rate, std::uint64_t seed,
                            transform::BasisCache& cache) {
  const auto records = simulate_clades(base, rate, seed);
  const auto matrix = metric::pairwise_distances(records, metric::Method::rft, cache);
  const auto tree = phylo::upgma(matrix);
  const bool a_clade = tree.has_clade({"A", "A1", "A2"});
  const bool b_clade = tree.has_clade({"B", "B1", "B2"});

  ExperimentReport report;
  report.experiment = "clades";
  report.x_label = "pair";
  report.y_label = "rft_distance";
  std::vector<std::string> pair_labels;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = i + 1; j < matrix.size(); ++j) {
      report.x.push_back(static_cast<double>(pair_labels.size()));
      report.y.push_back(matrix(i, j));
      pair_labels.push_back(matrix.labels()[i] + "-" + matrix.labels()[j]);
    }
  }
  report.predicate = "{A,A1,A2} and {B,B1,B2} are clades";
  report.predicate_passed = a_clade && b_clade;
  auto& meta = report.metadata;
  meta["seed"] = seed;
  meta["rate"] = rate;
  meta["base_id"] = base.id;
  meta["base_length"] = base.length();
  meta["pairs"] = pair_labels;
  meta["newick"] = phylo::to_newick(tree);
  return report;
}

TimingReport benchmark_transforms(std::size_t n, std::size_t rounds, std::uint64_t seed) {
  if (n < 16) throw InvalidArgument("benchmark length must be >= 16");
  if (rounds == 0) throw InvalidArgument("benchmark needs at least one round");
  Rng rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = static_cast<double>(rng.uniform_below(2));

  TimingReport report{n, rounds};
  auto start = std::chrono::steady_clock::now();
  const auto table = numtheory::RamanujanTable::build(static_cast<std::int64_t>(n));
  const transform::RftBasis basis(n, table, std::max(n, transform::kDefaultMaxDimension));
  report.build_seconds = elapsed_seconds(start);

  std::vector<double> y(n);
  volatile double sink = 0.0;
  start = std::chrono::steady_clock::now();
  for (std::size_t r = 0; r < rounds; ++r) {
    kernels::matvec_serial(basis.matrix(), n, x, y);
    sink = sink + y[r % n];
  }
  report.rft_seconds = elapsed_seconds(start);

  transform::dft_forward(x);  // plan outside the timed region
  start = std::chrono::steady_clock::now();
  for (std::size_t r = 0; r < rounds; ++r) {
    const auto u = transform::dft_forward(x);
    sink = sink + u.complex()[r % n].real();
  }
  report.dft_seconds = elapsed_seconds(start);
  return report;
}

double fit_loglog_exponent(std::span<const double> n, std::span<const double> t) {
  if (n.size() != t.size()) throw DimensionError("fit_loglog_exponent", n.size(), t.size());
  if (n.size() < 2) throw InvalidArgument("exponent fit needs at least two points");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(n[i] > 0.0) || !(t[i] > 0.0)) throw InvalidArgument("exponent fit needs positive values");
    lx.push_back(std::log(n[i]));
    ly.push_back(std::log(t[i]));
  }
  const auto m = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / m;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / m;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) throw InvalidArgument("exponent fit needs at least two distinct lengths");
  return sxy / sxx;
}

}  // namespace rftdist::labkit
