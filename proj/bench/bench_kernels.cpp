// Serial reference kernels against their OpenMP counterparts, plus the
// FFT-backed DFT against direct summation.

#include <benchmark/benchmark.h>

#include <vector>

#include "rftdist/kernels.hpp"
#include "rftdist/labkit.hpp"
#include "rftdist/metric.hpp"
#include "rftdist/rng.hpp"
#include "rftdist/transform.hpp"

namespace {

using namespace rftdist;

std::vector<double> binary_signal(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = static_cast<double>(rng.uniform_below(2));
  return x;
}

const transform::RftBasis& basis(std::size_t n) {
  return *transform::default_basis_cache().get(n);
}

void BM_RftMatvecSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto& b = basis(n);
  const auto x = binary_signal(n, 1);
  std::vector<double> y(n);
  for (auto _ : state) {
    kernels::matvec_serial(b.matrix(), n, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_RftMatvecParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto& b = basis(n);
  const auto x = binary_signal(n, 1);
  std::vector<double> y(n);
  for (auto _ : state) {
    kernels::matvec(b.matrix(), n, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetComplexityN(state.range(0));
}

// All four indicator signals in one pass over the basis.
void BM_RftFourSignalsSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto& b = basis(n);
  const auto x = binary_signal(4 * n, 2);
  std::vector<double> y(4 * n);
  for (auto _ : state) {
    kernels::matvec_multi_serial(b.matrix(), n, x, 4, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_RftFourSignalsParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto& b = basis(n);
  const auto x = binary_signal(4 * n, 2);
  std::vector<double> y(4 * n);
  for (auto _ : state) {
    kernels::matvec_multi(b.matrix(), n, x, 4, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_PairwiseSerial(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const std::size_t dim = 654;
  const auto pts = binary_signal(m * dim, 3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::pairwise_euclidean_serial(pts, m, dim));
}

void BM_PairwiseParallel(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const std::size_t dim = 654;
  const auto pts = binary_signal(m * dim, 3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::pairwise_euclidean(pts, m, dim));
}

void BM_DftFftw(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = binary_signal(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(transform::dft_forward(x));
  state.SetComplexityN(state.range(0));
}

void BM_DftDirect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = binary_signal(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::dft_direct_serial(x));
  state.SetComplexityN(state.range(0));
}

void BM_DistanceMatrix(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  std::vector<seq::DnaRecord> recs;
  for (std::size_t i = 0; i < count; ++i) {
    recs.push_back(labkit::coding_like_sequence("s" + std::to_string(i), 300 + i, i));
  }
  transform::BasisCache cache;
  for (auto _ : state) {
    benchmark::DoNotOptimize(metric::pairwise_distances(recs, metric::Method::rft, cache));
  }
}

}  // namespace

BENCHMARK(BM_RftMatvecSerial)->RangeMultiplier(2)->Range(256, 2048)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_RftMatvecParallel)->RangeMultiplier(2)->Range(256, 2048)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_RftFourSignalsSerial)->Arg(654)->Arg(2048);
BENCHMARK(BM_RftFourSignalsParallel)->Arg(654)->Arg(2048);
BENCHMARK(BM_PairwiseSerial)->Arg(64)->Arg(256);
BENCHMARK(BM_PairwiseParallel)->Arg(64)->Arg(256);
BENCHMARK(BM_DftFftw)->RangeMultiplier(2)->Range(256, 2048)->Complexity(benchmark::oNLogN);
BENCHMARK(BM_DftDirect)->RangeMultiplier(2)->Range(256, 2048)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_DistanceMatrix)->Arg(31)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
