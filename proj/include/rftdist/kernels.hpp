#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Dense inner loops. Each parallel kernel has a serial twin with the same
// contract; the serial versions are the reference the tests compare against
// and what the single-worker timing harness runs.
namespace rftdist::kernels {

int max_threads();

// y = A x for a row-major n x n matrix.
void matvec(std::span<const double> a, std::size_t n, std::span<const double> x,
            std::span<double> y);
void matvec_serial(std::span<const double> a, std::size_t n, std::span<const double> x,
                   std::span<double> y);

// Y = A X for `count` signals stored back to back in `x` (count * n values).
// One pass over A serves all signals.
void matvec_multi(std::span<const double> a, std::size_t n, std::span<const double> x,
                  std::size_t count, std::span<double> y);
void matvec_multi_serial(std::span<const double> a, std::size_t n, std::span<const double> x,
                         std::size_t count, std::span<double> y);

// Row-major m x m matrix of Euclidean distances between m row vectors of
// length `dim` (rows stored back to back in `points`).
std::vector<double> pairwise_euclidean(std::span<const double> points, std::size_t m,
                                       std::size_t dim);
std::vector<double> pairwise_euclidean_serial(std::span<const double> points, std::size_t m,
                                              std::size_t dim);

// U(k) = sum_{t=1..N} x(t) exp(-2 pi i k t / N), k = 0..N-1, by direct
// O(N^2) summation. Used as the DFT oracle.
std::vector<std::complex<double>> dft_direct_serial(std::span<const double> x);

}  // namespace rftdist::kernels
