#include "rftdist/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rftdist/error.hpp"

namespace rftdist::kernels {

namespace {

void check_matvec(std::span<const double> a, std::size_t n, std::size_t x_len,
                  std::size_t y_len) {
  if (a.size() != n * n) throw DimensionError("matrix", n * n, a.size());
  if (x_len != n) throw DimensionError("matvec input", n, x_len);
  if (y_len != n) throw DimensionError("matvec output", n, y_len);
}

inline double row_dot(const double* row, const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
  return acc;
}

inline double squared_gap(const double* p, const double* q, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double d = p[k] - q[k];
    acc += d * d;
  }
  return acc;
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void matvec(std::span<const double> a, std::size_t n, std::span<const double> x,
            std::span<double> y) {
  check_matvec(a, n, x.size(), y.size());
  const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < rows; ++i) {
    y[i] = row_dot(a.data() + i * rows, x.data(), n);
  }
}

void matvec_serial(std::span<const double> a, std::size_t n, std::span<const double> x,
                   std::span<double> y) {
  check_matvec(a, n, x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) y[i] = row_dot(a.data() + i * n, x.data(), n);
}

void matvec_multi(std::span<const double> a, std::size_t n, std::span<const double> x,
                  std::size_t count, std::span<double> y) {
  if (a.size() != n * n) throw DimensionError("matrix", n * n, a.size());
  if (x.size() != n * count) throw DimensionError("matvec input", n * count, x.size());
  if (y.size() != n * count) throw DimensionError("matvec output", n * count, y.size());
  const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < rows; ++i) {
    const double* row = a.data() + i * rows;
    for (std::size_t s = 0; s < count; ++s) {
      y[s * n + i] = row_dot(row, x.data() + s * n, n);
    }
  }
}

void matvec_multi_serial(std::span<const double> a, std::size_t n, std::span<const double> x,
                         std::size_t count, std::span<double> y) {
  if (x.size() != n * count) throw DimensionError("matvec input", n * count, x.size());
  if (y.size() != n * count) throw DimensionError("matvec output", n * count, y.size());
  for (std::size_t s = 0; s < count; ++s) {
    matvec_serial(a, n, x.subspan(s * n, n), y.subspan(s * n, n));
  }
}

std::vector<double> pairwise_euclidean(std::span<const double> points, std::size_t m,
                                       std::size_t dim) {
  if (points.size() != m * dim) throw DimensionError("point set", m * dim, points.size());
  std::vector<double> out(m * m, 0.0);
  // Row i owns cells (i, j) and (j, i) for j > i, so no cell has two writers.
  const auto rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < m; ++j) {
      const double d =
          std::sqrt(squared_gap(points.data() + i * dim, points.data() + j * dim, dim));
      out[i * m + j] = d;
      out[j * m + i] = d;
    }
  }
  return out;
}

std::vector<double> pairwise_euclidean_serial(std::span<const double> points, std::size_t m,
                                              std::size_t dim) {
  if (points.size() != m * dim) throw DimensionError("point set", m * dim, points.size());
  std::vector<double> out(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double d =
          std::sqrt(squared_gap(points.data() + i * dim, points.data() + j * dim, dim));
      out[i * m + j] = d;
      out[j * m + i] = d;
    }
  }
  return out;
}

std::vector<std::complex<double>> dft_direct_serial(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t t = 1; t <= n; ++t) {
      const auto phase = static_cast<double>((k * t) % n) / static_cast<double>(n);
      acc += x[t - 1] * std::polar(1.0, -2.0 * std::numbers::pi * phase);
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace rftdist::kernels
