#include "rftdist/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "rftdist/error.hpp"
#include "rftdist/kernels.hpp"
#include "rftdist/rng.hpp"

namespace rftdist::metric {

namespace {

TriangleSlack triangle(const DistanceMatrix& d, std::size_t a, std::size_t b, std::size_t c) {
  const double ab = d(a, b);
  const double ac = d(a, c);
  const double bc = d(b, c);
  if (ab >= ac && ab >= bc) return {a, b, c, ac + bc - ab};
  if (ac >= bc) return {a, c, b, ab + bc - ac};
  return {b, c, a, ab + ac - bc};
}

}  // namespace

const char* to_string(Method method) { return method == Method::rft ? "rft" : "dft"; }

Method parse_method(std::string_view text) {
  if (text == "rft") return Method::rft;
  if (text == "dft") return Method::dft;
  throw InvalidArgument("unknown method '" + std::string(text) + "' (expected rft or dft)");
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("euclidean", a.size(), b.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return std::sqrt(acc);
}

transform::PowerSpectrum rft_signature(const seq::DnaRecord& rec, std::size_t m,
                                       transform::BasisCache& cache) {
  const auto ind = seq::pad_to(seq::to_indicators(rec), m);
  const auto basis = cache.get(m);
  const auto spectra = transform::rft_spectra(ind, *basis);
  return transform::rft_power_spectrum(spectra);
}

transform::PowerSpectrum dft_signature(const seq::DnaRecord& rec, std::size_t m) {
  const auto ind = seq::pad_to(seq::to_indicators(rec), m);
  const auto spectra = transform::dft_spectra(ind);
  return transform::dft_power_spectrum(spectra);
}

transform::PowerSpectrum signature(const seq::DnaRecord& rec, std::size_t m, Method method,
                                   transform::BasisCache& cache) {
  return method == Method::rft ? rft_signature(rec, m, cache) : dft_signature(rec, m);
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> labels, std::vector<double> values,
                               Method method)
    : labels_(std::move(labels)), values_(std::move(values)), method_(method) {
  const std::size_t n = labels_.size();
  if (values_.size() != n * n) {
    throw ValidationError("distance matrix has " + std::to_string(values_.size()) +
                          " entries for " + std::to_string(n) + " labels");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (values_[i * n + i] != 0.0) {
      throw ValidationError("distance matrix diagonal entry for '" + labels_[i] + "' is not zero");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double v = values_[i * n + j];
      if (!std::isfinite(v) || v < 0.0) {
        throw ValidationError("distance between '" + labels_[i] + "' and '" + labels_[j] +
                              "' is negative or not finite");
      }
      const double w = values_[j * n + i];
      if (std::abs(v - w) > 1e-9 * std::max({1.0, std::abs(v), std::abs(w)})) {
        throw ValidationError("distance matrix is not symmetric at ('" + labels_[i] + "', '" +
                              labels_[j] + "')");
      }
    }
  }
}

DistanceMatrix pairwise_distances(std::span<const seq::DnaRecord> records, Method method,
                                  transform::BasisCache& cache) {
  if (records.size() < 2) throw InvalidArgument("pairwise distances need at least two records");
  std::size_t m = 0;
  for (const auto& rec : records) {
    if (rec.length() == 0) throw InvalidArgument("record '" + rec.id + "' is empty");
    m = std::max(m, rec.length());
  }
  const std::size_t count = records.size();
  if (method == Method::rft) cache.get(m);  // build once, before the fan-out

  std::vector<double> points(count * m);
  const auto rows = static_cast<std::int64_t>(count);
  // Exceptions must not cross the OpenMP region boundary.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < rows; ++i) {
    try {
      const auto ps = signature(records[i], m, method, cache);
      std::copy(ps.values.begin(), ps.values.end(), points.begin() + i * static_cast<std::int64_t>(m));
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<std::string> labels;
  labels.reserve(count);
  for (const auto& rec : records) labels.push_back(rec.id);
  return DistanceMatrix(std::move(labels), kernels::pairwise_euclidean(points, count, m), method);
}

DistanceMatrix pairwise_distances(std::span<const seq::DnaRecord> records, Method method) {
  return pairwise_distances(records, method, transform::default_basis_cache());
}

double pair_distance(const seq::DnaRecord& a, const seq::DnaRecord& b, Method method,
                     transform::BasisCache& cache) {
  if (a.length() == 0 || b.length() == 0) throw InvalidArgument("pair_distance on an empty record");
  const std::size_t m = std::max(a.length(), b.length());
  return euclidean(signature(a, m, method, cache).values, signature(b, m, method, cache).values);
}

std::vector<TriangleSlack> audit_triangle(const DistanceMatrix& matrix) {
  const std::size_t n = matrix.size();
  std::vector<TriangleSlack> out;
  if (n < 3) return out;
  out.reserve(n * (n - 1) * (n - 2) / 6);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) out.push_back(triangle(matrix, a, b, c));
    }
  }
  return out;
}

std::vector<TriangleSlack> audit_triangle_sampled(const DistanceMatrix& matrix, std::size_t count,
                                                  std::uint64_t seed) {
  const std::size_t n = matrix.size();
  std::vector<TriangleSlack> out;
  if (n < 3) return out;
  out.reserve(count);
  Rng rng(seed);
  while (out.size() < count) {
    const auto a = static_cast<std::size_t>(rng.uniform_below(n));
    const auto b = static_cast<std::size_t>(rng.uniform_below(n));
    const auto c = static_cast<std::size_t>(rng.uniform_below(n));
    if (a == b || a == c || b == c) continue;
    out.push_back(triangle(matrix, a, b, c));
  }
  return out;
}

}  // namespace rftdist::metric
