#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rftdist/seqmodel.hpp"
#include "rftdist/transform.hpp"

namespace rftdist::metric {

enum class Method { rft, dft };

const char* to_string(Method method);
// Throws InvalidArgument for anything but "rft" or "dft".
Method parse_method(std::string_view text);

// L2 distance. Throws DimensionError on unequal lengths.
double euclidean(std::span<const double> a, std::span<const double> b);

// indicators -> pad to m -> four RFT spectra -> summed |R_a(q)|. q = 1 is kept.
transform::PowerSpectrum rft_signature(const seq::DnaRecord& rec, std::size_t m,
                                       transform::BasisCache& cache);
// Same pipeline with the DFT power spectrum.
transform::PowerSpectrum dft_signature(const seq::DnaRecord& rec, std::size_t m);

transform::PowerSpectrum signature(const seq::DnaRecord& rec, std::size_t m, Method method,
                                   transform::BasisCache& cache);

// Symmetric, zero-diagonal, non-negative matrix over labelled sequences.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  // Throws ValidationError unless values is a valid n x n distance matrix
  // (symmetric to 1e-9 relative, zero diagonal, finite, non-negative).
  DistanceMatrix(std::vector<std::string> labels, std::vector<double> values, Method method);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::span<const double> values() const noexcept { return values_; }
  Method method() const noexcept { return method_; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * labels_.size() + j]; }

 private:
  std::vector<std::string> labels_;
  std::vector<double> values_;
  Method method_ = Method::rft;
};

// All signatures live in one M-dimensional space, M = longest record. Each
// signature is computed once; pairs are then distanced in parallel.
// Throws InvalidArgument for fewer than two records or an empty record.
DistanceMatrix pairwise_distances(std::span<const seq::DnaRecord> records, Method method,
                                  transform::BasisCache& cache);
DistanceMatrix pairwise_distances(std::span<const seq::DnaRecord> records, Method method);

// Distance between two records padded to the longer of the two.
double pair_distance(const seq::DnaRecord& a, const seq::DnaRecord& b, Method method,
                     transform::BasisCache& cache);

struct TriangleSlack {
  // d(i, j) is the largest side; k is the third vertex.
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  // d(i, k) + d(k, j) - d(i, j); a metric keeps this >= 0.
  double slack = 0.0;
};

// Every unordered triple.
std::vector<TriangleSlack> audit_triangle(const DistanceMatrix& matrix);
// `count` triples of distinct indices drawn uniformly with a seeded generator.
std::vector<TriangleSlack> audit_triangle_sampled(const DistanceMatrix& matrix, std::size_t count,
                                                  std::uint64_t seed);

}  // namespace rftdist::metric
