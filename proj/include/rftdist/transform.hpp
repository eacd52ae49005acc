#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "rftdist/numtheory.hpp"
#include "rftdist/seqmodel.hpp"

namespace rftdist::transform {

enum class SpectrumKind { rft, dft };

const char* to_string(SpectrumKind kind);

// Coefficients of one signal. RFT coefficients are real (index q = 1..N);
// DFT coefficients are complex (index k = 0..N-1).
class Spectrum {
 public:
  static Spectrum rft(std::vector<double> coefficients);
  static Spectrum dft(std::vector<std::complex<double>> coefficients);

  SpectrumKind kind() const noexcept { return kind_; }
  std::size_t source_length() const noexcept;

  // Throw InvalidArgument when called on the other kind.
  std::span<const double> real() const;
  std::span<const std::complex<double>> complex() const;

  // |coefficient| at storage position i.
  double magnitude(std::size_t i) const;

 private:
  SpectrumKind kind_ = SpectrumKind::rft;
  std::vector<double> real_;
  std::vector<std::complex<double>> complex_;
};

struct PowerSpectrum {
  SpectrumKind kind = SpectrumKind::rft;
  std::vector<double> values;
  // Storage always keeps the first term; plotting layers may drop it.
  bool includes_first_term = true;

  std::size_t size() const noexcept { return values.size(); }
  // Native index of storage position 0: q starts at 1, k at 0.
  std::size_t first_index() const noexcept { return kind == SpectrumKind::rft ? 1 : 0; }
};

inline constexpr std::size_t kDefaultMaxDimension = 16384;

// N x N matrix R(q, j) = c_q(((j-1) mod q) + 1) / (phi(q) N), row-major.
// The inverse is built on first use and then shared.
class RftBasis {
 public:
  RftBasis(std::size_t n, const numtheory::RamanujanTable& table,
           std::size_t max_dimension = kDefaultMaxDimension);

  RftBasis(const RftBasis&) = delete;
  RftBasis& operator=(const RftBasis&) = delete;

  std::size_t n() const noexcept { return n_; }
  std::span<const double> matrix() const noexcept { return matrix_; }
  // 1-based entry R(q, j).
  double at(std::size_t q, std::size_t j) const { return matrix_[(q - 1) * n_ + (j - 1)]; }

  // Row-major R^{-1}. Throws SingularMatrixError when the LU solve fails or
  // the residual max|R R^{-1} - I| reaches 1e-8.
  std::span<const double> inverse() const;
  double inverse_residual() const;

 private:
  void build_inverse() const;

  std::size_t n_;
  std::vector<double> matrix_;
  mutable std::once_flag inverse_once_;
  mutable std::vector<double> inverse_;
  mutable double inverse_residual_ = 0.0;
};

std::shared_ptr<const RftBasis> build_basis(std::size_t n, const numtheory::RamanujanTable& table,
                                            std::size_t max_dimension = kDefaultMaxDimension);

// Shares one RftBasis per length. Concurrent requests for the same length
// wait on a single build.
class BasisCache {
 public:
  explicit BasisCache(std::size_t max_dimension = kDefaultMaxDimension);

  std::shared_ptr<const RftBasis> get(std::size_t n);
  std::size_t max_dimension() const noexcept { return max_dimension_; }
  // Number of bases built so far (successful or not).
  std::size_t builds() const;

 private:
  std::shared_ptr<const numtheory::RamanujanTable> table_for(std::size_t n);

  std::size_t max_dimension_;
  mutable std::mutex mutex_;
  std::map<std::size_t, std::shared_future<std::shared_ptr<const RftBasis>>> entries_;
  std::size_t builds_ = 0;
  std::mutex table_mutex_;
  std::shared_ptr<const numtheory::RamanujanTable> table_;
};

// Process-wide cache used when callers do not supply one.
BasisCache& default_basis_cache();

Spectrum rft_forward(std::span<const double> x, const RftBasis& basis);
std::vector<double> rft_inverse(const Spectrum& y, const RftBasis& basis);

// R_A, R_T, R_C, R_G. The indicator set must already be padded to basis.n().
std::array<Spectrum, 4> rft_spectra(const seq::IndicatorSet& ind, const RftBasis& basis);

// PS(q) = sum over nucleotides of |R_a(q)|.
PowerSpectrum rft_power_spectrum(std::span<const Spectrum> spectra);

// U(k) = sum_{t=1..N} x(t) exp(-2 pi i k t / N), k = 0..N-1.
Spectrum dft_forward(std::span<const double> x);
std::array<Spectrum, 4> dft_spectra(const seq::IndicatorSet& ind);

// PS(k) = sum over nucleotides of |U_a(k)|^2.
PowerSpectrum dft_power_spectrum(std::span<const Spectrum> spectra);

// Native indices (q for RFT, k for DFT) of the `top` largest values, largest
// first, ties to the smaller index. RFT searches q in [1, N], or [2, N] with
// skip_first. DFT always searches k in [1, floor(N/2)].
std::vector<std::size_t> peak_indices(const PowerSpectrum& ps, std::size_t top, bool skip_first);

}  // namespace rftdist::transform
