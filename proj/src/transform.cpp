#include "rftdist/transform.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "rftdist/error.hpp"
#include "rftdist/kernels.hpp"

namespace rftdist::transform {

namespace {

constexpr double kInverseResidualLimit = 1e-8;

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// FFTW planning is not thread-safe; execution with the new-array interface is.
class DftPlan {
 public:
  explicit DftPlan(std::size_t n) : n_(n) {
    auto* in = fftw_alloc_real(n);
    auto* out = fftw_alloc_complex(n / 2 + 1);
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan_ == nullptr) throw Error("FFTW could not plan a length-" + std::to_string(n) + " DFT");
  }
  ~DftPlan() { fftw_destroy_plan(plan_); }
  DftPlan(const DftPlan&) = delete;
  DftPlan& operator=(const DftPlan&) = delete;

  // Zero-based DFT of a real signal, first N/2+1 bins.
  void execute(const double* in, std::complex<double>* out) const {
    // FFTW takes a non-const input pointer but does not modify it for r2c
    // out-of-place transforms.
    fftw_execute_dft_r2c(plan_, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
  }

 private:
  std::size_t n_;
  fftw_plan plan_ = nullptr;
};

const DftPlan& plan_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<DftPlan>> plans;
  std::lock_guard lock(mutex);
  auto& slot = plans[n];
  if (!slot) slot = std::make_unique<DftPlan>(n);
  return *slot;
}

void require_four(std::span<const Spectrum> spectra, SpectrumKind kind) {
  if (spectra.size() != 4) {
    throw InvalidArgument("power spectrum needs four spectra, got " +
                          std::to_string(spectra.size()));
  }
  const std::size_t n = spectra[0].source_length();
  for (const auto& s : spectra) {
    if (s.kind() != kind) {
      throw InvalidArgument(std::string("mixed-kind input: expected ") + to_string(kind) +
                            " spectra, got " + to_string(s.kind()));
    }
    if (s.source_length() != n) throw DimensionError("spectrum", n, s.source_length());
  }
}

}  // namespace

const char* to_string(SpectrumKind kind) { return kind == SpectrumKind::rft ? "rft" : "dft"; }

Spectrum Spectrum::rft(std::vector<double> coefficients) {
  Spectrum s;
  s.kind_ = SpectrumKind::rft;
  s.real_ = std::move(coefficients);
  return s;
}

Spectrum Spectrum::dft(std::vector<std::complex<double>> coefficients) {
  Spectrum s;
  s.kind_ = SpectrumKind::dft;
  s.complex_ = std::move(coefficients);
  return s;
}

std::size_t Spectrum::source_length() const noexcept {
  return kind_ == SpectrumKind::rft ? real_.size() : complex_.size();
}

std::span<const double> Spectrum::real() const {
  if (kind_ != SpectrumKind::rft) throw InvalidArgument("real() on a DFT spectrum");
  return real_;
}

std::span<const std::complex<double>> Spectrum::complex() const {
  if (kind_ != SpectrumKind::dft) throw InvalidArgument("complex() on an RFT spectrum");
  return complex_;
}

double Spectrum::magnitude(std::size_t i) const {
  return kind_ == SpectrumKind::rft ? std::abs(real_.at(i)) : std::abs(complex_.at(i));
}

RftBasis::RftBasis(std::size_t n, const numtheory::RamanujanTable& table,
                   std::size_t max_dimension)
    : n_(n) {
  if (n == 0) throw InvalidArgument("basis length must be >= 1");
  if (n > max_dimension) {
    throw ResourceError("RFT basis of size " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(max_dimension) +
                        " (dense O(N^2) transform; raise --max-n to override)");
  }
  if (static_cast<std::size_t>(table.max_q()) < n) {
    throw InvalidArgument("Ramanujan table covers q <= " + std::to_string(table.max_q()) +
                          ", basis needs " + std::to_string(n));
  }
  matrix_.resize(n * n);
  const auto scale_n = static_cast<double>(n);
  for (std::size_t q = 1; q <= n; ++q) {
    const auto row = table.row(static_cast<std::int64_t>(q));
    const double scale = 1.0 / (static_cast<double>(table.totient(static_cast<std::int64_t>(q))) * scale_n);
    double* out = matrix_.data() + (q - 1) * n;
    for (std::size_t j = 0; j < n; ++j) out[j] = static_cast<double>(row[j % q]) * scale;
  }
}

void RftBasis::build_inverse() const {
  const Eigen::Map<const RowMatrix> r(matrix_.data(), static_cast<Eigen::Index>(n_),
                                      static_cast<Eigen::Index>(n_));
  const Eigen::PartialPivLU<RowMatrix> lu(r);
  const double rcond = lu.rcond();
  if (!(rcond > 0.0) || !std::isfinite(rcond)) {
    throw SingularMatrixError("RFT basis of size " + std::to_string(n_) + " is singular", rcond);
  }
  RowMatrix inv = lu.inverse();
  const RowMatrix residual = r * inv - RowMatrix::Identity(r.rows(), r.cols());
  const double worst = residual.cwiseAbs().maxCoeff();
  if (!(worst < kInverseResidualLimit)) {
    throw SingularMatrixError("RFT basis of size " + std::to_string(n_) +
                                  " is ill-conditioned: max|R R^-1 - I| = " + std::to_string(worst),
                              rcond);
  }
  inverse_.assign(inv.data(), inv.data() + inv.size());
  inverse_residual_ = worst;
}

std::span<const double> RftBasis::inverse() const {
  std::call_once(inverse_once_, [this] { build_inverse(); });
  return inverse_;
}

double RftBasis::inverse_residual() const {
  inverse();
  return inverse_residual_;
}

std::shared_ptr<const RftBasis> build_basis(std::size_t n, const numtheory::RamanujanTable& table,
                                            std::size_t max_dimension) {
  return std::make_shared<const RftBasis>(n, table, max_dimension);
}

BasisCache::BasisCache(std::size_t max_dimension) : max_dimension_(max_dimension) {}

std::size_t BasisCache::builds() const {
  std::lock_guard lock(mutex_);
  return builds_;
}

std::shared_ptr<const numtheory::RamanujanTable> BasisCache::table_for(std::size_t n) {
  std::lock_guard lock(table_mutex_);
  if (!table_ || static_cast<std::size_t>(table_->max_q()) < n) {
    table_ = std::make_shared<const numtheory::RamanujanTable>(
        numtheory::RamanujanTable::build(static_cast<std::int64_t>(n)));
  }
  return table_;
}

std::shared_ptr<const RftBasis> BasisCache::get(std::size_t n) {
  if (n > max_dimension_) {
    throw ResourceError("RFT basis of size " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(max_dimension_) +
                        " (dense O(N^2) transform; raise --max-n to override)");
  }
  std::promise<std::shared_ptr<const RftBasis>> promise;
  std::shared_future<std::shared_ptr<const RftBasis>> future;
  bool builder = false;
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(n); it != entries_.end()) {
      future = it->second;
    } else {
      future = promise.get_future().share();
      entries_.emplace(n, future);
      ++builds_;
      builder = true;
    }
  }
  if (builder) {
    try {
      promise.set_value(build_basis(n, *table_for(n), max_dimension_));
    } catch (...) {
      promise.set_exception(std::current_exception());
      // Drop the failed entry so a later request can retry.
      std::lock_guard lock(mutex_);
      entries_.erase(n);
    }
  }
  return future.get();
}

BasisCache& default_basis_cache() {
  static BasisCache cache;
  return cache;
}

Spectrum rft_forward(std::span<const double> x, const RftBasis& basis) {
  if (x.size() != basis.n()) throw DimensionError("rft_forward input", basis.n(), x.size());
  std::vector<double> y(basis.n());
  kernels::matvec(basis.matrix(), basis.n(), x, y);
  return Spectrum::rft(std::move(y));
}

std::vector<double> rft_inverse(const Spectrum& y, const RftBasis& basis) {
  const auto coeffs = y.real();
  if (coeffs.size() != basis.n()) throw DimensionError("rft_inverse input", basis.n(), coeffs.size());
  std::vector<double> x(basis.n());
  kernels::matvec(basis.inverse(), basis.n(), coeffs, x);
  return x;
}

std::array<Spectrum, 4> rft_spectra(const seq::IndicatorSet& ind, const RftBasis& basis) {
  const std::size_t n = basis.n();
  if (ind.padded_length() != n) throw DimensionError("indicator set", n, ind.padded_length());
  std::vector<double> signals(4 * n);
  for (std::size_t s = 0; s < 4; ++s) {
    const auto& bits = ind.indicator(seq::kNucleotides[s]);
    std::copy(bits.begin(), bits.end(), signals.begin() + static_cast<std::ptrdiff_t>(s * n));
  }
  std::vector<double> coeffs(4 * n);
  kernels::matvec_multi(basis.matrix(), n, signals, 4, coeffs);
  std::array<Spectrum, 4> out;
  for (std::size_t s = 0; s < 4; ++s) {
    out[s] = Spectrum::rft(std::vector<double>(coeffs.begin() + static_cast<std::ptrdiff_t>(s * n),
                                               coeffs.begin() + static_cast<std::ptrdiff_t>((s + 1) * n)));
  }
  return out;
}

PowerSpectrum rft_power_spectrum(std::span<const Spectrum> spectra) {
  require_four(spectra, SpectrumKind::rft);
  PowerSpectrum ps{SpectrumKind::rft, std::vector<double>(spectra[0].source_length(), 0.0), true};
  for (const auto& s : spectra) {
    const auto coeffs = s.real();
    for (std::size_t q = 0; q < coeffs.size(); ++q) ps.values[q] += std::abs(coeffs[q]);
  }
  return ps;
}

Spectrum dft_forward(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) throw InvalidArgument("dft_forward needs at least one sample");
  std::vector<std::complex<double>> u(n);
  plan_for(n).execute(x.data(), u.data());
  for (std::size_t k = n / 2 + 1; k < n; ++k) u[k] = std::conj(u[n - k]);
  // Shift from t = 0..N-1 to the 1-based time index: multiply by exp(-2 pi i k / N).
  for (std::size_t k = 1; k < n; ++k) {
    u[k] *= std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  }
  return Spectrum::dft(std::move(u));
}

std::array<Spectrum, 4> dft_spectra(const seq::IndicatorSet& ind) {
  std::array<Spectrum, 4> out;
  for (std::size_t s = 0; s < 4; ++s) out[s] = dft_forward(ind.signal(seq::kNucleotides[s]));
  return out;
}

PowerSpectrum dft_power_spectrum(std::span<const Spectrum> spectra) {
  require_four(spectra, SpectrumKind::dft);
  PowerSpectrum ps{SpectrumKind::dft, std::vector<double>(spectra[0].source_length(), 0.0), true};
  for (const auto& s : spectra) {
    const auto coeffs = s.complex();
    for (std::size_t k = 0; k < coeffs.size(); ++k) ps.values[k] += std::norm(coeffs[k]);
  }
  return ps;
}

std::vector<std::size_t> peak_indices(const PowerSpectrum& ps, std::size_t top, bool skip_first) {
  if (top == 0) throw InvalidArgument("peak_indices needs top >= 1");
  const std::size_t n = ps.size();
  // Storage positions to search.
  std::size_t lo = 0;
  std::size_t hi = n;
  if (ps.kind == SpectrumKind::rft) {
    lo = skip_first ? 1 : 0;
  } else {
    lo = 1;
    hi = n / 2 + 1;
  }
  std::vector<std::size_t> pos;
  for (std::size_t i = lo; i < std::min(hi, n); ++i) pos.push_back(i);
  const std::size_t keep = std::min(top, pos.size());
  std::partial_sort(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(keep), pos.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (ps.values[a] != ps.values[b]) return ps.values[a] > ps.values[b];
                      return a < b;
                    });
  pos.resize(keep);
  for (auto& p : pos) p += ps.first_index();
  return pos;
}

}  // namespace rftdist::transform
