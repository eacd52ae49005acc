#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

// Integer kernels behind the Ramanujan-sum basis: gcd, Euler totient,
// Moebius and the Ramanujan sums c_q(n) themselves.
namespace rftdist::numtheory {

std::int64_t gcd(std::int64_t a, std::int64_t b);

// phi(q) by trial-division factorization.
std::int64_t euler_totient(std::int64_t q);

// mu(n) in {-1, 0, 1} by trial-division factorization.
int moebius(std::int64_t n);

// Closed form c_q(n) = mu(q/(q,n)) * phi(q) / phi(q/(q,n)). Exact.
std::int64_t ramanujan_sum(std::int64_t q, std::int64_t n);

// Direct evaluation of the exponential sum over primitive q-th roots of unity.
// Only used as an oracle; throws ConsistencyError if the imaginary part does
// not vanish to 1e-9.
double ramanujan_sum_direct(std::int64_t q, std::int64_t n);

// Default cap on the bytes a RamanujanTable may occupy (2 GiB).
inline constexpr std::size_t kDefaultTableBudgetBytes = std::size_t{1} << 31;

// One period of c_q(.) for every q in [1, max_q], packed row after row.
// Row q starts at offset q(q-1)/2 and holds c_q(1..q). Immutable once built.
class RamanujanTable {
 public:
  static RamanujanTable build(std::int64_t max_q,
                              std::size_t budget_bytes = kDefaultTableBudgetBytes);

  static std::size_t bytes_required(std::int64_t max_q);

  std::int64_t max_q() const noexcept { return max_q_; }

  // c_q(n) for any n >= 1, by periodic extension of the stored row.
  std::int64_t operator()(std::int64_t q, std::int64_t n) const;

  std::span<const std::int64_t> row(std::int64_t q) const;

  std::int64_t totient(std::int64_t q) const;

  // Binary cache file: 8-byte format tag, max_q, then the packed rows.
  void save(const std::filesystem::path& path) const;

  // Loads a cache written by save(). The period-sum identity is checked on
  // three rows drawn with `check_seed` before the table is returned.
  static RamanujanTable load(const std::filesystem::path& path,
                             std::optional<std::uint64_t> check_seed = std::nullopt);

 private:
  RamanujanTable(std::int64_t max_q, std::vector<std::int64_t> values,
                 std::vector<std::int64_t> totients);

  static std::size_t row_offset(std::int64_t q) {
    return static_cast<std::size_t>(q) * static_cast<std::size_t>(q - 1) / 2;
  }

  std::int64_t max_q_;
  std::vector<std::int64_t> values_;
  std::vector<std::int64_t> totients_;  // index q, entry 0 unused
};

}  // namespace rftdist::numtheory
