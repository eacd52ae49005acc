#include "rftdist/numtheory.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "rftdist/error.hpp"

namespace rftdist::numtheory {

namespace {

constexpr char kTableTag[8] = {'R', 'S', 'T', 'A', 'B', 'v', '1', '\0'};

void require_positive(std::int64_t v, const char* name) {
  if (v < 1) {
    throw InvalidArgument(std::string(name) + " must be >= 1, got " + std::to_string(v));
  }
}

// Smallest-prime-factor sieve giving phi and mu for all k <= limit.
void sieve_totient_moebius(std::int64_t limit, std::vector<std::int64_t>& phi,
                           std::vector<int>& mu) {
  const auto size = static_cast<std::size_t>(limit) + 1;
  phi.assign(size, 0);
  mu.assign(size, 1);
  std::vector<std::int64_t> primes;
  std::vector<bool> composite(size, false);
  if (limit >= 1) phi[1] = 1;
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      phi[i] = i - 1;
      mu[i] = -1;
    }
    for (std::int64_t p : primes) {
      const std::int64_t ip = i * p;
      if (ip > limit) break;
      composite[ip] = true;
      if (i % p == 0) {
        phi[ip] = phi[i] * p;
        mu[ip] = 0;
        break;
      }
      phi[ip] = phi[i] * (p - 1);
      mu[ip] = -mu[i];
    }
  }
}

}  // namespace

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  require_positive(a, "a");
  require_positive(b, "b");
  return std::gcd(a, b);
}

std::int64_t euler_totient(std::int64_t q) {
  require_positive(q, "q");
  std::int64_t result = q;
  std::int64_t m = q;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

int moebius(std::int64_t n) {
  require_positive(n, "n");
  int sign = 1;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return 0;
    sign = -sign;
  }
  if (m > 1) sign = -sign;
  return sign;
}

std::int64_t ramanujan_sum(std::int64_t q, std::int64_t n) {
  require_positive(q, "q");
  require_positive(n, "n");
  const std::int64_t reduced = q / std::gcd(q, n);
  return moebius(reduced) * (euler_totient(q) / euler_totient(reduced));
}

double ramanujan_sum_direct(std::int64_t q, std::int64_t n) {
  require_positive(q, "q");
  require_positive(n, "n");
  std::complex<double> sum{0.0, 0.0};
  for (std::int64_t p = 1; p <= q; ++p) {
    if (std::gcd(p, q) != 1) continue;
    // Reduce p*n mod q first so the angle stays in [0, 2*pi).
    const auto r = static_cast<double>((p % q) * (n % q) % q);
    sum += std::polar(1.0, 2.0 * std::numbers::pi * r / static_cast<double>(q));
  }
  if (std::abs(sum.imag()) > 1e-9) {
    throw ConsistencyError("Ramanujan sum c_" + std::to_string(q) + "(" + std::to_string(n) +
                           ") has non-vanishing imaginary part " + std::to_string(sum.imag()));
  }
  return sum.real();
}

RamanujanTable::RamanujanTable(std::int64_t max_q, std::vector<std::int64_t> values,
                               std::vector<std::int64_t> totients)
    : max_q_(max_q), values_(std::move(values)), totients_(std::move(totients)) {}

std::size_t RamanujanTable::bytes_required(std::int64_t max_q) {
  const auto q = static_cast<std::size_t>(max_q);
  return (q * (q + 1) / 2 + q + 1) * sizeof(std::int64_t);
}

RamanujanTable RamanujanTable::build(std::int64_t max_q, std::size_t budget_bytes) {
  require_positive(max_q, "max_q");
  // phi(q) < q always fits, so overflow is only a concern for the index math.
  if (max_q > (std::int64_t{1} << 31) || bytes_required(max_q) > budget_bytes) {
    throw ResourceError("Ramanujan table for max_q=" + std::to_string(max_q) + " needs " +
                        std::to_string(bytes_required(max_q)) + " bytes, budget is " +
                        std::to_string(budget_bytes));
  }
  std::vector<std::int64_t> phi;
  std::vector<int> mu;
  sieve_totient_moebius(max_q, phi, mu);

  std::vector<std::int64_t> values(row_offset(max_q + 1));
  for (std::int64_t q = 1; q <= max_q; ++q) {
    std::int64_t* row = values.data() + row_offset(q);
    for (std::int64_t n = 1; n <= q; ++n) {
      const std::int64_t reduced = q / std::gcd(q, n);
      row[n - 1] = mu[reduced] * (phi[q] / phi[reduced]);
    }
  }
  return RamanujanTable(max_q, std::move(values), std::move(phi));
}

std::int64_t RamanujanTable::operator()(std::int64_t q, std::int64_t n) const {
  if (q < 1 || q > max_q_) {
    throw InvalidArgument("q=" + std::to_string(q) + " outside table range [1, " +
                          std::to_string(max_q_) + "]");
  }
  require_positive(n, "n");
  return values_[row_offset(q) + static_cast<std::size_t>((n - 1) % q)];
}

std::span<const std::int64_t> RamanujanTable::row(std::int64_t q) const {
  if (q < 1 || q > max_q_) {
    throw InvalidArgument("q=" + std::to_string(q) + " outside table range [1, " +
                          std::to_string(max_q_) + "]");
  }
  return {values_.data() + row_offset(q), static_cast<std::size_t>(q)};
}

std::int64_t RamanujanTable::totient(std::int64_t q) const {
  if (q < 1 || q > max_q_) {
    throw InvalidArgument("q=" + std::to_string(q) + " outside table range");
  }
  return totients_[static_cast<std::size_t>(q)];
}

void RamanujanTable::save(const std::filesystem::path& path) const {
  static_assert(std::endian::native == std::endian::little,
                "table cache format is little-endian");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(kTableTag, sizeof(kTableTag));
  out.write(reinterpret_cast<const char*>(&max_q_), sizeof(max_q_));
  out.write(reinterpret_cast<const char*>(values_.data()),
            static_cast<std::streamsize>(values_.size() * sizeof(std::int64_t)));
  if (!out) throw Error("write failed for " + path.string());
}

RamanujanTable RamanujanTable::load(const std::filesystem::path& path,
                                    std::optional<std::uint64_t> check_seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open table cache " + path.string());
  char tag[sizeof(kTableTag)];
  std::int64_t max_q = 0;
  in.read(tag, sizeof(tag));
  in.read(reinterpret_cast<char*>(&max_q), sizeof(max_q));
  if (!in || std::memcmp(tag, kTableTag, sizeof(tag)) != 0) {
    throw ValidationError("table cache " + path.string() + " has an unknown format tag");
  }
  if (max_q < 1 || max_q > (std::int64_t{1} << 31)) {
    throw ValidationError("table cache " + path.string() + " has invalid max_q");
  }
  std::vector<std::int64_t> values(row_offset(max_q + 1));
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(std::int64_t)));
  if (!in || in.peek() != std::char_traits<char>::eof()) {
    throw ValidationError("table cache " + path.string() + " is truncated or oversized");
  }

  // The totient of q is the last entry of row q.
  std::vector<std::int64_t> totients(static_cast<std::size_t>(max_q) + 1, 0);
  for (std::int64_t q = 1; q <= max_q; ++q) {
    totients[q] = values[row_offset(q) + static_cast<std::size_t>(q - 1)];
  }
  RamanujanTable table(max_q, std::move(values), std::move(totients));

  if (table(1, 1) != 1) throw ValidationError("table cache: c_1(1) != 1");
  if (max_q >= 2) {
    std::mt19937_64 rng(check_seed.value_or(std::random_device{}()));
    for (int i = 0; i < 3; ++i) {
      const auto q = static_cast<std::int64_t>(2 + rng() % static_cast<std::uint64_t>(max_q - 1));
      const auto r = table.row(q);
      if (std::accumulate(r.begin(), r.end(), std::int64_t{0}) != 0) {
        throw ValidationError("table cache: period sum of row " + std::to_string(q) +
                              " is not zero");
      }
    }
  }
  return table;
}

}  // namespace rftdist::numtheory
