#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "oracle.hpp"
#include "rftdist/error.hpp"
#include "rftdist/numtheory.hpp"

namespace nt = rftdist::numtheory;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "rftdist-tests";
  std::filesystem::create_directories(dir);
  return dir / (name + "-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
}

}  // namespace

TEST(Gcd, Examples) {
  EXPECT_EQ(nt::gcd(1, 17), 1);
  EXPECT_EQ(nt::gcd(12, 8), 4);
  EXPECT_EQ(nt::gcd(7, 7), 7);
  EXPECT_THROW(nt::gcd(0, 5), rftdist::InvalidArgument);
}

TEST(Totient, Examples) {
  EXPECT_EQ(nt::euler_totient(1), 1);
  EXPECT_EQ(nt::euler_totient(9), 6);
  EXPECT_EQ(nt::euler_totient(10), 4);
  EXPECT_EQ(nt::euler_totient(97), 96);
  EXPECT_THROW(nt::euler_totient(0), rftdist::InvalidArgument);
}

TEST(Totient, MatchesCountingUpTo1000) {
  for (std::int64_t q = 1; q <= 1000; ++q) {
    ASSERT_EQ(nt::euler_totient(q), oracle::totient_by_count(q)) << q;
  }
}

TEST(Moebius, Examples) {
  EXPECT_EQ(nt::moebius(1), 1);
  EXPECT_EQ(nt::moebius(2), -1);
  EXPECT_EQ(nt::moebius(4), 0);
  EXPECT_EQ(nt::moebius(6), 1);
  EXPECT_EQ(nt::moebius(30), -1);
  EXPECT_THROW(nt::moebius(0), rftdist::InvalidArgument);
}

TEST(Moebius, MatchesDefinitionAndDivisorSum) {
  for (std::int64_t n = 1; n <= 1000; ++n) {
    ASSERT_EQ(nt::moebius(n), oracle::moebius_by_definition(n)) << n;
    int divisor_sum = 0;
    for (std::int64_t d = 1; d <= n; ++d) {
      if (n % d == 0) divisor_sum += nt::moebius(d);
    }
    ASSERT_EQ(divisor_sum, n == 1 ? 1 : 0) << n;
  }
}

TEST(RamanujanSum, Examples) {
  EXPECT_EQ(nt::ramanujan_sum(1, 7), 1);
  EXPECT_EQ(nt::ramanujan_sum(2, 1), -1);
  EXPECT_EQ(nt::ramanujan_sum(2, 2), 1);
  EXPECT_EQ(nt::ramanujan_sum(3, 1), -1);
  EXPECT_EQ(nt::ramanujan_sum(3, 3), 2);
  EXPECT_EQ(nt::ramanujan_sum(4, 2), -2);
  EXPECT_EQ(nt::ramanujan_sum(6, 1), 1);
  EXPECT_THROW(nt::ramanujan_sum(0, 1), rftdist::InvalidArgument);
  EXPECT_THROW(nt::ramanujan_sum(3, 0), rftdist::InvalidArgument);
}

TEST(RamanujanSum, ClosedFormMatchesExponentialSum) {
  for (std::int64_t q = 1; q <= 120; ++q) {
    for (std::int64_t n = 1; n <= 120; ++n) {
      ASSERT_NEAR(static_cast<double>(nt::ramanujan_sum(q, n)),
                  oracle::ramanujan_exponential_sum(q, n), 1e-6)
          << q << "," << n;
    }
  }
}

TEST(RamanujanSum, DirectEvaluatorAgreesWithClosedForm) {
  for (std::int64_t q = 1; q <= 60; ++q) {
    for (std::int64_t n = 1; n <= 2 * q; ++n) {
      ASSERT_NEAR(nt::ramanujan_sum_direct(q, n), static_cast<double>(nt::ramanujan_sum(q, n)),
                  1e-9);
    }
  }
}

TEST(RamanujanSum, EvenSymmetryAndMultiplicativity) {
  for (std::int64_t q = 1; q <= 60; ++q) {
    for (std::int64_t n = 1; n < q; ++n) {
      EXPECT_EQ(nt::ramanujan_sum(q, n), nt::ramanujan_sum(q, q - n));
    }
  }
  for (std::int64_t a = 1; a <= 30; ++a) {
    for (std::int64_t b = 1; b <= 30; ++b) {
      if (std::gcd(a, b) != 1) continue;
      for (std::int64_t n = 1; n <= 12; ++n) {
        EXPECT_EQ(nt::ramanujan_sum(a * b, n), nt::ramanujan_sum(a, n) * nt::ramanujan_sum(b, n));
      }
    }
  }
}

TEST(RamanujanTable, MatchesClosedFormAndPeriodicity) {
  const auto table = nt::RamanujanTable::build(300);
  EXPECT_EQ(table.max_q(), 300);
  for (std::int64_t q = 1; q <= 300; ++q) {
    ASSERT_EQ(table.totient(q), nt::euler_totient(q));
    const auto row = table.row(q);
    ASSERT_EQ(row.size(), static_cast<std::size_t>(q));
    for (std::int64_t n = 1; n <= 3 * q; ++n) {
      ASSERT_EQ(table(q, n), nt::ramanujan_sum(q, n)) << q << "," << n;
    }
  }
}

TEST(RamanujanTable, RejectsOutOfRange) {
  const auto table = nt::RamanujanTable::build(5);
  EXPECT_THROW(table(6, 1), rftdist::InvalidArgument);
  EXPECT_THROW(table(0, 1), rftdist::InvalidArgument);
  EXPECT_THROW(table(2, 0), rftdist::InvalidArgument);
  EXPECT_THROW(nt::RamanujanTable::build(0), rftdist::InvalidArgument);
}

TEST(RamanujanTable, BudgetIsEnforced) {
  // Ten packed entries plus totients for q = 0..4.
  EXPECT_EQ(nt::RamanujanTable::bytes_required(4), 15 * sizeof(std::int64_t));
  EXPECT_THROW(nt::RamanujanTable::build(1000, 1024), rftdist::ResourceError);
}

TEST(RamanujanTable, SaveLoadRoundTrip) {
  const auto path = temp_file("table-roundtrip");
  const auto table = nt::RamanujanTable::build(64);
  table.save(path);
  const auto loaded = nt::RamanujanTable::load(path, 42);
  EXPECT_EQ(loaded.max_q(), 64);
  for (std::int64_t q = 1; q <= 64; ++q) {
    for (std::int64_t n = 1; n <= q; ++n) ASSERT_EQ(loaded(q, n), table(q, n));
  }
  std::filesystem::remove(path);
}

TEST(RamanujanTable, CorruptCacheIsRejected) {
  const auto path = temp_file("table-corrupt");
  nt::RamanujanTable::build(32).save(path);
  {
    // Flip c_q(1) for some row in the middle of the file.
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(16 + 8 * 200);
    const std::int64_t junk = 12345;
    f.write(reinterpret_cast<const char*>(&junk), sizeof junk);
  }
  bool rejected = false;
  for (std::uint64_t seed = 0; seed < 64 && !rejected; ++seed) {
    try {
      nt::RamanujanTable::load(path, seed);
    } catch (const rftdist::ValidationError&) {
      rejected = true;
    }
  }
  EXPECT_TRUE(rejected);

  std::ofstream(path, std::ios::binary | std::ios::trunc) << "not a table";
  EXPECT_THROW(nt::RamanujanTable::load(path), rftdist::Error);
  std::filesystem::remove(path);
}
