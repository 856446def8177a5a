#include "expsum/arith_tables.hpp"
#include "expsum/convolution.hpp"
#include "expsum/log_vector.hpp"
#include "expsum/numeric_types.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>
#include <random>

using namespace expsum;

namespace {

const ArithTables& tables_2000() {
  static const ArithTables t = build_tables(2000);
  return t;
}

// Σ_{1<=a<=r, (a,r)=1} e(an/r), straight from the definition.
std::complex<double> ramanujan_brute(std::uint64_t r, std::uint64_t n) {
  std::complex<double> s = 0;
  for (std::uint64_t a = 1; a <= r; ++a) {
    if (std::gcd(a, r) != 1) continue;
    const double t = 2 * std::numbers::pi * static_cast<double>((a * n) % r) / static_cast<double>(r);
    s += std::complex<double>(std::cos(t), std::sin(t));
  }
  return s;
}

}  // namespace

TEST(ArithTables, SmallValues) {
  const auto t = build_tables(10);
  EXPECT_EQ(t.mobius(6), 1);
  EXPECT_EQ(t.mobius(4), 0);
  EXPECT_EQ(t.mobius(7), -1);
  EXPECT_EQ(t.totient(9), 6u);
  EXPECT_EQ(t.totient(10), 4u);
  EXPECT_EQ(t.mangoldt_base(8), 2u);
  EXPECT_EQ(t.mangoldt_base(6), 0u);
  EXPECT_EQ(t.mangoldt_base(1), 0u);
  EXPECT_EQ(t.tau(10), 4u);
}

TEST(ArithTables, RangeAndCapErrors) {
  const auto t = build_tables(10);
  EXPECT_THROW(t.mobius(11), std::out_of_range);
  EXPECT_THROW(t.mobius(0), std::out_of_range);
  EXPECT_THROW(build_tables(1000, 999), std::length_error);
  EXPECT_THROW(build_tables(0), std::invalid_argument);
  EXPECT_NO_THROW(build_tables(1));
}

TEST(ArithTables, SieveInvariants) {
  const auto& t = tables_2000();
  for (std::uint64_t n = 1; n <= t.n_max(); ++n) {
    if (n >= 2) {
      const auto p = t.spf(n);
      ASSERT_EQ(n % p, 0u);
      ASSERT_EQ(mobius_of(factorize_trial(p)), -1) << "spf not prime at " << n;
    }
    long mu_sum = 0;
    std::uint64_t phi_sum = 0;
    for (const auto d : t.divisors(n)) {
      mu_sum += t.mobius(d);
      phi_sum += t.totient(d);
    }
    ASSERT_EQ(mu_sum, n == 1 ? 1 : 0) << n;
    ASSERT_EQ(phi_sum, n) << n;
    const auto f = factorize_trial(n);
    ASSERT_EQ(t.mangoldt_base(n) != 0, f.size() == 1) << n;
    ASSERT_EQ(t.mobius(n), mobius_of(f));
    ASSERT_EQ(t.totient(n), totient_of(f));
  }
}

TEST(ArithTables, CacheRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "expsum_table_cache_test";
  std::filesystem::remove_all(dir);
  const auto a = cached_tables(500, dir);
  const auto b = cached_tables(500, dir);
  ASSERT_TRUE(std::filesystem::exists(dir / "tables_500.bin"));
  for (std::uint64_t n = 1; n <= 500; ++n) {
    ASSERT_EQ(a.mobius(n), b.mobius(n));
    ASSERT_EQ(a.spf(n), b.spf(n));
    ASSERT_EQ(a.mangoldt_base(n), b.mangoldt_base(n));
  }
  std::filesystem::remove_all(dir);
}

TEST(RamanujanSum, Examples) {
  EXPECT_EQ(ramanujan_sum(1, 5), 1);
  EXPECT_EQ(ramanujan_sum(6, 6), 2);
  EXPECT_EQ(ramanujan_sum(4, 2), -2);
  EXPECT_THROW(ramanujan_sum(0, 1), std::invalid_argument);
}

TEST(RamanujanSum, ClosedFormMatchesDefinition) {
  const auto& t = tables_2000();
  for (std::uint64_t r = 1; r <= 60; ++r) {
    for (std::uint64_t n = 1; n <= 60; ++n) {
      const auto brute = ramanujan_brute(r, n);
      ASSERT_LT(std::abs(brute.imag()), 1e-9);
      ASSERT_EQ(ramanujan_sum(r, n), std::llround(brute.real())) << "r=" << r << " n=" << n;
      ASSERT_EQ(ramanujan_sum(r, n, t), ramanujan_sum(r, n));
    }
  }
}

TEST(RamanujanSum, Multiplicative) {
  for (std::uint64_t r = 1; r <= 40; ++r)
    for (std::uint64_t s = 1; s <= 40; ++s) {
      if (std::gcd(r, s) != 1) continue;
      for (std::uint64_t n = 1; n <= 60; ++n)
        ASSERT_EQ(ramanujan_sum(r * s, n), ramanujan_sum(r, n) * ramanujan_sum(s, n));
    }
}

TEST(DirichletConvolve, MobiusInversionIdentity) {
  const auto& t = tables_2000();
  const std::uint64_t N = 200;
  const auto one = tabulate(N, [](std::uint64_t) { return BigRational(1); });
  const auto mu = tabulate(N, [&](std::uint64_t n) { return BigRational(t.mobius(n)); });
  const auto e = dirichlet_convolve(one, mu, N);
  EXPECT_EQ(e[1], 1);
  for (std::uint64_t n = 2; n <= N; ++n) ASSERT_EQ(e[n], 0) << n;
}

TEST(DirichletConvolve, OneStarMangoldtIsLog) {
  const auto& t = tables_2000();
  const std::uint64_t N = 100;
  const auto one = tabulate(N, [](std::uint64_t) { return BigRational(1); });
  const auto lam = tabulate(N, [&](std::uint64_t n) { return LogVector<BigRational>::mangoldt(n, t); });
  const auto c = dirichlet_convolve(one, lam, N);
  LogVector<BigRational> expected;
  expected.add(2, 2);
  expected.add(3, 1);
  EXPECT_EQ(c[12], expected);
  for (std::uint64_t n = 1; n <= N; ++n) ASSERT_EQ(c[n], LogVector<BigRational>::log_of(n, t)) << n;
}

TEST(DirichletConvolve, MuAgainstMuSquaredAgreesWithDivisorSum) {
  const auto& t = tables_2000();
  const std::uint64_t N = 300;
  const auto mu = tabulate(N, [&](std::uint64_t n) { return BigRational(t.mobius(n)); });
  const auto mu2 = tabulate(N, [&](std::uint64_t n) { return BigRational(t.mobius(n) * t.mobius(n)); });
  const auto c = dirichlet_convolve(mu, mu2, N);
  EXPECT_EQ(c[4], -1);  // μ(1)μ²(4) + μ(2)μ²(2) + μ(4)μ²(1) = 0 − 1 + 0
  for (std::uint64_t n = 1; n <= N; ++n) {
    long direct = 0;
    for (std::uint64_t d = 1; d <= n; ++d)
      if (n % d == 0) direct += t.mobius(d) * t.mobius(n / d) * t.mobius(n / d);
    ASSERT_EQ(c[n], direct) << n;
  }
}

TEST(DirichletConvolve, RandomMobiusInversionRoundTrip) {
  const auto& t = tables_2000();
  const std::uint64_t N = 2000;
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 12);
  const auto f = tabulate(N, [&](std::uint64_t) { return BigRational(num(rng), den(rng)); });
  const auto one = tabulate(N, [](std::uint64_t) { return BigRational(1); });
  const auto mu = tabulate(N, [&](std::uint64_t n) { return BigRational(t.mobius(n)); });
  const auto back = dirichlet_convolve(dirichlet_convolve(f, one, N), mu, N);
  for (std::uint64_t n = 1; n <= N; ++n) ASSERT_EQ(back[n], f[n]) << n;
}

TEST(LogVector, ZeroCoefficientsAreDropped) {
  auto v = LogVector<BigRational>::log_prime(3, 2);
  v.add(3, -2);
  EXPECT_TRUE(v.is_zero());
  v.add(5, 0);
  EXPECT_TRUE(v.is_zero());
  const auto& t = tables_2000();
  EXPECT_NEAR(LogVector<BigRational>::log_of(360, t).evaluate(), std::log(360.0), 1e-12);
}
