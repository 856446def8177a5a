#include "expsum/expsum.hpp"
#include "expsum/sweep.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace expsum;

namespace {

const ArithTables& tables() {
  static const ArithTables t = build_tables(200000);
  return t;
}

std::complex<double> e(double t) { return std::polar(1.0, 2 * std::numbers::pi * t); }

WeightSystem small_ws() { return WeightSystem({.U = 10, .U1 = 40, .R = 5, .V = 30, .q = 3}, tables()); }

}  // namespace

TEST(DirectSum, HandValues) {
  const auto& t = tables();
  const double full = 3 * std::log(2) + 2 * std::log(3) + std::log(5) + std::log(7);
  EXPECT_NEAR(direct_sum(ArithFn::mangoldt, 0.0, 10, t).re(), full, 1e-13);
  EXPECT_NEAR(full, 7.8320, 1e-4);
  const double alt = 3 * std::log(2) - 2 * std::log(3) - std::log(5) - std::log(7);
  const auto h = direct_sum(ArithFn::mangoldt, BigRational(1, 2), 10, t);
  EXPECT_NEAR(h.re(), alt, 1e-13);
  EXPECT_NEAR(h.im(), 0.0, 1e-13);
  EXPECT_NEAR(alt, -3.6731, 1e-4);
}

TEST(DirectSum, PeriodAndConjugation) {
  const auto& t = tables();
  for (const double d : {0.1234, std::numbers::sqrt2 - 1, 0.5}) {
    const BigRational a(d);
    for (const ArithFn f : {ArithFn::mangoldt, ArithFn::mobius}) {
      const auto s = direct_sum(f, a, 20000, t).value;
      const auto s1 = direct_sum(f, BigRational(a + 1), 20000, t).value;
      const auto sm = direct_sum(f, BigRational(-a), 20000, t).value;
      EXPECT_LT(std::abs(s - s1), 1e-12 * (1 + std::abs(s)));
      EXPECT_LT(std::abs(s - std::conj(sm)), 1e-12 * (1 + std::abs(s)));
    }
  }
}

TEST(DirectSum, MatchesNaiveLoopAndTrivialBound) {
  const auto& t = tables();
  const double a = 0.377;
  std::complex<long double> naive = 0;
  double coeff = 0;
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    const double v = arith_value(ArithFn::mangoldt, n, t);
    naive += std::complex<long double>(v * e(std::fmod(n * a, 1.0)));
    coeff += std::abs(v);
  }
  const auto s = direct_sum(ArithFn::mangoldt, a, 5000, t);
  EXPECT_LT(std::abs(s.value - std::complex<double>(naive)), 1e-9);
  EXPECT_LE(s.abs(), coeff);
  EXPECT_THROW(direct_sum(ArithFn::mobius, a, 1e9, t), std::out_of_range);
}

TEST(TypeOne, FirstSumAgainstDirectLoop) {
  const auto& t = tables();
  const auto ws = small_ws();
  const double x = 3000;
  for (const double a : {0.0, 0.2718, -0.2718}) {
    std::complex<double> oracle = 0;
    for (const auto& [m, hm] : ws.h_support())
      for (std::uint64_t n = 1; m * n <= x; ++n) oracle += hm * std::log(static_cast<double>(n)) * e(std::fmod(m * n * a, 1.0));
    const auto split = type_I_1_split(Phase::of(a), x, ws, t);
    EXPECT_LT(std::abs(split.total.value - oracle), 1e-8 * (1 + std::abs(oracle)));
    EXPECT_LT(std::abs(split.q_divides_m.value + split.q_not_divides_m.value - split.total.value), 1e-9);
  }
  const auto p = type_I_1(Phase::of(0.2718), x, ws, t).value;
  const auto m = type_I_1(Phase::of(-0.2718), x, ws, t).value;
  EXPECT_LT(std::abs(p - std::conj(m)), 1e-9);
}

TEST(TypeOne, DegenerateWeightsCollapseToLogSum) {
  const auto& t = tables();
  WeightConfig c{.U = 1, .U1 = 1, .R = 1, .V = 5, .q = 1, .classic = true};
  const WeightSystem ws(c, t);
  const double a = 0.31;
  std::complex<double> oracle = 0;
  for (std::uint64_t n = 1; n <= 2000; ++n) oracle += std::log(static_cast<double>(n)) * e(std::fmod(n * a, 1.0));
  EXPECT_LT(std::abs(type_I_1(Phase::of(a), 2000, ws, t).value - oracle), 1e-9);
}

TEST(TypeOne, SecondSumAgainstTripleLoop) {
  const auto& t = tables();
  const auto ws = small_ws();
  const double x = 3000, a = 0.4142;
  for (const ArithFn f0 : {ArithFn::mangoldt, ArithFn::mobius}) {
    std::complex<double> oracle = 0;
    for (std::uint64_t l = 1; l <= 30; ++l) {
      const double fl = arith_value(f0, l, t);
      if (fl == 0) continue;
      for (const auto& [m, hm] : ws.h_support())
        for (std::uint64_t n = 1; l * m * n <= x; ++n) oracle += fl * hm * e(std::fmod(l * m * n * a, 1.0));
    }
    EXPECT_LT(std::abs(type_I_2(f0, Phase::of(a), x, ws, t).value - oracle), 1e-9 * (1 + std::abs(oracle)));
  }
}

TEST(TypeOne, SecondSumEdgeCases) {
  const auto& t = tables();
  const WeightSystem low_v({.U = 10, .U1 = 40, .R = 5, .V = 1.5, .q = 3}, t);
  EXPECT_EQ(type_I_2(ArithFn::mangoldt, Phase::of(0.3), 1000, low_v, t).abs(), 0.0);
  const WeightSystem one_v({.U = 10, .U1 = 40, .R = 5, .V = 1, .q = 3}, t);
  EXPECT_LT(std::abs(type_I_2(ArithFn::mobius, Phase::of(0.3), 1000, one_v, t).value -
                     [&] {
                       std::complex<double> s = 0;
                       for (const auto& [m, hm] : one_v.h_support())
                         for (std::uint64_t n = 1; m * n <= 1000; ++n) s += hm * e(std::fmod(m * n * 0.3, 1.0));
                       return s;
                     }()),
            1e-9);
}

TEST(TypeTwo, AgainstBruteForce) {
  const auto& t = tables();
  const auto ws = small_ws();
  const double x = 3000, a = 0.1618;
  // (1*θ)(n)(1*λ)(n) from pointwise divisor sums.
  auto factor = [&](std::uint64_t n) {
    double th = 0, lb = 0;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d) continue;
      const auto& tp = ws.theta_prime_table();
      th += t.mobius(d) - (d < tp.size() ? to_double(tp[d]) : 0.0);
      if (d <= ws.config().floor_R()) lb += to_double(ws.selberg().lambda(d));
    }
    return th * lb;
  };
  for (std::uint64_t n = 1; n <= 10; ++n) EXPECT_NEAR(factor(n), 0.0, 1e-12) << n;
  for (const ArithFn f : {ArithFn::mangoldt, ArithFn::mobius}) {
    std::complex<double> oracle = 0;
    for (std::uint64_t m = 31; m <= 300; ++m) {
      const double fm = arith_value(f, m, t);
      if (fm == 0) continue;
      for (std::uint64_t n = 1; m * n <= x; ++n) oracle += fm * factor(n) * e(std::fmod(m * n * a, 1.0));
    }
    EXPECT_LT(std::abs(type_II(f, Phase::of(a), x, ws, t).value - oracle), 1e-10 * (1 + std::abs(oracle)));
  }
  // x/U < V: empty range.
  EXPECT_EQ(type_II(ArithFn::mangoldt, Phase::of(a), 250, ws, t).abs(), 0.0);
}

TEST(Recombine, ResidualWithinBudget) {
  const auto& t = tables();
  const double x = 1e5;
  const auto ws = small_ws();
  for (const ArithFn f : {ArithFn::mangoldt, ArithFn::mobius}) {
    for (const auto& alpha : {Phase::of(alpha_from(1, 3, 2, x)), Phase::of(std::numbers::sqrt2 - 1)}) {
      const auto r = recombine(f, alpha, x, ws, t);
      EXPECT_LT(r.residual, 1e-9 * x);
      EXPECT_LT(std::abs(r.assembled() - r.s_direct.value), 1e-9 * x);
    }
  }
}

TEST(Recombine, ClassicVaughanConfig) {
  const auto& t = tables();
  const WeightSystem ws(classic_config({.U = 30, .U1 = 60, .R = 4, .V = 30, .q = 1}), t);
  const auto r = recombine(ArithFn::mangoldt, Phase::of(0.123), 20000, ws, t);
  EXPECT_LT(r.residual, 1e-9 * 20000);
}

TEST(ResidueBuckets, MatchDirectSumAtRationals) {
  const auto& t = tables();
  const double x = 50000;
  for (const std::uint64_t q : {1u, 2u, 7u, 30u, 97u}) {
    for (const ArithFn f : {ArithFn::mangoldt, ArithFn::mobius}) {
      const ResidueBuckets b(f, q, x, t);
      for (const auto a : coprime_residues(q)) {
        const auto direct = direct_sum(f, BigRational(static_cast<long long>(a), static_cast<long long>(q)), x, t);
        EXPECT_LT(std::abs(b.at(a) - direct.value), 1e-9 * x) << q << " " << a;
      }
    }
  }
}
