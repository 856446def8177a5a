#include "expsum/identity.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace expsum;

namespace {

const ArithTables& tables() {
  static const ArithTables t = build_tables(20000);
  return t;
}

const WeightConfig kConfigs[] = {
    {.U = 2, .U1 = 4, .R = 3, .V = 5, .q = 1},
    {.U = 10, .U1 = 40, .R = 5, .V = 30, .q = 3},
    {.U = 10, .U1 = 30, .R = 8, .V = 20, .q = 4},
};

double mangoldt_d(std::uint64_t n, const ArithTables& t) {
  const auto p = t.mangoldt_base(n);
  return p == 0 ? 0.0 : std::log(static_cast<double>(p));
}

// Each term from its defining divisor sum over pairs (d, n/d), in double,
// using only the pointwise weights.
struct DoubleTerms {
  double t1, t2, t3, t4;
};

DoubleTerms mangoldt_terms_brute(std::uint64_t n, const WeightSystem& ws, const ArithTables& t) {
  const double V = ws.config().V;
  auto h = [&](std::uint64_t d) { return to_double(ws.h(d)); };
  auto one_h = [&](std::uint64_t k) {
    double s = 0;
    for (std::uint64_t d = 1; d <= k; ++d)
      if (k % d == 0) s += h(d);
    return s;
  };
  auto one_theta = [&](std::uint64_t k) {
    double s = 0;
    for (std::uint64_t d = 1; d <= k; ++d)
      if (k % d == 0) s += t.mobius(d) - to_double(ws.theta_prime(d));
    return s;
  };
  auto one_lambda = [&](std::uint64_t k) {
    double s = 0;
    for (std::uint64_t d = 1; d <= k; ++d)
      if (k % d == 0) s += to_double(ws.lambda(d));
    return s;
  };
  DoubleTerms r{0, 0, 0, 0};
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const std::uint64_t e = n / d;
    r.t1 += h(d) * std::log(static_cast<double>(e));
    if (static_cast<double>(d) <= V) r.t2 += mangoldt_d(d, t) * one_h(e);
    if (static_cast<double>(d) > V) r.t3 += mangoldt_d(d, t) * one_theta(e) * one_lambda(e);
  }
  if (static_cast<double>(n) <= V) r.t4 = mangoldt_d(n, t);
  return r;
}

}  // namespace

TEST(MangoldtIdentity, ResidualVanishes) {
  const auto& t = tables();
  for (const auto& c : kConfigs) {
    const WeightSystem ws(c, t);
    const auto dec = decompose_mangoldt(3000, ws, t);
    const auto rep = mangoldt_residual(dec, ws, t);
    EXPECT_LT(rep.max_abs_residual, Real50(1e-25)) << describe(c) << " at n=" << rep.argmax_n;
  }
}

TEST(MobiusIdentity, ResidualVanishes) {
  const auto& t = tables();
  for (const auto& c : kConfigs) {
    const WeightSystem ws(c, t);
    const auto dec = decompose_mobius(3000, ws, t);
    const auto rep = mobius_residual(dec, ws, t);
    EXPECT_LT(rep.max_abs_residual, Real50(1e-25)) << describe(c) << " at n=" << rep.argmax_n;
  }
}

TEST(MangoldtIdentity, TermsMatchDivisorSumOracle) {
  const auto& t = tables();
  for (const auto& c : kConfigs) {
    const WeightSystem ws(c, t);
    const auto dec = decompose_mangoldt(400, ws, t);
    for (std::uint64_t n = 1; n <= 400; ++n) {
      const auto b = mangoldt_terms_brute(n, ws, t);
      ASSERT_NEAR(dec.term1[n].evaluate(), b.t1, 1e-9) << describe(c) << " n=" << n;
      ASSERT_NEAR(dec.term2[n].evaluate(), b.t2, 1e-9) << describe(c) << " n=" << n;
      ASSERT_NEAR(dec.term3[n].evaluate(), b.t3, 1e-9) << describe(c) << " n=" << n;
      ASSERT_NEAR(dec.term4[n].evaluate(), b.t4, 1e-12) << describe(c) << " n=" << n;
    }
  }
}

TEST(MangoldtIdentity, PrimeAboveVComesFromTheOtherTerms) {
  const auto& t = tables();
  const WeightSystem ws(kConfigs[1], t);  // V = 30
  const auto dec = decompose_mangoldt(200, ws, t);
  for (std::uint64_t p : {31, 37, 101, 199}) {
    EXPECT_TRUE(dec.term4[p].is_zero());
    const auto got = dec.combined(p);
    EXPECT_LT(abs(got.coefficient(p) - Real50(1)), Real50(1e-40)) << p;
    EXPECT_EQ(got.size(), 1u) << p;
  }
}

TEST(MobiusIdentity, SquarefullNumbersGetZero) {
  const auto& t = tables();
  const WeightSystem ws(kConfigs[2], t);
  const auto dec = decompose_mobius(500, ws, t);
  for (std::uint64_t n : {4, 36, 128, 500}) EXPECT_LT(abs(dec.combined(n)), Real50(1e-40)) << n;
}

TEST(ClassicMode, ReducesToVaughan) {
  const auto& t = tables();
  const WeightSystem general(kConfigs[1], t);
  const WeightSystem ws = classic_vaughan_mode(general, t);
  EXPECT_EQ(ws.config().U1, ws.config().U);
  EXPECT_EQ(ws.config().R, 1);
  for (std::uint64_t d = 1; d <= 200; ++d) {
    const Real50 expect = static_cast<double>(d) <= ws.config().U ? Real50(t.mobius(d)) : Real50(0);
    ASSERT_EQ(ws.h(d), expect) << d;
  }
  EXPECT_LT(mangoldt_residual(decompose_mangoldt(2000, ws, t), ws, t).max_abs_residual, Real50(1e-25));
  EXPECT_LT(mobius_residual(decompose_mobius(2000, ws, t), ws, t).max_abs_residual, Real50(1e-25));
}

TEST(ClassicMode, AgreesWithNearDegenerateGeneralWeights) {
  // U1 just above U with no integer in (U, U1], and 1 < R < 2: the general
  // weights collapse onto the classical ones.
  const auto& t = tables();
  const WeightSystem near(WeightConfig{.U = 10, .U1 = 10.5, .R = 1.5, .V = 12, .q = 1}, t);
  const WeightSystem classic(classic_config(WeightConfig{.U = 10, .U1 = 10, .R = 1, .V = 12, .q = 1}), t);
  const auto a = decompose_mangoldt(1500, near, t);
  const auto b = decompose_mangoldt(1500, classic, t);
  for (std::uint64_t n = 1; n <= 1500; ++n) {
    ASSERT_EQ(a.term1[n], b.term1[n]) << n;
    ASSERT_EQ(a.term2[n], b.term2[n]) << n;
    ASSERT_EQ(a.term3[n], b.term3[n]) << n;
  }
}

TEST(Decompose, RangeErrors) {
  const auto& t = tables();
  const WeightSystem ws(kConfigs[0], t);
  EXPECT_THROW(decompose_mangoldt(0, ws, t), std::invalid_argument);
  EXPECT_THROW(decompose_mobius(30000, ws, t), std::out_of_range);
}
