#include "expsum/bounds.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace expsum;

namespace {

constexpr double kEta = 1.0 / 15;

}  // namespace

TEST(Integral, Examples) {
  EXPECT_DOUBLE_EQ(integral_sqrt_ratio(0.2, 0.7, 0), 0.5);
  EXPECT_EQ(integral_sqrt_ratio(0.4, 0.4, 0.3), 0.0);
  EXPECT_NEAR(integral_sqrt_ratio(0.366519, 0.6, 1.0 / 3), 0.454442, 1e-5);
  EXPECT_THROW(integral_sqrt_ratio(0.2, 0.5, 0.3), std::domain_error);
  EXPECT_THROW(integral_sqrt_ratio(0.5, 0.4, 0.3), std::domain_error);
}

TEST(Integral, ClosedFormMatchesQuadrature) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u01(0, 1);
  for (int i = 0; i < 400; ++i) {
    const double u = 0.4 * u01(rng);
    const double A = i % 4 == 0 ? u : u + u01(rng);
    const double B = A + u01(rng);
    const double c = integral_sqrt_ratio(A, B, u);
    const double g = integral_sqrt_ratio_quadrature(A, B, u);
    EXPECT_LE(std::abs(c - g), 1e-9 * std::max(std::abs(c), 1e-300)) << A << " " << B << " " << u;
  }
}

TEST(BoundFunctions, Examples) {
  EXPECT_NEAR(F_eta(0, 0, kEta), 1.01 + 14.41 / (1 - kEta / 2) * ((2 + kEta) / 4 - (kEta - std::pow(kEta, 3)) / 2),
              1e-12);
  EXPECT_NEAR(F_eta(0, 0, kEta), 8.22, 5e-3);
  EXPECT_NEAR(F_eta(4.0 / 15, 4.0 / 15, kEta), 50.98, 0.01);
  EXPECT_NEAR(G_eta(1.0 / 3, 0, kEta), 14.04, 0.05);
  EXPECT_NEAR(G_eta(0, 0, kEta), 4.01 * (1 + std::pow(kEta, 3) - kEta / 2) / (1 - kEta / 2), 1e-12);
  EXPECT_THROW(F_eta(0.4, 0, kEta), std::domain_error);
  EXPECT_THROW(G_eta(0.4, 0, kEta), std::domain_error);
  EXPECT_THROW(F_eta(0, 0, 0.2), std::domain_error);
}

TEST(BoundFunctions, MonotoneAlongEdges) {
  double pf0 = 0, pfu = 0, pg0 = 0, pgu = 0;
  for (int i = 0; i <= 1000; ++i) {
    const double u = (1.0 / 5 + kEta) * i / 1000;
    const double f0 = F_eta(u, 0, kEta), fu = F_eta(u, u, kEta);
    const double g0 = G_eta(u, 0, kEta), gu = G_eta(u, u, kEta);
    EXPECT_GE(f0, pf0 - 1e-12);
    EXPECT_GE(fu, pfu - 1e-12);
    EXPECT_GE(g0, pg0 - 1e-12);
    EXPECT_GE(gu, pgu - 1e-12);
    pf0 = f0, pfu = fu, pg0 = g0, pgu = gu;
  }
  for (int i = 0; i < 100; ++i) {
    const double u0 = 0.2 * i / 100;
    EXPECT_LE(G_eta(0.2, u0, kEta), G_eta(0.2, u0 + 0.002, kEta));
  }
}

TEST(UniformConstants, MaximaAndCeilings) {
  const auto c = uniform_constants(kEta);
  EXPECT_NEAR(c.max_F, 50.97, 0.05);
  EXPECT_NEAR(c.max_G, 14.04, 0.05);
  EXPECT_EQ(c.ceil_F, 51);
  EXPECT_EQ(c.ceil_G, 15);
  EXPECT_LE(c.grid_max_F, c.max_F * (1 + 1e-12));
  EXPECT_LE(c.grid_max_G, c.max_G * (1 + 1e-12));
}

TEST(Params, SubstitutionAtUnitModulus) {
  const double x = 1e6;
  const auto pc = choose_params(x, 1, 1, kEta);
  EXPECT_EQ(pc.Delta, 1.0);
  EXPECT_NEAR(pc.V, std::pow(x, (kEta - std::pow(kEta, 3)) / 2), 1e-9 * pc.V);
  EXPECT_NEAR(pc.U, std::pow(x, (1 - kEta / 2) / 2), 1e-9 * pc.U);
  EXPECT_NEAR(pc.R, std::pow(x, (1 - kEta / 2) / 4) / 3, 1e-9 * pc.R);
  EXPECT_EQ(pc.R1, pc.R);
  EXPECT_NEAR(pc.U1, pc.U * pc.R, 1e-9 * pc.U1);
  EXPECT_EQ(pc.condition_flags.size(), 13u);
}

TEST(Params, DeltaBelowOneWhenDeltaZeroExceedsQ) {
  const auto pc = choose_params(1e8, 2, 8, kEta);
  EXPECT_DOUBLE_EQ(pc.Delta, 0.5);
  // log Δ / log x = −u0/2
  const auto uc = u_coordinates(2, 8, 1e8, kEta);
  EXPECT_NEAR(std::log(pc.Delta) / std::log(1e8), -uc.u0 / 2, 1e-12);
}

TEST(Params, FlagsAtDeskScale) {
  // At x = 10^6 the log² condition cannot hold for any q; the others hold at q = 1.
  const auto pc = choose_params(1e6, 1, 1, kEta);
  EXPECT_FALSE(pc.flag("C12_UVRR1"));
  for (const auto& [name, ok] : pc.condition_flags) {
    if (name != "C12_UVRR1") {
      EXPECT_TRUE(ok) << name;
    }
  }
  EXPECT_THROW(pc.flag("nope"), std::out_of_range);
}

TEST(Params, OversizedModulusBreaksQVR) {
  auto pc = choose_params(1e6, 10, 1, kEta);
  pc.V *= 1e6;
  const auto flags = verify_conditions(pc, 1e6, 10, 1, kEta, pc.Q);
  for (const auto& [name, ok] : flags) {
    if (name == "C1_qVR" || name == "C12_qVR") {
      EXPECT_FALSE(ok) << name;
    }
  }
}

TEST(MainBound, SubstitutionAndEnvelope) {
  const double x = 1e8;
  EXPECT_NEAR(main_bound(ArithFn::mangoldt, x, 1, 1, kEta), F_eta(0, 0, kEta) * x, 1e-6 * x);
  EXPECT_NEAR(main_bound(ArithFn::mobius, x, 1, 1, kEta), G_eta(0, 0, kEta) * x, 1e-6 * x);
  const double cap = std::pow(x, 2.0 / 5 - kEta);
  for (std::uint64_t q = 1; q <= static_cast<std::uint64_t>(cap); q += 7)
    for (const double d0 : {1.0, 2.0, 10.0}) {
      if (d0 * static_cast<double>(q) > cap) continue;
      const auto uc = u_coordinates(static_cast<double>(q), d0, x, kEta);
      if (uc.u0 > 1.0 / 5 + kEta) continue;
      EXPECT_LE(main_bound(ArithFn::mangoldt, x, q, d0, kEta), uniform_envelope(ArithFn::mangoldt, x, q, d0))
          << q << " " << d0;
      EXPECT_LE(main_bound(ArithFn::mobius, x, q, d0, kEta), uniform_envelope(ArithFn::mobius, x, q, d0))
          << q << " " << d0;
    }
  EXPECT_THROW(main_bound(ArithFn::mangoldt, x, static_cast<std::uint64_t>(cap) + 10, 1, kEta), std::domain_error);
}

TEST(MainBound, DependsOnlyOnDeltaZero) {
  const double x = 1e7;
  for (const double d : {5.0, 12.0, 40.0})
    EXPECT_EQ(main_bound(ArithFn::mangoldt, x, 3, delta0_of(d), kEta),
              main_bound(ArithFn::mangoldt, x, 3, delta0_of(-d), kEta));
}

TEST(Components, TypeTwoAtUnitModulusHasFlatIntegrand) {
  const double x = 1e7;
  const auto pc = choose_params(x, 1, 1, kEta);
  const auto b = bound_components(x, 1, 1, kEta, pc);
  const double lx = std::log(x);
  const double A = std::log(pc.V) / lx, B = std::log(x / pc.U) / lx;
  const double expect = 3.6 * x * lx / std::sqrt(std::log(pc.R) * std::log(pc.U1 / pc.U)) * (B - A);
  EXPECT_NEAR(b.type_two_mangoldt, expect, 1e-9 * expect);
  EXPECT_GT(b.type_two_mobius, 0);
  EXPECT_THROW(bound_components(x, 1, 1, kEta, pc, true), std::domain_error);

  // μ type-II term decreases as R grows.
  auto pc2 = pc;
  pc2.R *= 2;
  EXPECT_LT(bound_components(x, 1, 1, kEta, pc2).type_two_mobius, b.type_two_mobius);
}

TEST(Components, AssembledTermsBelowMainBoundWhereFlagsHold) {
  // The flags only all hold for very large x; scan a grid and compare wherever they do.
  int checked = 0;
  for (const double lx : {60.0, 80.0, 120.0, 200.0}) {
    const double x = std::exp(lx);
    for (const std::uint64_t q : {1u, 2u, 6u}) {
      const auto pc = choose_params(x, q, 1, kEta);
      if (!pc.all_flags()) continue;
      const auto b = bound_components(x, q, 1, kEta, pc, true);
      EXPECT_LE(b.total_mangoldt, main_bound(ArithFn::mangoldt, x, q, 1, kEta)) << lx << " " << q;
      ++checked;
    }
  }
  RecordProperty("grid_points_with_all_flags", checked);
}

TEST(BoundReport, CarriesDisclaimerAndParams) {
  const auto r = bound_report(1e6, 2, 1, kEta);
  EXPECT_FALSE(r.disclaimer.empty());
  EXPECT_EQ(r.q, 2u);
  EXPECT_GT(r.F, 0);
  EXPECT_EQ(r.params.condition_flags.size(), 13u);
}
