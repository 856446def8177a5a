#pragma once

// The bound functions F_η, G_η, the parameter choice (U, U1, R, V) for given
// (x, q, δ0, η), the side conditions those parameters must satisfy, and the
// resulting bounds on |Σ Λ(n)e(nα)| and |Σ μ(n)e(nα)|.

#include "expsum/arith_tables.hpp"
#include "expsum/diophantine.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace expsum {

inline constexpr double kFOffset = 1.01;
inline constexpr double kFScale = 14.41;
inline constexpr double kGScale = 4.01;
inline constexpr double kTypeTwoScale = 3.6;
inline constexpr double kUniformF = 51;
inline constexpr double kUniformG = 15;

inline const char* const kBoundDisclaimer =
    "bounds hold for x >= x0(eta), which is not computed; comparisons against actual sums are "
    "informational only";

// ---------------------------------------------------------------------------
// ∫_A^B √(t/(t−u)) dt

namespace detail {

inline void check_integral_domain(double A, double B, double u, const char* who) {
  if (!(std::isfinite(A) && std::isfinite(B) && std::isfinite(u)))
    throw std::domain_error(std::string(who) + ": non-finite argument");
  if (u < 0) throw std::domain_error(std::string(who) + ": u must be >= 0");
  if (A < u) throw std::domain_error(std::string(who) + ": need A >= u");
  if (B < A) throw std::domain_error(std::string(who) + ": need B >= A");
}

}  // namespace detail

/// Closed form u·log((√B+√(B−u))/(√A+√(A−u))) + √(B(B−u)) − √(A(A−u)).
inline double integral_sqrt_ratio(double A, double B, double u) {
  detail::check_integral_domain(A, B, u, "integral_sqrt_ratio");
  if (A == B) return 0.0;
  if (u == 0) return B - A;
  const double num = std::sqrt(B) + std::sqrt(B - u);
  const double den = std::sqrt(A) + std::sqrt(A - u);
  return u * std::log(num / den) + std::sqrt(B * (B - u)) - std::sqrt(A * (A - u));
}

/// Same integral by adaptive Gauss–Kronrod after t = u + s², which turns the
/// integrand into 2√(u + s²) on [√(A−u), √(B−u)] and removes the endpoint singularity.
inline double integral_sqrt_ratio_quadrature(double A, double B, double u) {
  detail::check_integral_domain(A, B, u, "integral_sqrt_ratio_quadrature");
  if (A == B) return 0.0;
  const double s0 = std::sqrt(A - u), s1 = std::sqrt(B - u);
  auto g = [u](double s) { return 2 * std::sqrt(u + s * s); };
  double err = 0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, s0, s1, 10, 1e-11, &err);
}

// ---------------------------------------------------------------------------
// F_η, G_η

namespace detail {

inline void check_eta(double eta, const char* who) {
  if (!(eta > 0 && eta <= 0.1)) throw std::domain_error(std::string(who) + ": eta must lie in (0, 1/10]");
}

inline double fg_denominator(double u, double u0, double eta, const char* who) {
  check_eta(eta, who);
  if (!(u >= 0 && u0 >= 0)) throw std::domain_error(std::string(who) + ": u and u0 must be >= 0");
  const double den = 1 - (eta + 5 * u + u0) / 2;
  if (!(den > 0)) throw std::domain_error(std::string(who) + ": 1 - (eta + 5u + u0)/2 must be positive");
  return den;
}

}  // namespace detail

/// Limits of the integral in F_η.
inline std::pair<double, double> f_integral_limits(double u, double u0, double eta) {
  return {(eta - eta * eta * eta) / 2 + u, (2 + eta + u + u0) / 4};
}

inline double F_eta(double u, double u0, double eta) {
  const double den = detail::fg_denominator(u, u0, eta, "F_eta");
  const auto [A, B] = f_integral_limits(u, u0, eta);
  return kFOffset + kFScale / den * integral_sqrt_ratio(A, B, u);
}

inline double G_eta(double u, double u0, double eta) {
  const double den = detail::fg_denominator(u, u0, eta, "G_eta");
  return kGScale * (1 + eta * eta * eta - (eta + 3 * u + u0) / 2) / den;
}

/// 0 <= u <= 2/5 − η and 0 <= u0 <= min(u, 1/5 + η).
inline bool in_bound_range(double u, double u0, double eta, double slack = 1e-12) {
  return u >= -slack && u <= 2.0 / 5 - eta + slack && u0 >= -slack &&
         u0 <= std::min(u, 1.0 / 5 + eta) + slack;
}

/// Points (u, u0) that occur for actual (x, q, δ): u0 > 0 forces δ0 > q, hence
/// u <= 1/5 + η; with u0 = 0 any u in [0, 2/5 − η].
inline bool in_realizable_range(double u, double u0, double eta, double slack = 1e-12) {
  if (!in_bound_range(u, u0, eta, slack)) return false;
  return u0 <= slack || u <= 1.0 / 5 + eta + slack;
}

struct UniformConstants {
  double max_F = 0;
  double max_G = 0;
  std::pair<double, double> argmax_F;  // (u, u0)
  std::pair<double, double> argmax_G;
  double grid_max_F = 0;  // largest value on the sanity grid
  double grid_max_G = 0;
  int ceil_F = 0;
  int ceil_G = 0;
};

/// max of F_η and G_η over the two corners (1/5+η, 1/5+η) and (2/5−η, 0), with
/// a grid scan of the realizable region as a cross-check.
inline UniformConstants uniform_constants(double eta, int grid = 200) {
  detail::check_eta(eta, "uniform_constants");
  UniformConstants c;
  const std::pair<double, double> corners[] = {{1.0 / 5 + eta, 1.0 / 5 + eta}, {2.0 / 5 - eta, 0.0}};
  for (const auto& [u, u0] : corners) {
    const double f = F_eta(u, u0, eta), g = G_eta(u, u0, eta);
    if (f > c.max_F) c.max_F = f, c.argmax_F = {u, u0};
    if (g > c.max_G) c.max_G = g, c.argmax_G = {u, u0};
  }
  auto visit = [&](double u, double u0) {
    c.grid_max_F = std::max(c.grid_max_F, F_eta(u, u0, eta));
    c.grid_max_G = std::max(c.grid_max_G, G_eta(u, u0, eta));
  };
  const double u_hi = 2.0 / 5 - eta, tri = 1.0 / 5 + eta;
  for (int i = 0; i <= grid; ++i) visit(u_hi * i / grid, 0.0);
  for (int i = 1; i <= grid; ++i) {
    const double u = tri * i / grid;
    for (int j = 1; j <= i; ++j) visit(u, u * j / i);
  }
  c.ceil_F = static_cast<int>(std::ceil(c.max_F));
  c.ceil_G = static_cast<int>(std::ceil(c.max_G));
  return c;
}

// ---------------------------------------------------------------------------
// Parameter choice and side conditions

struct ParamChoice {
  double U = 0;
  double U1 = 0;
  double R = 0;
  double R1 = 0;
  double V = 0;
  double Delta = 1;
  double Q = 0;
  std::vector<std::pair<std::string, bool>> condition_flags;

  bool all_flags() const {
    return std::all_of(condition_flags.begin(), condition_flags.end(), [](const auto& f) { return f.second; });
  }
  bool flag(const std::string& name) const {
    for (const auto& [n, v] : condition_flags)
      if (n == name) return v;
    throw std::out_of_range("no condition flag named " + name);
  }
};

/// Q = x^{4/5 − η}.
inline double default_Q(double x, double eta) { return std::pow(x, 4.0 / 5 - eta); }

namespace detail {

// a >= b and a <= b up to a relative 1e-12, since several conditions hold with
// equality by construction.
inline bool geq(double a, double b) { return a >= b * (1 - 1e-12); }
inline bool leq(double a, double b) { return a <= b * (1 + 1e-12); }

}  // namespace detail

/// One boolean per inequality, in a fixed order:
///   C1_U     U >= 9δ0(Rq)^{1+η/2}        C1_V   V >= x^{η/3}δ0q
///   C1_R     R >= x^{η/4}                C1_U1VR U1·V·R <= x/(8δ0)
///   C1_qVR   qVR <= Q                    C2_V   V >= x^{η/3}δ0q
///   C2_U     U >= 9R²δ0q                 C2_UV  UV < x/9
///   C12_V, C12_R, C12_qVR as above;  C12_U  U >= 9·max(δ0(Rq)^{1+η/2}, R²δ0q)
///   C12_UVRR1  U·V·R·R1 <= x·min(1, √(q/δ0))/(8√(δ0q)·log²x)
inline std::vector<std::pair<std::string, bool>> verify_conditions(const ParamChoice& pc, double x,
                                                                   std::uint64_t q, double delta0,
                                                                   double eta, double Q) {
  using detail::geq;
  using detail::leq;
  const double qd = static_cast<double>(q);
  const double lx = std::log(x);
  const double v_low = std::pow(x, eta / 3) * delta0 * qd;
  const double r_low = std::pow(x, eta / 4);
  const double u_c1 = 9 * delta0 * std::pow(pc.R * qd, 1 + eta / 2);
  const double u_c2 = 9 * pc.R * pc.R * delta0 * qd;
  const double c12_cap = x * std::min(1.0, std::sqrt(qd / delta0)) / (8 * std::sqrt(delta0 * qd) * lx * lx);
  return {
      {"C1_U", geq(pc.U, u_c1)},
      {"C1_V", geq(pc.V, v_low)},
      {"C1_R", geq(pc.R, r_low)},
      {"C1_U1VR", leq(pc.U1 * pc.V * pc.R, x / (8 * delta0))},
      {"C1_qVR", leq(qd * pc.V * pc.R, Q)},
      {"C2_V", geq(pc.V, v_low)},
      {"C2_U", geq(pc.U, u_c2)},
      {"C2_UV", pc.U * pc.V < x / 9},
      {"C12_V", geq(pc.V, v_low)},
      {"C12_R", geq(pc.R, r_low)},
      {"C12_U", geq(pc.U, std::max(u_c1, u_c2))},
      {"C12_UVRR1", leq(pc.U * pc.V * pc.R * pc.R1, c12_cap)},
      {"C12_qVR", leq(qd * pc.V * pc.R, Q)},
  };
}

/// V = x^{(η−η³)/2}δ0q, U = (x^{1−η/2}Δ/(δ0q)^{1/2})^{1/2},
/// R = R1 = (1/3)(x^{1−η/2}Δ/(δ0q)^{5/2})^{1/4}, U1 = U·R1, Δ = min(1, √(q/δ0)).
inline ParamChoice choose_params(double x, std::uint64_t q, double delta0, double eta) {
  detail::check_eta(eta, "choose_params");
  if (!(x > 1)) throw std::domain_error("choose_params: x must be > 1");
  if (q < 1) throw std::domain_error("choose_params: q must be >= 1");
  if (!(delta0 >= 1)) throw std::domain_error("choose_params: delta0 must be >= 1");
  const double qd = static_cast<double>(q);
  const double dq = delta0 * qd;
  ParamChoice pc;
  pc.Delta = std::min(1.0, std::sqrt(qd / delta0));
  const double base = std::pow(x, 1 - eta / 2) * pc.Delta;
  pc.V = std::pow(x, (eta - eta * eta * eta) / 2) * dq;
  pc.U = std::sqrt(base / std::sqrt(dq));
  pc.R = std::pow(base / std::pow(dq, 2.5), 0.25) / 3;
  pc.R1 = pc.R;
  pc.U1 = pc.U * pc.R1;
  pc.Q = default_Q(x, eta);
  pc.condition_flags = verify_conditions(pc, x, q, delta0, eta, pc.Q);
  return pc;
}

// ---------------------------------------------------------------------------
// Main bounds

namespace detail {

inline void check_main_range(double x, std::uint64_t q, double delta0, double eta) {
  check_eta(eta, "main_bound");
  if (!(x > 1)) throw std::domain_error("main_bound: x must be > 1");
  if (q < 1) throw std::domain_error("main_bound: q must be >= 1");
  if (!(delta0 >= 1)) throw std::domain_error("main_bound: delta0 must be >= 1");
  const double cap = std::pow(x, 2.0 / 5 - eta);
  if (delta0 * static_cast<double>(q) > cap * (1 + 1e-12))
    throw std::domain_error("main_bound: delta0*q exceeds x^(2/5 - eta)");
}

inline double phi_d(std::uint64_t q) { return static_cast<double>(totient_of(factorize_trial(q))); }

}  // namespace detail

/// (q/φ(q))·F_η(u, u0)·x/√(δ0q) for Λ, G_η(u, u0)·x/√(δ0φ(q)) for μ.
inline double main_bound(ArithFn f, double x, std::uint64_t q, double delta0, double eta) {
  detail::check_main_range(x, q, delta0, eta);
  const auto uc = u_coordinates(static_cast<double>(q), delta0, x, eta);
  const double qd = static_cast<double>(q), ph = detail::phi_d(q);
  if (f == ArithFn::mangoldt) return qd / ph * F_eta(uc.u, uc.u0, eta) * x / std::sqrt(delta0 * qd);
  return G_eta(uc.u, uc.u0, eta) * x / std::sqrt(delta0 * ph);
}

/// 51·x√q/(φ(q)√δ0) and 15·x/√(δ0φ(q)).
inline double uniform_envelope(ArithFn f, double x, std::uint64_t q, double delta0) {
  const double qd = static_cast<double>(q), ph = detail::phi_d(q);
  if (f == ArithFn::mangoldt) return kUniformF * x * std::sqrt(qd) / (ph * std::sqrt(delta0));
  return kUniformG * x / std::sqrt(delta0 * ph);
}

struct BoundComponents {
  double type_one_a = 0;       // x/(δ0φ(q))
  double type_one_b = 0;       // 3x log(Vq)/(δ0φ(q) log(U1/U) log(U/(qR)))
  double type_one_c = 0;       // 3x τ(q) log V/(δ0φ(q) log(U1/U) log(U/(qR)))
  double o_term = 0;           // (q/φ(q)) U1VR log²x/(log R log(U1/U)), constant 1, non-binding
  double type_two_mangoldt = 0;
  double type_two_mobius = 0;
  double total_mangoldt = 0;   // (q/φ(q))(x/(δ0q) + type-II integral term)
  double total_mobius = 0;     // 9x log V/(√(δ0φ(q)) log(U1/U) log(U/(qR))) + type-II μ term
  bool conditions_hold = false;
};

/// Every explicit main term of the type-I and type-II estimates for the given
/// parameters. With `require_conditions` the call fails unless every flag holds.
inline BoundComponents bound_components(double x, std::uint64_t q, double delta0, [[maybe_unused]] double eta,
                                                const ParamChoice& pc, bool require_conditions = false) {
  BoundComponents b;
  b.conditions_hold = pc.all_flags();
  if (require_conditions && !b.conditions_hold)
    throw std::domain_error("bound_components: side conditions do not all hold");
  const double qd = static_cast<double>(q), ph = detail::phi_d(q);
  const double tau = static_cast<double>(tau_of(factorize_trial(q)));
  const double lx = std::log(x);
  const double l_r1 = std::log(pc.U1 / pc.U), l_r = std::log(pc.R);
  const double type_one_den = delta0 * ph * l_r1 * std::log(pc.U / (qd * pc.R));
  b.type_one_a = x / (delta0 * ph);
  b.type_one_b = 3 * x * std::log(pc.V * qd) / type_one_den;
  b.type_one_c = 3 * x * tau * std::log(pc.V) / type_one_den;
  b.o_term = qd / ph * pc.U1 * pc.V * pc.R * lx * lx / (l_r * l_r1);
  const double u = std::log(delta0 * qd) / lx;
  const double A = std::max(std::log(pc.V) / lx, u), B = std::log(x / pc.U) / lx;
  const double integral = B >= A ? integral_sqrt_ratio(A, B, u) : 0.0;
  const double two_core = kTypeTwoScale * x * lx / std::sqrt(delta0 * qd * l_r * l_r1) * integral;
  b.type_two_mangoldt = qd / ph * two_core;
  b.type_two_mobius = 2 * x / std::sqrt(delta0 * ph) * std::log(x / (pc.U * pc.V)) / std::sqrt(l_r * l_r1);
  b.total_mangoldt = qd / ph * (x / (delta0 * qd) + two_core);
  b.total_mobius = 9 * x * std::log(pc.V) / (std::sqrt(delta0 * ph) * l_r1 * std::log(pc.U / (qd * pc.R))) +
                   b.type_two_mobius;
  return b;
}

// ---------------------------------------------------------------------------
// Single-point report

struct BoundReport {
  double x = 0;
  std::uint64_t q = 1;
  double delta0 = 1;
  double eta = 0;
  double u = 0;
  double u0 = 0;
  double F = 0;
  double G = 0;
  double bound_mangoldt = 0;
  double bound_mobius = 0;
  ParamChoice params;
  std::string disclaimer = kBoundDisclaimer;
};

inline BoundReport bound_report(double x, std::uint64_t q, double delta0, double eta) {
  BoundReport r;
  r.x = x;
  r.q = q;
  r.delta0 = delta0;
  r.eta = eta;
  const auto uc = u_coordinates(static_cast<double>(q), delta0, x, eta);
  r.u = uc.u;
  r.u0 = uc.u0;
  r.F = F_eta(uc.u, uc.u0, eta);
  r.G = G_eta(uc.u, uc.u0, eta);
  r.bound_mangoldt = main_bound(ArithFn::mangoldt, x, q, delta0, eta);
  r.bound_mobius = main_bound(ArithFn::mobius, x, q, delta0, eta);
  r.params = choose_params(x, q, delta0, eta);
  return r;
}

}  // namespace expsum
