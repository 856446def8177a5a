#pragma once

// Randomized checks of the explicit inequalities used in the type-I and
// type-II estimates. Each check draws admissible inputs, evaluates both sides
// directly and records any instance with LHS > RHS.

#include "expsum/arith_tables.hpp"
#include "expsum/numeric_types.hpp"
#include "expsum/phase.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace expsum {

struct AuditEntry {
  std::string name;
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  double max_ratio = 0;  // max LHS/RHS seen
  std::string witness;   // first violating instance, if any
};

struct AuditReport {
  std::uint64_t seed = 0;
  std::vector<AuditEntry> entries;

  bool passed() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.violations == 0; });
  }
  const AuditEntry& entry(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return e;
    throw std::out_of_range("no audit entry " + name);
  }
};

/// α = a0/q0 + δ/y with (a0, q0) = 1, q0 <= Q0, |δ|/y <= 1/(q0 Q0).
struct ApproxInstance {
  long long a0 = 0;
  std::uint64_t q0 = 1;
  double Q0 = 1;
  double y = 1;
  double delta = 0;
  Phase alpha;

  std::string describe() const {
    std::ostringstream os;
    os << "alpha=" << a0 << "/" << q0 << "+" << delta << "/" << y << " Q0=" << Q0;
    return os.str();
  }
  /// y/(2|δ|q0), infinite for δ = 0.
  double small_window() const {
    return delta == 0 ? std::numeric_limits<double>::infinity()
                      : y / (2 * std::abs(delta) * static_cast<double>(q0));
  }
};

// ---------------------------------------------------------------------------
// Individual inequalities: each returns {lhs, rhs}.

struct Sides {
  double lhs = 0;
  double rhs = 0;
};

/// Σ_{z1<m<=z2} min(A, 1/|sin πmα|) against 2A + (2q0/π) log 4q0.
inline Sides check_sum_min_sine(const ApproxInstance& in, double z1, double z2, double A) {
  Sides s;
  const auto lo = static_cast<std::uint64_t>(std::floor(z1)) + 1;
  const auto hi = static_cast<std::uint64_t>(std::floor(z2));
  for (std::uint64_t m = lo; m <= hi; ++m) {
    const double sn = in.alpha.times(m).abs_sin_pi();
    s.lhs += sn == 0 ? A : std::min(A, 1 / sn);
  }
  const double q0 = static_cast<double>(in.q0);
  s.rhs = 2 * A + 2 * q0 / std::numbers::pi * std::log(4 * q0);
  return s;
}

/// Σ_{z1<m<=z2, q0∤m} 1/|sin πmα| against q0 log(e q0); needs z2 <= y/(2|δ|q0).
inline Sides check_sum_inverse_sine(const ApproxInstance& in, double z1, double z2) {
  Sides s;
  const auto lo = static_cast<std::uint64_t>(std::floor(z1)) + 1;
  const auto hi = static_cast<std::uint64_t>(std::floor(z2));
  for (std::uint64_t m = lo; m <= hi; ++m) {
    if (m % in.q0 == 0) continue;
    s.lhs += 1 / in.alpha.times(m).abs_sin_pi();
  }
  const double q0 = static_cast<double>(in.q0);
  s.rhs = q0 * (1 + std::log(q0));
  return s;
}

inline double factorial(int r) {
  double f = 1;
  for (int i = 2; i <= r; ++i) f *= i;
  return f;
}

/// Σ_{m<=Y} (log Y/m)^r min(y/m, 1/|sin πmα|) against its explicit bound.
inline Sides check_log_weighted_min_sine(const ApproxInstance& in, double Y, int r) {
  Sides s;
  const auto hi = static_cast<std::uint64_t>(std::floor(Y));
  for (std::uint64_t m = 1; m <= hi; ++m) {
    const double md = static_cast<double>(m);
    const double sn = in.alpha.times(m).abs_sin_pi();
    const double inv = sn == 0 ? std::numeric_limits<double>::infinity() : 1 / sn;
    s.lhs += std::pow(std::log(Y / md), r) * std::min(in.y / md, inv);
  }
  const double q0 = static_cast<double>(in.q0);
  const double lp = std::max(std::log(2 * Y / q0), 0.0);
  s.rhs = std::log(4 * q0) * (2 * factorial(r) / std::numbers::pi * Y + 2 * q0 * std::pow(std::log(Y), r)) +
          2 * in.y / q0 * std::pow(lp, r) * (lp / (r + 1) + 2);
  return s;
}

/// Σ_{m<=Y, q0∤m} (log Y/m)^r/|sin πmα| against log(e q0)(r!Y + q0 (log Y)^r); needs Y <= y/(2|δ|q0).
inline Sides check_log_weighted_inverse_sine(const ApproxInstance& in, double Y, int r) {
  Sides s;
  const auto hi = static_cast<std::uint64_t>(std::floor(Y));
  for (std::uint64_t m = 1; m <= hi; ++m) {
    if (m % in.q0 == 0) continue;
    s.lhs += std::pow(std::log(Y / static_cast<double>(m)), r) / in.alpha.times(m).abs_sin_pi();
  }
  const double q0 = static_cast<double>(in.q0);
  s.rhs = (1 + std::log(q0)) * (factorial(r) * Y + q0 * std::pow(std::log(Y), r));
  return s;
}

/// The two shifted log sums over 0 <= m <= X − ρ.
inline std::pair<Sides, Sides> check_shifted_log_sums(double X, double rho, int r) {
  Sides a, b;
  const auto hi = static_cast<std::uint64_t>(std::floor(X - rho));
  for (std::uint64_t m = 0; m <= hi; ++m) {
    const double t = static_cast<double>(m) + rho;
    const double l = std::pow(std::log(X / t), r);
    a.lhs += l;
    b.lhs += l / t;
  }
  const double lxr = std::log(X / rho);
  a.rhs = factorial(r) * X + std::pow(lxr, r);
  b.rhs = std::pow(lxr, r + 1) / (r + 1) + std::pow(lxr, r) / rho;
  return {a, b};
}

/// |Σ a_n φ(n)| against φ(b)·max_c |Σ_{c<n<=b} a_n| for a_n on K+1..K+L.
inline Sides check_abel(const std::vector<std::complex<double>>& a, const std::vector<double>& phi,
                        double phi_b) {
  Sides s;
  std::complex<double> weighted = 0, tail = 0;
  double best = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    weighted += a[i] * phi[i];
    tail += a[i];
    best = std::max(best, std::abs(tail));
  }
  s.lhs = std::abs(weighted);
  s.rhs = phi_b * best;
  return s;
}

/// Σ_{ℓ<=V} μ²(ℓ)(ℓ,q)/ℓ against τ(q) log eV, and Σ_{ℓ<=V} μ²(ℓ)(ℓ,q) against τ(q)V.
inline std::pair<Sides, Sides> check_squarefree_gcd_sums(std::uint64_t q, double V, const ArithTables& t) {
  Sides a, b;
  const auto hi = static_cast<std::uint64_t>(std::floor(V));
  for (std::uint64_t l = 1; l <= hi; ++l) {
    if (t.mobius(l) == 0) continue;
    const double g = static_cast<double>(std::gcd(l, q));
    a.lhs += g / static_cast<double>(l);
    b.lhs += g;
  }
  const double tau = static_cast<double>(tau_of(factorize_trial(q)));
  a.rhs = tau * (1 + std::log(V));
  b.rhs = tau * V;
  return {a, b};
}

/// Prefix sums of μ² and Λ² for the dyadic-window checks.
class SquareSums {
 public:
  explicit SquareSums(const ArithTables& t) : mu2_(t.n_max() + 1, 0), lam2_(t.n_max() + 1, 0.0L) {
    for (std::uint64_t n = 1; n <= t.n_max(); ++n) {
      mu2_[n] = mu2_[n - 1] + (t.mobius(n) != 0 ? 1 : 0);
      const auto p = t.mangoldt_base(n);
      const long double l = p == 0 ? 0.0L : std::log(static_cast<long double>(p));
      lam2_[n] = lam2_[n - 1] + l * l;
    }
  }
  std::uint64_t n_max() const { return mu2_.size() - 1; }
  /// Σ_{M<m<=2M} μ²(m)
  double mu2_window(double M) const { return static_cast<double>(mu2_[top(M)] - mu2_[bottom(M)]); }
  /// Σ_{M<m<=2M} Λ²(m)
  double lambda2_window(double M) const { return static_cast<double>(lam2_[top(M)] - lam2_[bottom(M)]); }

 private:
  static std::uint64_t bottom(double M) { return static_cast<std::uint64_t>(std::floor(M)); }
  static std::uint64_t top(double M) { return static_cast<std::uint64_t>(std::floor(2 * M)); }
  std::vector<std::uint64_t> mu2_;
  std::vector<long double> lam2_;
};

/// Σ_{A<2^k<=B} φ(log 2^k/log x) against (log x/log 2)∫_{log A/log x}^{log B/log x} φ + φ(log A/log x).
inline Sides check_dyadic_sum(double A, double B, double x, const std::function<double(double)>& phi) {
  Sides s;
  const double lx = std::log(x);
  for (int k = 0; k < 1100; ++k) {
    const double m = std::ldexp(1.0, k);
    if (m > B) break;
    if (m > A) s.lhs += phi(k * std::numbers::ln2 / lx);
  }
  const double a = std::log(A) / lx, b = std::log(B) / lx;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(phi, a, b, 15, 1e-12);
  s.rhs = lx / std::numbers::ln2 * integral + phi(a);
  return s;
}

// ---------------------------------------------------------------------------
// Randomized driver

struct AuditOptions {
  std::uint64_t seed = 1;
  std::uint64_t instances = 1000;
  double mean_square_epsilon = 0.01;
  double mean_square_min_M = 1e5;
};

namespace detail {

class AuditRecorder {
 public:
  explicit AuditRecorder(std::string name) { e_.name = std::move(name); }
  void record(const Sides& s, const std::function<std::string()>& describe) {
    ++e_.instances;
    const double ratio = s.rhs > 0 ? s.lhs / s.rhs : (s.lhs > 0 ? std::numeric_limits<double>::infinity() : 0);
    e_.max_ratio = std::max(e_.max_ratio, ratio);
    if (s.lhs > s.rhs) {
      if (e_.violations == 0) {
        std::ostringstream os;
        os << describe() << ": lhs=" << s.lhs << " rhs=" << s.rhs;
        e_.witness = os.str();
      }
      ++e_.violations;
    }
  }
  AuditEntry take() { return std::move(e_); }

 private:
  AuditEntry e_;
};

inline ApproxInstance draw_approx(std::mt19937_64& rng, std::uint64_t q_max, double Q0_min) {
  ApproxInstance in;
  std::uniform_int_distribution<std::uint64_t> qd(1, q_max);
  in.q0 = qd(rng);
  std::uniform_int_distribution<long long> ad(0, static_cast<long long>(in.q0) - 1);
  do in.a0 = ad(rng);
  while (std::gcd(static_cast<unsigned long long>(in.a0), in.q0) != 1);
  std::uniform_real_distribution<double> u01(0, 1);
  const double Q0_lo = std::max(static_cast<double>(in.q0), Q0_min);
  in.Q0 = Q0_lo * std::pow(100.0, u01(rng));
  in.y = std::pow(10.0, 1 + 5 * u01(rng));
  const double dmax = in.y / (static_cast<double>(in.q0) * in.Q0);
  // sometimes exactly rational, otherwise anywhere in the admissible band
  in.delta = u01(rng) < 0.1 ? 0.0 : (2 * u01(rng) - 1) * dmax;
  in.alpha = Phase::of(BigRational(in.a0, static_cast<long long>(in.q0)) +
                       BigRational(in.delta) / BigRational(in.y));
  return in;
}

}  // namespace detail

/// Runs every inequality on `instances` random admissible inputs. `t` must
/// reach at least 2·mean_square_min_M.
inline AuditReport inequality_audit(const AuditOptions& opt, const ArithTables& t) {
  if (t.n_max() < static_cast<std::uint64_t>(2 * opt.mean_square_min_M))
    throw std::out_of_range("inequality_audit: tables must reach 2*M_min");
  AuditReport rep;
  rep.seed = opt.seed;
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> u01(0, 1);
  std::uniform_int_distribution<int> rd(0, 3);
  const auto N = opt.instances;

  {
    detail::AuditRecorder rec("sum_min_sine");
    for (std::uint64_t i = 0; i < N; ++i) {
      const auto in = detail::draw_approx(rng, 300, 1);
      const double z1 = 1e-3 + 1e4 * u01(rng);
      const double z2 = z1 + static_cast<double>(in.q0) * (1e-9 + u01(rng));
      const double A = std::pow(10.0, 3 * u01(rng));
      const auto s = check_sum_min_sine(in, z1, std::min(z2, z1 + static_cast<double>(in.q0)), A);
      rec.record(s, [&] { return in.describe() + " z1=" + std::to_string(z1) + " A=" + std::to_string(A); });
    }
    rep.entries.push_back(rec.take());
  }
  {
    detail::AuditRecorder rec("sum_inverse_sine");
    for (std::uint64_t i = 0; i < N; ++i) {
      const auto in = detail::draw_approx(rng, 300, 1);
      const double cap = std::min(in.small_window(), 1e5);
      const double z2 = cap * (0.05 + 0.95 * u01(rng));
      const double z1 = std::max(1e-6, z2 - static_cast<double>(in.q0) * u01(rng));
      const auto s = check_sum_inverse_sine(in, z1, z2);
      rec.record(s, [&] { return in.describe() + " z1=" + std::to_string(z1) + " z2=" + std::to_string(z2); });
    }
    rep.entries.push_back(rec.take());
  }
  {
    detail::AuditRecorder rec("log_weighted_min_sine");
    for (std::uint64_t i = 0; i < N; ++i) {
      const auto in = detail::draw_approx(rng, 300, 1);
      const double Y = 3 + 1e4 * u01(rng) + 1e-9;
      const int r = rd(rng);
      const auto s = check_log_weighted_min_sine(in, Y, r);
      rec.record(s, [&] { return in.describe() + " Y=" + std::to_string(Y) + " r=" + std::to_string(r); });
    }
    rep.entries.push_back(rec.take());
  }
  {
    detail::AuditRecorder rec("log_weighted_inverse_sine");
    for (std::uint64_t i = 0; i < N; ++i) {
      const auto in = detail::draw_approx(rng, 300, 8);
      const double cap = std::min(in.small_window(), 1e4);
      const double Y = 3 + (cap - 3) * u01(rng) + 1e-9;
      const int r = rd(rng);
      const auto s = check_log_weighted_inverse_sine(in, Y, r);
      rec.record(s, [&] { return in.describe() + " Y=" + std::to_string(Y) + " r=" + std::to_string(r); });
    }
    rep.entries.push_back(rec.take());
  }
  {
    detail::AuditRecorder a("shifted_log_sum"), b("shifted_log_over_m_sum");
    for (std::uint64_t i = 0; i < N; ++i) {
      const double X = std::pow(10.0, -1 + 5 * u01(rng));
      const double rho = X * (1e-6 + (1 - 2e-6) * u01(rng));
      const int r = rd(rng) + (u01(rng) < 0.2 ? 1 : 0);
      const auto [s1, s2] = check_shifted_log_sums(X, rho, r);
      auto d = [&] { return "X=" + std::to_string(X) + " rho=" + std::to_string(rho) + " r=" + std::to_string(r); };
      a.record(s1, d);
      b.record(s2, d);
    }
    rep.entries.push_back(a.take());
    rep.entries.push_back(b.take());
  }
  {
    detail::AuditRecorder rec("abel_summation");
    std::normal_distribution<double> nd(0, 1);
    std::exponential_distribution<double> ed(1);
    std::uniform_int_distribution<int> len(1, 200);
    for (std::uint64_t i = 0; i < N; ++i) {
      const int L = len(rng);
      std::vector<std::complex<double>> a(L);
      std::vector<double> phi(L);
      double level = u01(rng) < 0.3 ? 0.0 : ed(rng);
      for (int n = 0; n < L; ++n) {
        a[n] = {nd(rng), nd(rng)};
        if (u01(rng) < 0.5) level += ed(rng);
        phi[n] = level;
      }
      const double phi_b = level + (u01(rng) < 0.5 ? 0.0 : ed(rng));
      rec.record(check_abel(a, phi, phi_b), [&] { return "length " + std::to_string(L); });
    }
    rep.entries.push_back(rec.take());
  }
  {
    detail::AuditRecorder a("squarefree_gcd_reciprocal_sum"), b("squarefree_gcd_log_sum");
    std::uniform_int_distribution<std::uint64_t> qd(1, 5000);
    for (std::uint64_t i = 0; i < N; ++i) {
      const std::uint64_t q = qd(rng);
      const double V = std::min<double>(std::pow(10.0, 4.3 * u01(rng)), static_cast<double>(t.n_max()));
      const auto [s1, s2] = check_squarefree_gcd_sums(q, std::max(V, 1.0), t);
      auto d = [&] { return "q=" + std::to_string(q) + " V=" + std::to_string(V); };
      a.record(s1, d);
      b.record(s2, d);
    }
    rep.entries.push_back(a.take());
    rep.entries.push_back(b.take());
  }
  {
    const SquareSums sq(t);
    detail::AuditRecorder a("mean_square_mobius"), b("mean_square_mangoldt");
    const double M_hi = static_cast<double>(t.n_max()) / 2;
    for (std::uint64_t i = 0; i < N; ++i) {
      const double M = opt.mean_square_min_M * std::pow(M_hi / opt.mean_square_min_M, u01(rng));
      auto d = [&] { return "M=" + std::to_string(M); };
      a.record({sq.mu2_window(M), (6 / (std::numbers::pi * std::numbers::pi) + opt.mean_square_epsilon) * M}, d);
      b.record({sq.lambda2_window(M), (1 + opt.mean_square_epsilon) * M * std::log(M)}, d);
    }
    rep.entries.push_back(a.take());
    rep.entries.push_back(b.take());
  }
  {
    detail::AuditRecorder rec("dyadic_sum_vs_integral");
    for (std::uint64_t i = 0; i < N; ++i) {
      const double x = std::pow(10.0, 3 + 9 * u01(rng));
      const double A = std::pow(x, 0.9 * u01(rng)) * (1 + 1e-9);
      const double B = A + (x - A) * u01(rng) * (1 - 1e-9);
      const double c = 0.1 + 10 * u01(rng), k = 10 * u01(rng);
      const int kind = static_cast<int>(4 * u01(rng));
      std::function<double(double)> phi;
      switch (kind) {
        case 0: phi = [c, k](double t) { return c * std::exp(-k * t); }; break;
        case 1: phi = [c, k](double t) { return c / std::pow(1 + k * t, 2); }; break;
        case 2: phi = [c](double) { return c; }; break;
        default: phi = [c, k](double t) { return c / (t + 0.01 + k); }; break;
      }
      rec.record(check_dyadic_sum(A, B, x, phi), [&] {
        return "x=" + std::to_string(x) + " A=" + std::to_string(A) + " B=" + std::to_string(B) +
               " kind=" + std::to_string(kind);
      });
    }
    rep.entries.push_back(rec.take());
  }
  return rep;
}

}  // namespace expsum
