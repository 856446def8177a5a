#pragma once

// Sieve weights feeding the weighted Vaughan identity:
//   λ(d)  Selberg-type weights supported on d <= R, (d, q) = 1
//   θ'(d) Barban-Vehov weights, μ(d) tapered log-linearly on (U, U1]
//   θ(d)  = μ(d) - θ'(d)
//   h(d)  = Σ_{[d1,d2] = d} λ(d1) θ'(d2), supported on [1, U1·R]
//
// λ is rational and kept exact. θ' is a ratio of logarithms on the ramp, so
// θ' and h are carried in 50-digit floating point; the ramp also has an exact
// log-ratio form (RampWeight) for identities where the logs cancel.

#include "expsum/arith_tables.hpp"
#include "expsum/numeric_types.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace expsum {

struct WeightConfig {
  double U = 2;
  double U1 = 4;
  double R = 3;
  double V = 5;
  std::uint64_t q = 1;
  double eta = 1.0 / 15;
  // Classical Vaughan degenerate case: U1 == U and R == 1 are allowed.
  bool classic = false;

  std::uint64_t floor_R() const { return static_cast<std::uint64_t>(std::floor(R)); }
  std::uint64_t floor_U() const { return static_cast<std::uint64_t>(std::floor(U)); }
  std::uint64_t floor_U1() const { return static_cast<std::uint64_t>(std::floor(U1)); }
  std::uint64_t floor_V() const { return static_cast<std::uint64_t>(std::floor(V)); }
  /// Largest d in supp(h).
  std::uint64_t h_support_max() const {
    return static_cast<std::uint64_t>(std::floor(U1 * R));
  }

  void validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("WeightConfig: " + msg); };
    if (q < 1) fail("q must be >= 1");
    if (!(eta > 0 && eta <= 0.1)) fail("eta must lie in (0, 1/10]");
    if (!(V >= 1)) fail("V must be >= 1");
    if (classic) {
      if (!(U >= 1)) fail("U must be >= 1");
      if (U1 != U) fail("classic mode requires U1 == U");
      if (R != 1) fail("classic mode requires R == 1");
      return;
    }
    if (!(U > 1 && U < U1)) fail("need 1 < U < U1");
    if (!(R > 1)) fail("need R > 1");
  }

  friend bool operator==(const WeightConfig&, const WeightConfig&) = default;
};

inline std::string describe(const WeightConfig& c) {
  std::ostringstream os;
  os << "(U=" << c.U << ", U1=" << c.U1 << ", R=" << c.R << ", V=" << c.V << ", q=" << c.q
     << (c.classic ? ", classic" : "") << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// G_ℓ(x) = Σ_{r <= x, (r, ℓ) = 1} μ²(r)/φ(r)

inline BigRational g_series(std::uint64_t l, double x, const ArithTables& t) {
  if (l < 1) throw std::invalid_argument("g_series: l must be >= 1");
  if (!(x >= 0)) throw std::invalid_argument("g_series: x must be >= 0");
  const auto top = static_cast<std::uint64_t>(std::floor(x));
  if (top > t.n_max())
    throw std::out_of_range("g_series: x = " + std::to_string(x) + " exceeds table range " +
                            std::to_string(t.n_max()));
  BigRational sum = 0;
  for (std::uint64_t r = 1; r <= top; ++r) {
    if (t.mobius(r) == 0 || std::gcd(r, l) != 1) continue;
    sum += BigRational(1, t.totient(r));
  }
  return sum;
}

/// Memoized G_ℓ(x), keyed by (ℓ, ⌊x⌋) since G is a step function of x.
class GSeries {
 public:
  explicit GSeries(const ArithTables& t) : tables_(&t) {}

  const BigRational& operator()(std::uint64_t l, double x) {
    const auto key = std::make_pair(l, static_cast<std::uint64_t>(std::floor(x)));
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, g_series(l, x, *tables_)).first;
    return it->second;
  }

  std::size_t cache_size() const { return cache_.size(); }

 private:
  const ArithTables* tables_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, BigRational> cache_;
};

// ---------------------------------------------------------------------------
// Selberg weights

/// λ(d) = dμ(d)/φ(d) · G_{qd}(R/d)/G_q(R) · 1_{(d,q)=1}, zero for d > R.
inline BigRational selberg_lambda(std::uint64_t d, const WeightConfig& cfg, const ArithTables& t) {
  if (d < 1) throw std::invalid_argument("selberg_lambda: d must be >= 1");
  if (d == 1) return 1;
  if (d > cfg.floor_R() || std::gcd(d, cfg.q) != 1) return 0;
  const int mu = t.mobius(d);
  if (mu == 0) return 0;
  const BigRational gq = g_series(cfg.q, cfg.R, t);
  const BigRational gqd = g_series(cfg.q * d, cfg.R / static_cast<double>(d), t);
  return BigRational(static_cast<long long>(d) * mu, t.totient(d)) * gqd / gq;
}

/// The materialized λ table on [1, ⌊R⌋] together with G_q(R).
class SelbergWeights {
 public:
  SelbergWeights(std::uint64_t q, double R, const ArithTables& t) : q_(q), R_(R) {
    if (q < 1) throw std::invalid_argument("SelbergWeights: q must be >= 1");
    if (!(R >= 1)) throw std::invalid_argument("SelbergWeights: R must be >= 1");
    const auto top = static_cast<std::uint64_t>(std::floor(R));
    if (top > t.n_max()) throw std::out_of_range("SelbergWeights: R exceeds table range");
    GSeries g(t);
    g_q_r_ = g(q, R);
    lambda_.assign(top + 1, BigRational(0));
    lambda_[1] = 1;
    for (std::uint64_t d = 2; d <= top; ++d) {
      const int mu = t.mobius(d);
      if (mu == 0 || std::gcd(d, q) != 1) continue;
      lambda_[d] = BigRational(static_cast<long long>(d) * mu, t.totient(d)) *
                   g(q * d, R / static_cast<double>(d)) / g_q_r_;
    }
  }

  std::uint64_t q() const { return q_; }
  double R() const { return R_; }
  std::uint64_t support_max() const { return lambda_.size() - 1; }
  const BigRational& g_q_of_R() const { return g_q_r_; }

  BigRational lambda(std::uint64_t d) const {
    return d < lambda_.size() ? lambda_[d] : BigRational(0);
  }
  /// Table indexed by d, slot 0 unused.
  const std::vector<BigRational>& table() const { return lambda_; }

  /// (1 * λ)(n) = Σ_{d | n} λ(d), exact.
  BigRational divisor_sum(std::uint64_t n) const {
    BigRational s = 0;
    for (std::uint64_t d = 1; d < lambda_.size() && d <= n; ++d)
      if (n % d == 0) s += lambda_[d];
    return s;
  }

  BigRational max_abs_lambda() const {
    BigRational best = 0;
    for (std::size_t d = 1; d < lambda_.size(); ++d) best = std::max(best, BigRational(abs(lambda_[d])));
    return best;
  }

 private:
  std::uint64_t q_;
  double R_;
  BigRational g_q_r_;
  std::vector<BigRational> lambda_;
};

// ---------------------------------------------------------------------------
// Barban-Vehov weights

enum class BarbanVehovKind { theta, theta_prime };

/// A Barban-Vehov weight in exact log-ratio form:
///   value = mu                                        (branch full)
///   value = mu · log(log_arg) / log(log_base)         (branch ramp)
///   value = 0                                         (branch zero)
struct RampWeight {
  enum class Branch { full, ramp, zero };

  int mu = 0;
  Branch branch = Branch::zero;
  BigRational log_arg = 1;
  BigRational log_base = 1;

  Real50 value() const {
    switch (branch) {
      case Branch::full: return Real50(mu);
      case Branch::zero: return Real50(0);
      case Branch::ramp: break;
    }
    return Real50(mu) * log(Real50(log_arg)) / log(Real50(log_base));
  }
};

/// θ'(d) = μ(d)·{1, log(U1/d)/log(U1/U), 0} and θ(d) = μ(d)·{0, log(d/U)/log(U1/U), 1}
/// on d <= U, U < d <= U1, d > U1 respectively.
inline RampWeight barban_vehov(std::uint64_t d, const WeightConfig& cfg, BarbanVehovKind which) {
  if (d < 1) throw std::invalid_argument("barban_vehov: d must be >= 1");
  using Branch = RampWeight::Branch;
  RampWeight w;
  w.mu = mobius_of(factorize_trial(d));
  const auto dd = static_cast<double>(d);
  const bool low = dd <= cfg.U;
  const bool high = dd > cfg.U1;
  if (w.mu == 0) return w;
  if (which == BarbanVehovKind::theta_prime) {
    w.branch = low ? Branch::full : (high ? Branch::zero : Branch::ramp);
  } else {
    w.branch = low ? Branch::zero : (high ? Branch::full : Branch::ramp);
  }
  if (w.branch == Branch::ramp) {
    const BigRational u(cfg.U), u1(cfg.U1), bd(static_cast<long long>(d));
    w.log_base = u1 / u;
    w.log_arg = (which == BarbanVehovKind::theta_prime) ? u1 / bd : bd / u;
  }
  return w;
}

/// θ(d) + θ'(d) == μ(d), decided exactly: on the ramp the two log arguments
/// must multiply to the common base.
inline bool barban_vehov_sum_is_mobius(std::uint64_t d, const WeightConfig& cfg) {
  using Branch = RampWeight::Branch;
  const auto th = barban_vehov(d, cfg, BarbanVehovKind::theta);
  const auto thp = barban_vehov(d, cfg, BarbanVehovKind::theta_prime);
  if (th.mu == 0) return th.branch == Branch::zero && thp.branch == Branch::zero;
  if (th.branch == Branch::ramp || thp.branch == Branch::ramp) {
    return th.branch == Branch::ramp && thp.branch == Branch::ramp &&
           th.log_base == thp.log_base && th.log_arg * thp.log_arg == th.log_base;
  }
  const int a = th.branch == Branch::full ? th.mu : 0;
  const int b = thp.branch == Branch::full ? thp.mu : 0;
  return a + b == th.mu;
}

// ---------------------------------------------------------------------------
// Combined weight h

/// h(d) = Σ_{[d1,d2] = d} λ(d1) θ'(d2), materialized sparsely on [1, ⌊U1·R⌋]
/// by enumerating d1 <= R squarefree coprime to q and d2 <= U1 squarefree.
inline std::map<std::uint64_t, Real50> combined_h(const SelbergWeights& sw,
                                                  const std::vector<Real50>& theta_prime,
                                                  std::uint64_t support_max) {
  std::map<std::uint64_t, Real50> h;
  for (std::uint64_t d1 = 1; d1 <= sw.support_max(); ++d1) {
    const BigRational& l = sw.table()[d1];
    if (l == 0) continue;
    const Real50 lr(l);
    for (std::uint64_t d2 = 1; d2 < theta_prime.size(); ++d2) {
      if (theta_prime[d2] == 0) continue;
      const std::uint64_t m = d1 / std::gcd(d1, d2) * d2;
      if (m > support_max) continue;
      h[m] += lr * theta_prime[d2];
    }
  }
  for (auto it = h.begin(); it != h.end();) it = (it->second == 0) ? h.erase(it) : std::next(it);
  return h;
}

/// Immutable bundle of every weight for one configuration.
class WeightSystem {
 public:
  WeightSystem(const WeightConfig& cfg, const ArithTables& t)
      : cfg_(cfg), selberg_(checked_config(cfg, t).q, cfg.R, t) {
    const auto u1 = cfg.floor_U1();
    theta_prime_.assign(u1 + 1, Real50(0));
    theta_prime_ramp_.resize(u1 + 1);
    for (std::uint64_t d = 1; d <= u1; ++d) {
      theta_prime_ramp_[d] = barban_vehov(d, cfg, BarbanVehovKind::theta_prime);
      theta_prime_[d] = theta_prime_ramp_[d].value();
    }
    h_ = combined_h(selberg_, theta_prime_, cfg.h_support_max());
    h_double_.reserve(h_.size());
    for (const auto& [d, v] : h_) h_double_.emplace_back(d, to_double(v));
  }

  const WeightConfig& config() const { return cfg_; }
  const SelbergWeights& selberg() const { return selberg_; }
  const BigRational& g_q_of_R() const { return selberg_.g_q_of_R(); }

  BigRational lambda(std::uint64_t d) const { return selberg_.lambda(d); }

  Real50 theta_prime(std::uint64_t d) const {
    return d < theta_prime_.size() ? theta_prime_[d] : Real50(0);
  }
  /// θ(d) = μ(d) - θ'(d); needs μ(d) from the tables beyond U1.
  Real50 theta(std::uint64_t d, const ArithTables& t) const {
    return Real50(t.mobius(d)) - theta_prime(d);
  }
  const std::vector<Real50>& theta_prime_table() const { return theta_prime_; }
  const RampWeight& theta_prime_exact(std::uint64_t d) const { return theta_prime_ramp_.at(d); }

  Real50 h(std::uint64_t d) const {
    const auto it = h_.find(d);
    return it == h_.end() ? Real50(0) : it->second;
  }
  const std::map<std::uint64_t, Real50>& h_table() const { return h_; }
  /// supp(h) with double values, sorted by d.
  const std::vector<std::pair<std::uint64_t, double>>& h_support() const { return h_double_; }

 private:
  static const WeightConfig& checked_config(const WeightConfig& cfg, const ArithTables& t) {
    cfg.validate();
    if (cfg.h_support_max() > t.n_max())
      throw std::out_of_range("WeightSystem: U1*R = " + std::to_string(cfg.U1 * cfg.R) +
                              " exceeds table range " + std::to_string(t.n_max()));
    return cfg;
  }

  WeightConfig cfg_;
  SelbergWeights selberg_;
  std::vector<Real50> theta_prime_;
  std::vector<RampWeight> theta_prime_ramp_;
  std::map<std::uint64_t, Real50> h_;
  std::vector<std::pair<std::uint64_t, double>> h_double_;
};

/// The classical Vaughan system: U1 = U, R = 1, so θ' = μ_{<=U} and λ = 1_{d=1}.
inline WeightConfig classic_config(WeightConfig cfg) {
  cfg.U1 = cfg.U;
  cfg.R = 1;
  cfg.classic = true;
  return cfg;
}

inline WeightSystem classic_vaughan_mode(const WeightSystem& ws, const ArithTables& t) {
  return WeightSystem(classic_config(ws.config()), t);
}

/// Row n of the factorization table: (1*h)(n) against (1*θ')(n)·(1*λ)(n).
struct HFactorizationRow {
  std::uint64_t n;
  Real50 one_star_h;
  Real50 product;
};

/// Both sides of 1*h = (1*θ')(1*λ) for n in [1, n_max], each from its own divisor loop.
inline std::vector<HFactorizationRow> h_factorization_table(const WeightSystem& ws,
                                                            std::uint64_t n_max) {
  std::vector<HFactorizationRow> rows;
  rows.reserve(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    Real50 lhs = 0, tp = 0;
    BigRational lam = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
      if (n % d != 0) continue;
      const std::uint64_t e = n / d;
      lhs += ws.h(d);
      tp += ws.theta_prime(d);
      lam += ws.lambda(d);
      if (e != d) {
        lhs += ws.h(e);
        tp += ws.theta_prime(e);
        lam += ws.lambda(e);
      }
    }
    rows.push_back({n, lhs, tp * Real50(lam)});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Exact identities of the Selberg weights

struct ExactCheck {
  std::uint64_t argument = 0;
  BigRational lhs;
  BigRational rhs;
  bool holds() const { return lhs == rhs; }
};

/// Σ_{d ≡ 0 mod r} λ(d)/d against μ(r)/(φ(r) G_q(R)) for r <= R, (r,q) = 1, else 0.
inline ExactCheck verify_multiple_sum(std::uint64_t r, const SelbergWeights& sw, const ArithTables& t) {
  if (r < 1) throw std::invalid_argument("verify_multiple_sum: r must be >= 1");
  ExactCheck c;
  c.argument = r;
  c.lhs = 0;
  for (std::uint64_t d = r; d <= sw.support_max(); d += r)
    c.lhs += sw.lambda(d) / BigRational(static_cast<long long>(d));
  if (r <= sw.support_max() && std::gcd(r, sw.q()) == 1) {
    c.rhs = BigRational(t.mobius(r)) / (BigRational(t.totient(r)) * sw.g_q_of_R());
  } else {
    c.rhs = 0;
  }
  return c;
}

/// G_q(R) Σ_{d|n} λ(d) against Σ_{r <= R, (r,q)=1} μ(r) c_r(n)/φ(r).
inline ExactCheck verify_ramanujan_expansion(std::uint64_t n, const SelbergWeights& sw, const ArithTables& t) {
  if (n < 1) throw std::invalid_argument("verify_ramanujan_expansion: n must be >= 1");
  ExactCheck c;
  c.argument = n;
  c.lhs = sw.g_q_of_R() * sw.divisor_sum(n);
  c.rhs = 0;
  for (std::uint64_t r = 1; r <= sw.support_max(); ++r) {
    const int mu = t.mobius(r);
    if (mu == 0 || std::gcd(r, sw.q()) != 1) continue;
    c.rhs += BigRational(mu * ramanujan_sum(r, n, t), static_cast<long long>(t.totient(r)));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Logarithmically weighted Möbius partial sums

// Explicit bounds on the logarithmic Möbius sums, valid for all X >= 1:
//   |m̌(X) − 1| <= c1/log X,  |m̌(X)| <= c1',  |m̌̌(X) − 2 log X + 2γ| <= c2/log X,  |m̌̌(X)| <= 2 log X.
inline constexpr double kMobiusLogC1 = 0.213;
inline constexpr double kMobiusLogC1Abs = 1.00303;
inline constexpr double kMobiusLogC2 = 0.2062;
inline constexpr double kMobiusLogC2Abs = 2;
inline constexpr double kEulerGamma = 0.57721566490153286;

/// m̌_v(X) (power 1) or m̌̌_v(X) (power 2):  Σ_{n <= X, (n,v)=1} μ(n)/n · log^power(X/n),
/// accumulated with Neumaier compensation in long double.
inline double mobius_partial(std::uint64_t v, double X, int power, const ArithTables& t) {
  if (power != 1 && power != 2) throw std::invalid_argument("mobius_partial: power must be 1 or 2");
  if (!(X >= 1)) throw std::invalid_argument("mobius_partial: X must be >= 1");
  const auto top = static_cast<std::uint64_t>(std::floor(X));
  if (top > t.n_max()) throw std::out_of_range("mobius_partial: X exceeds table range");
  const long double lx = std::log(static_cast<long double>(X));
  long double sum = 0, comp = 0;
  for (std::uint64_t n = 1; n <= top; ++n) {
    const int mu = t.mobius(n);
    if (mu == 0 || std::gcd(n, v) != 1) continue;
    const long double l = lx - std::log(static_cast<long double>(n));
    const long double term = mu * (power == 1 ? l : l * l) / static_cast<long double>(n);
    const long double s = sum + term;
    comp += (std::fabs(sum) >= std::fabs(term)) ? (sum - s) + term : (term - s) + sum;
    sum = s;
  }
  return static_cast<double>(sum + comp);
}

// ---------------------------------------------------------------------------
// CSV export: d, lambda_num, lambda_den, theta_prime, h

inline void write_weights_csv(std::ostream& os, const WeightSystem& ws) {
  os << "d,lambda_num,lambda_den,theta_prime,h\n";
  const auto top = ws.config().h_support_max();
  for (std::uint64_t d = 1; d <= top; ++d) {
    const BigRational l = ws.lambda(d);
    os << d << ',' << numerator_string(l) << ',' << denominator_string(l) << ','
       << to_decimal_string(ws.theta_prime(d)) << ',' << to_decimal_string(ws.h(d)) << '\n';
  }
}

}  // namespace expsum
