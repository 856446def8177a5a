#pragma once

// Rational approximations α = a/q + δ/x. All continued-fraction work runs on
// the exact rational α; a double α is first converted exactly (it is a dyadic
// rational), so the only inexactness is the caller's 1e-15-ish input
// resolution.

#include "expsum/numeric_types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace expsum {

struct RationalApprox {
  BigRational alpha;        // the approximated number, exact
  long long a = 0;
  std::uint64_t q = 1;
  BigRational delta_exact;  // (α − a/q)·x
  double delta = 0;
  double delta0 = 1;        // max(1, |δ|/4)
  double Q = 1;
  double x = 1;

  BigRational anchor() const { return BigRational(a, static_cast<long long>(q)); }
};

inline double delta0_of(double delta) { return std::max(1.0, std::abs(delta) / 4); }

/// α = a/q + δ/x, exactly.
inline BigRational alpha_from(long long a, std::uint64_t q, double delta, double x) {
  if (q == 0) throw std::invalid_argument("alpha_from: q must be >= 1");
  return BigRational(a, static_cast<long long>(q)) + BigRational(delta) / BigRational(x);
}

struct Convergent {
  BigInt p;
  BigInt q;
};

/// Convergents p_k/q_k of the continued fraction of α.
inline std::vector<Convergent> convergents(const BigRational& alpha, std::size_t max_terms = 200) {
  std::vector<Convergent> out;
  BigInt num = boost::multiprecision::numerator(alpha);
  BigInt den = boost::multiprecision::denominator(alpha);
  BigInt p_prev = 1, q_prev = 0, p_prev2 = 0, q_prev2 = 1;
  while (den != 0 && out.size() < max_terms) {
    // floor division for possibly negative numerators
    BigInt a = num / den;
    if (num % den != 0 && num < 0) a -= 1;
    const BigInt p = a * p_prev + p_prev2;
    const BigInt q = a * q_prev + q_prev2;
    out.push_back({p, q});
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
    const BigInt rem = num - a * den;
    num = den;
    den = rem;
  }
  return out;
}

namespace detail {

inline long long to_ll(const BigInt& v, const char* what) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::overflow_error(std::string(what) + ": numerator does not fit in 64 bits");
  return v.convert_to<long long>();
}

inline BigRational abs_rational(const BigRational& r) { return r < 0 ? BigRational(-r) : r; }

inline RationalApprox make_approx(const BigRational& alpha, const BigInt& p, const BigInt& q,
                                  double Q, double x) {
  RationalApprox r;
  r.alpha = alpha;
  r.a = to_ll(p, "rational approximation");
  r.q = q.convert_to<std::uint64_t>();
  r.delta_exact = (alpha - BigRational(p, q)) * BigRational(x);
  r.delta = to_double(r.delta_exact);
  r.delta0 = delta0_of(r.delta);
  r.Q = Q;
  r.x = x;
  return r;
}

}  // namespace detail

/// |α − a/q| <= 1/(qQ), gcd(a, q) = 1, q <= Q, decided exactly.
inline bool satisfies_dirichlet(const RationalApprox& r) {
  if (r.q < 1 || static_cast<double>(r.q) > r.Q) return false;
  if (std::gcd(static_cast<unsigned long long>(r.a < 0 ? -r.a : r.a), r.q) != 1) return false;
  const BigRational gap = detail::abs_rational(r.alpha - r.anchor());
  return gap * BigRational(static_cast<long long>(r.q)) * BigRational(r.Q) <= 1;
}

/// The last convergent of α with denominator <= Q.
inline RationalApprox dirichlet_approx(const BigRational& alpha, double Q, double x) {
  if (!(Q >= 1)) throw std::invalid_argument("dirichlet_approx: Q must be >= 1");
  if (!(x > 0)) throw std::invalid_argument("dirichlet_approx: x must be > 0");
  const BigRational cap(Q);
  std::optional<Convergent> best;
  for (const auto& c : convergents(alpha)) {
    if (BigRational(c.q) > cap) break;
    best = c;
  }
  if (!best) throw std::logic_error("dirichlet_approx: no convergent with q <= Q");
  auto r = detail::make_approx(alpha, best->p, best->q, Q, x);
  if (!satisfies_dirichlet(r))
    throw std::logic_error("dirichlet_approx: convergent " + std::to_string(r.a) + "/" +
                           std::to_string(r.q) + " violates |alpha - a/q| <= 1/(qQ)");
  return r;
}

inline RationalApprox dirichlet_approx(double alpha, double Q, double x) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("dirichlet_approx: alpha must be finite");
  return dirichlet_approx(BigRational(alpha), Q, x);
}

/// A second approximation a'/q' of the same α with y/(2|δ|q) <= q' <= y/(|δ|q) = Q'
/// and |α − a'/q'| <= 1/(q'Q'), where y = approx.x.
inline RationalApprox alternate_approx(const RationalApprox& approx,
                                       std::uint64_t exhaustive_limit = 50'000'000) {
  if (approx.delta_exact == 0) throw std::invalid_argument("alternate_approx: requires delta != 0");
  const BigRational y(approx.x);
  const BigRational qprime_cap =
      y / (detail::abs_rational(approx.delta_exact) * BigRational(static_cast<long long>(approx.q)));
  const BigRational lo = qprime_cap / 2;
  const double cap_d = to_double(qprime_cap);

  auto acceptable = [&](const BigInt& p, const BigInt& q) {
    const BigRational qr(q);
    if (qr < lo || qr > qprime_cap) return false;
    if (boost::multiprecision::gcd(p, q) != 1) return false;
    return detail::abs_rational(approx.alpha - BigRational(p, q)) * qr * qprime_cap <= 1;
  };

  std::optional<Convergent> best;
  auto consider = [&](const BigInt& p, const BigInt& q) {
    if (acceptable(p, q) && (!best || q > best->q)) best = Convergent{p, q};
  };

  // Convergents and the semiconvergents between consecutive convergents.
  const auto cs = convergents(approx.alpha);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    consider(cs[k].p, cs[k].q);
    if (k + 1 < cs.size()) {
      const BigInt p_prev = k == 0 ? BigInt(1) : cs[k - 1].p;
      const BigInt q_prev = k == 0 ? BigInt(0) : cs[k - 1].q;
      // q_{k+1} = a_{k+1} q_k + q_{k-1}
      const BigInt steps = (cs[k + 1].q - q_prev) / cs[k].q;
      for (BigInt j = 1; j < steps; ++j) {
        const BigInt q = q_prev + j * cs[k].q;
        if (BigRational(q) > qprime_cap) break;
        consider(p_prev + j * cs[k].p, q);
      }
    }
    if (BigRational(cs[k].q) > qprime_cap) break;
  }

  if (!best) {
    // Exhaustive scan of the denominator window.
    const auto q_lo = static_cast<std::uint64_t>(std::ceil(to_double(lo)));
    const auto q_hi = static_cast<std::uint64_t>(std::floor(cap_d));
    if (q_hi >= q_lo && q_hi - q_lo <= exhaustive_limit) {
      for (std::uint64_t q = q_hi; q >= std::max<std::uint64_t>(q_lo, 1); --q) {
        const BigRational scaled = approx.alpha * BigRational(static_cast<long long>(q));
        BigInt p = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
        for (BigInt cand : {BigInt(p - 1), p, BigInt(p + 1)}) {
          if (acceptable(cand, BigInt(q))) {
            best = Convergent{cand, BigInt(q)};
            break;
          }
        }
        if (best || q == 1) break;
      }
    }
  }
  if (!best)
    throw std::logic_error("alternate_approx: no fraction found in the denominator window [" +
                           std::to_string(to_double(lo)) + ", " + std::to_string(cap_d) + "]");
  return detail::make_approx(approx.alpha, best->p, best->q, cap_d, approx.x);
}

struct UCoordinates {
  double u = 0;
  double u0 = 0;
  bool in_range = true;  // u <= 2/5 − η
};

/// u = log(δ₀q)/log x, u0 = log⁺(δ₀/q)/log x.
inline UCoordinates u_coordinates(double q, double delta0, double x, double eta) {
  if (!(x > 1)) throw std::invalid_argument("u_coordinates: x must be > 1");
  const double lx = std::log(x);
  UCoordinates c;
  c.u = std::log(delta0 * q) / lx;
  c.u0 = std::max(std::log(delta0 / q), 0.0) / lx;
  c.in_range = c.u <= 2.0 / 5 - eta;
  if (c.u0 < 0 || c.u0 > c.u + 1e-15)
    throw std::logic_error("u_coordinates: u0 outside [0, u]");
  return c;
}

inline UCoordinates u_coordinates(const RationalApprox& r, double eta) {
  return u_coordinates(static_cast<double>(r.q), r.delta0, r.x, eta);
}

}  // namespace expsum
