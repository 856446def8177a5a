#pragma once

// The sieve-weighted Vaughan identities
//
//   Λ = h*log − 1*h*Λ_{<=V} + (1*θ)(1*λ) * Λ_{>V} + Λ_{<=V}
//   μ = h     − 1*h*μ_{<=V} + (1*θ)(1*λ) * μ_{>V} + μ_{<=V}
//
// materialized term by term on [1, n_max]. Each term is built by its own
// divisor-sum loops; no intermediate is shared between terms, so a zero
// residual is a genuine cross-check rather than a tautology.

#include "expsum/arith_tables.hpp"
#include "expsum/convolution.hpp"
#include "expsum/log_vector.hpp"
#include "expsum/numeric_types.hpp"
#include "expsum/weights.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace expsum {

using LogReal = LogVector<Real50>;

struct MangoldtDecomposition {
  std::uint64_t n_max = 0;
  ArithFunction<LogReal> term1;  // (h*log)(n)
  ArithFunction<LogReal> term2;  // (1*h*Λ_{<=V})(n)
  ArithFunction<LogReal> term3;  // ((1*θ)(1*λ) * Λ_{>V})(n)
  ArithFunction<LogReal> term4;  // Λ_{<=V}(n)

  LogReal combined(std::uint64_t n) const {
    LogReal v = term1.at(n);
    v -= term2.at(n);
    v += term3.at(n);
    v += term4.at(n);
    return v;
  }
};

struct MobiusDecomposition {
  std::uint64_t n_max = 0;
  ArithFunction<Real50> term1;  // h(n)
  ArithFunction<Real50> term2;  // (1*h*μ_{<=V})(n)
  ArithFunction<Real50> term3;  // ((1*θ)(1*λ) * μ_{>V})(n)
  ArithFunction<Real50> term4;  // μ_{<=V}(n)

  Real50 combined(std::uint64_t n) const {
    return term1.at(n) - term2.at(n) + term3.at(n) + term4.at(n);
  }
};

struct ResidualReport {
  WeightConfig config;
  std::uint64_t n_max = 0;
  Real50 max_abs_residual = 0;
  std::uint64_t argmax_n = 1;
};

namespace detail {

inline void check_identity_range(std::uint64_t n_max, const ArithTables& t) {
  if (n_max < 1) throw std::invalid_argument("decompose: n_max must be >= 1");
  if (n_max > t.n_max())
    throw std::out_of_range("decompose: n_max " + std::to_string(n_max) +
                            " exceeds table range " + std::to_string(t.n_max()));
}

// n <= V for integer n and real V.
inline bool at_most(std::uint64_t n, double V) { return static_cast<double>(n) <= V; }

/// (1*h)(k) for k <= n_max.
inline ArithFunction<Real50> one_star_h(const WeightSystem& ws, std::uint64_t n_max) {
  ArithFunction<Real50> out(n_max + 1, Real50(0));
  for (const auto& [d, hd] : ws.h_table())
    for (std::uint64_t k = d; k <= n_max; k += d) out[k] += hd;
  return out;
}

/// (1*θ)(k)·(1*λ)(k) for k <= n_max.
inline ArithFunction<Real50> type_two_factor(const WeightSystem& ws, const ArithTables& t,
                                             std::uint64_t n_max) {
  ArithFunction<Real50> theta_sum(n_max + 1, Real50(0));
  for (std::uint64_t d = 1; d <= n_max; ++d) {
    const Real50 th = ws.theta(d, t);
    if (th == 0) continue;
    for (std::uint64_t k = d; k <= n_max; k += d) theta_sum[k] += th;
  }
  ArithFunction<BigRational> lambda_sum(n_max + 1, BigRational(0));
  const auto& lam = ws.selberg().table();
  for (std::uint64_t d = 1; d < lam.size() && d <= n_max; ++d) {
    if (lam[d] == 0) continue;
    for (std::uint64_t k = d; k <= n_max; k += d) lambda_sum[k] += lam[d];
  }
  ArithFunction<Real50> out(n_max + 1, Real50(0));
  for (std::uint64_t k = 1; k <= n_max; ++k)
    if (theta_sum[k] != 0 && lambda_sum[k] != 0) out[k] = theta_sum[k] * Real50(lambda_sum[k]);
  return out;
}

}  // namespace detail

inline MangoldtDecomposition decompose_mangoldt(std::uint64_t n_max, const WeightSystem& ws,
                                                const ArithTables& t) {
  detail::check_identity_range(n_max, t);
  const double V = ws.config().V;
  MangoldtDecomposition dec;
  dec.n_max = n_max;
  dec.term1.assign(n_max + 1, LogReal{});
  dec.term2.assign(n_max + 1, LogReal{});
  dec.term3.assign(n_max + 1, LogReal{});
  dec.term4.assign(n_max + 1, LogReal{});

  // term1: Σ_{d m = n} h(d) log m
  for (const auto& [d, hd] : ws.h_table()) {
    for (std::uint64_t m = 2; d * m <= n_max; ++m) {
      for (const auto& [p, e] : t.factorize(m)) dec.term1[d * m].add(p, hd * e);
    }
  }

  // term2: Σ_{ℓ k = n, ℓ <= V} Λ(ℓ) (1*h)(k)
  const auto h1 = detail::one_star_h(ws, n_max);
  for (std::uint64_t l = 2; l <= n_max && detail::at_most(l, V); ++l) {
    const auto p = t.mangoldt_base(l);
    if (p == 0) continue;
    for (std::uint64_t k = 1; l * k <= n_max; ++k)
      if (h1[k] != 0) dec.term2[l * k].add(p, h1[k]);
  }

  // term3: Σ_{m k = n, m > V} Λ(m) (1*θ)(k)(1*λ)(k)
  const auto factor = detail::type_two_factor(ws, t, n_max);
  for (std::uint64_t m = 2; m <= n_max; ++m) {
    const auto p = t.mangoldt_base(m);
    if (p == 0 || detail::at_most(m, V)) continue;
    for (std::uint64_t k = 1; m * k <= n_max; ++k)
      if (factor[k] != 0) dec.term3[m * k].add(p, factor[k]);
  }

  // term4: Λ_{<=V}
  for (std::uint64_t n = 2; n <= n_max && detail::at_most(n, V); ++n) {
    const auto p = t.mangoldt_base(n);
    if (p != 0) dec.term4[n].add(p, Real50(1));
  }
  return dec;
}

inline MobiusDecomposition decompose_mobius(std::uint64_t n_max, const WeightSystem& ws,
                                            const ArithTables& t) {
  detail::check_identity_range(n_max, t);
  const double V = ws.config().V;
  MobiusDecomposition dec;
  dec.n_max = n_max;
  dec.term1.assign(n_max + 1, Real50(0));
  dec.term2.assign(n_max + 1, Real50(0));
  dec.term3.assign(n_max + 1, Real50(0));
  dec.term4.assign(n_max + 1, Real50(0));

  for (const auto& [d, hd] : ws.h_table())
    if (d <= n_max) dec.term1[d] = hd;

  const auto h1 = detail::one_star_h(ws, n_max);
  for (std::uint64_t l = 1; l <= n_max && detail::at_most(l, V); ++l) {
    const int mu = t.mobius(l);
    if (mu == 0) continue;
    for (std::uint64_t k = 1; l * k <= n_max; ++k)
      if (h1[k] != 0) dec.term2[l * k] += mu * h1[k];
  }

  const auto factor = detail::type_two_factor(ws, t, n_max);
  for (std::uint64_t m = 1; m <= n_max; ++m) {
    const int mu = t.mobius(m);
    if (mu == 0 || detail::at_most(m, V)) continue;
    for (std::uint64_t k = 1; m * k <= n_max; ++k)
      if (factor[k] != 0) dec.term3[m * k] += mu * factor[k];
  }

  for (std::uint64_t n = 1; n <= n_max && detail::at_most(n, V); ++n) dec.term4[n] = t.mobius(n);
  return dec;
}

/// max_n max_p |coefficient of log p in (combined(n) − Λ(n))|.
inline ResidualReport mangoldt_residual(const MangoldtDecomposition& dec, const WeightSystem& ws,
                                        const ArithTables& t) {
  ResidualReport rep;
  rep.config = ws.config();
  rep.n_max = dec.n_max;
  for (std::uint64_t n = 1; n <= dec.n_max; ++n) {
    LogReal r = dec.combined(n);
    r -= LogReal::mangoldt(n, t);
    const Real50 m = r.max_abs_coefficient();
    if (m > rep.max_abs_residual) {
      rep.max_abs_residual = m;
      rep.argmax_n = n;
    }
  }
  return rep;
}

inline ResidualReport mobius_residual(const MobiusDecomposition& dec, const WeightSystem& ws,
                                      const ArithTables& t) {
  ResidualReport rep;
  rep.config = ws.config();
  rep.n_max = dec.n_max;
  for (std::uint64_t n = 1; n <= dec.n_max; ++n) {
    const Real50 m = abs(dec.combined(n) - Real50(t.mobius(n)));
    if (m > rep.max_abs_residual) {
      rep.max_abs_residual = m;
      rep.argmax_n = n;
    }
  }
  return rep;
}

}  // namespace expsum
