#pragma once

// Exponential sums Σ f(n) e(nα) for f = Λ or μ, evaluated directly and through
// the four pieces of the sieve-weighted Vaughan decomposition:
//
//   S_I1   = Σ_m h(m) Σ_{n<=x/m} log n · e(mnα)           (f = μ: Σ_m h(m) e(mα))
//   S_I2   = Σ_{ℓ<=V} f(ℓ) Σ_m h(m) Σ_{n<=x/(ℓm)} e(ℓmnα)
//   S_II   = Σ_{V<m<=x/U} f(m) Σ_{n<=x/m} (1*θ)(n)(1*λ)(n) e(mnα)
//   S_tail = Σ_{ℓ<=V} f(ℓ) e(ℓα)
//
// with S = S_I1 − S_I2 + S_II + S_tail.

#include "expsum/arith_tables.hpp"
#include "expsum/phase.hpp"
#include "expsum/weights.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace expsum {

struct ExpSumValue {
  std::complex<double> value;
  std::uint64_t n_terms = 0;

  double re() const { return value.real(); }
  double im() const { return value.imag(); }
  double abs() const { return std::abs(value); }
};

/// Neumaier-compensated accumulator for complex values.
class CompensatedSum {
 public:
  void add(std::complex<double> z) {
    add_part(re_, re_c_, z.real());
    add_part(im_, im_c_, z.imag());
    ++n_;
  }
  void add(const CompensatedSum& o) {
    add_part(re_, re_c_, o.re_);
    add_part(re_, re_c_, o.re_c_);
    add_part(im_, im_c_, o.im_);
    add_part(im_, im_c_, o.im_c_);
    n_ += o.n_;
  }
  std::complex<double> value() const { return {re_ + re_c_, im_ + im_c_}; }
  std::uint64_t count() const { return n_; }
  ExpSumValue result() const { return {value(), n_}; }

 private:
  static void add_part(double& sum, double& comp, double v) {
    const double s = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - s) + v : (v - s) + sum;
    sum = s;
  }
  double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
  std::uint64_t n_ = 0;
};

namespace detail {

inline std::uint64_t floor_u64(double v) { return v < 1 ? 0 : static_cast<std::uint64_t>(std::floor(v)); }

inline void check_x(double x, const ArithTables& t, const char* who) {
  if (!(x >= 1)) throw std::invalid_argument(std::string(who) + ": x must be >= 1");
  if (floor_u64(x) > t.n_max())
    throw std::out_of_range(std::string(who) + ": x exceeds table range " + std::to_string(t.n_max()));
}

/// Σ_{n<=N} w(n) e(n·step), with w(n) = 0 terms skipped.
template <class W>
void accumulate_line(CompensatedSum& acc, Phase step, std::uint64_t N, W&& w) {
  Phase p;
  for (std::uint64_t n = 1; n <= N; ++n) {
    p += step;
    const double c = w(n);
    if (c != 0) acc.add(c * p.expi());
  }
}

}  // namespace detail

/// Σ_{n<=x} f(n) e(nα).
inline ExpSumValue direct_sum(ArithFn f, Phase alpha, double x, const ArithTables& t) {
  detail::check_x(x, t, "direct_sum");
  CompensatedSum acc;
  detail::accumulate_line(acc, alpha, detail::floor_u64(x),
                          [&](std::uint64_t n) { return arith_value(f, n, t); });
  return acc.result();
}
inline ExpSumValue direct_sum(ArithFn f, const BigRational& alpha, double x, const ArithTables& t) {
  return direct_sum(f, Phase::of(alpha), x, t);
}
inline ExpSumValue direct_sum(ArithFn f, double alpha, double x, const ArithTables& t) {
  return direct_sum(f, Phase::of(alpha), x, t);
}

/// S_I1 together with its split by whether q divides m.
struct TypeOneSplit {
  ExpSumValue total;
  ExpSumValue q_divides_m;
  ExpSumValue q_not_divides_m;
};

/// Σ_m h(m) Σ_{n<=x/m} log n · e(mnα), split by q | m with q = ws.config().q.
inline TypeOneSplit type_I_1_split(Phase alpha, double x, const WeightSystem& ws, const ArithTables& t) {
  detail::check_x(x, t, "type_I_1");
  const auto N = detail::floor_u64(x);
  std::vector<double> logs(N + 1, 0.0);
  for (std::uint64_t n = 2; n <= N; ++n) logs[n] = std::log(static_cast<double>(n));
  const std::uint64_t q = ws.config().q;
  CompensatedSum div, ndiv;
  for (const auto& [m, hm] : ws.h_support()) {
    if (m > N) break;
    CompensatedSum inner;
    detail::accumulate_line(inner, alpha.times(m), N / m, [&](std::uint64_t n) { return logs[n]; });
    const auto v = inner.value() * hm;
    (m % q == 0 ? div : ndiv).add(v);
  }
  TypeOneSplit s;
  s.q_divides_m = div.result();
  s.q_not_divides_m = ndiv.result();
  CompensatedSum tot = div;
  tot.add(ndiv);
  s.total = tot.result();
  return s;
}

inline ExpSumValue type_I_1(Phase alpha, double x, const WeightSystem& ws, const ArithTables& t) {
  return type_I_1_split(alpha, x, ws, t).total;
}

/// Σ_{m<=x} h(m) e(mα): the first piece when f = μ.
inline ExpSumValue h_sum(Phase alpha, double x, const WeightSystem& ws, const ArithTables& t) {
  detail::check_x(x, t, "h_sum");
  const auto N = detail::floor_u64(x);
  CompensatedSum acc;
  for (const auto& [m, hm] : ws.h_support()) {
    if (m > N) break;
    acc.add(hm * alpha.times(m).expi());
  }
  return acc.result();
}

/// Σ_{ℓ<=V} f0(ℓ) Σ_m h(m) Σ_{n<=x/(ℓm)} e(ℓmnα).
inline ExpSumValue type_I_2(ArithFn f0, Phase alpha, double x, const WeightSystem& ws,
                            const ArithTables& t) {
  detail::check_x(x, t, "type_I_2");
  const auto N = detail::floor_u64(x);
  const auto top_l = std::min<std::uint64_t>(ws.config().floor_V(), N);
  CompensatedSum acc;
  for (std::uint64_t l = 1; l <= top_l; ++l) {
    const double fl = arith_value(f0, l, t);
    if (fl == 0) continue;
    for (const auto& [m, hm] : ws.h_support()) {
      const std::uint64_t lm = l * m;
      if (lm > N) break;
      CompensatedSum inner;
      detail::accumulate_line(inner, alpha.times(lm), N / lm, [](std::uint64_t) { return 1.0; });
      acc.add(fl * hm * inner.value());
    }
  }
  return acc.result();
}

/// (1*θ)(n)·(1*λ)(n) for n <= n_max, in double.
class TypeTwoTable {
 public:
  TypeTwoTable(const WeightSystem& ws, std::uint64_t n_max) : values_(n_max + 1, 0.0) {
    std::vector<double> theta_prime_sum(n_max + 1, 0.0), lambda_sum(n_max + 1, 0.0);
    const auto& tp = ws.theta_prime_table();
    for (std::uint64_t d = 1; d < tp.size() && d <= n_max; ++d) {
      const double v = to_double(tp[d]);
      if (v == 0) continue;
      for (std::uint64_t k = d; k <= n_max; k += d) theta_prime_sum[k] += v;
    }
    const auto& lam = ws.selberg().table();
    for (std::uint64_t d = 1; d < lam.size() && d <= n_max; ++d) {
      if (lam[d] == 0) continue;
      const double v = to_double(lam[d]);
      for (std::uint64_t k = d; k <= n_max; k += d) lambda_sum[k] += v;
    }
    // (1*θ)(n) = [n = 1] − (1*θ')(n)
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      const double one_theta = (n == 1 ? 1.0 : 0.0) - theta_prime_sum[n];
      values_[n] = one_theta * lambda_sum[n];
    }
  }

  std::uint64_t n_max() const { return values_.size() - 1; }
  double operator[](std::uint64_t n) const { return values_[n]; }

 private:
  std::vector<double> values_;
};

/// Σ_{V<m<=x/U} f(m) Σ_{n<=x/m} (1*θ)(n)(1*λ)(n) e(mnα).
inline ExpSumValue type_II(ArithFn f, Phase alpha, double x, const WeightSystem& ws,
                           const ArithTables& t, const TypeTwoTable& factor) {
  detail::check_x(x, t, "type_II");
  const auto N = detail::floor_u64(x);
  const auto m_lo = ws.config().floor_V() + 1;
  const auto m_hi = detail::floor_u64(x / ws.config().U);
  CompensatedSum acc;
  for (std::uint64_t m = m_lo; m <= m_hi; ++m) {
    const double fm = arith_value(f, m, t);
    if (fm == 0) continue;
    const auto top = N / m;
    if (top > factor.n_max()) throw std::out_of_range("type_II: factor table too short");
    CompensatedSum inner;
    detail::accumulate_line(inner, alpha.times(m), top, [&](std::uint64_t n) { return factor[n]; });
    acc.add(fm * inner.value());
  }
  return acc.result();
}

inline ExpSumValue type_II(ArithFn f, Phase alpha, double x, const WeightSystem& ws,
                           const ArithTables& t) {
  const auto top = detail::floor_u64(x / std::max(1.0, ws.config().V));
  return type_II(f, alpha, x, ws, t, TypeTwoTable(ws, std::max<std::uint64_t>(top, 1)));
}

/// Σ_{ℓ<=min(V,x)} f(ℓ) e(ℓα).
inline ExpSumValue tail_sum(ArithFn f, Phase alpha, double x, const WeightSystem& ws,
                            const ArithTables& t) {
  const auto top = std::min(ws.config().floor_V(), detail::floor_u64(x));
  CompensatedSum acc;
  detail::accumulate_line(acc, alpha, top, [&](std::uint64_t n) { return arith_value(f, n, t); });
  return acc.result();
}

struct DecompositionReport {
  ArithFn f = ArithFn::mangoldt;
  double x = 0;
  ExpSumValue s_direct;
  ExpSumValue s_I1;
  ExpSumValue s_I2;
  ExpSumValue s_II;
  ExpSumValue s_tail;
  double residual = 0;

  std::complex<double> assembled() const {
    return s_I1.value - s_I2.value + s_II.value + s_tail.value;
  }
};

/// All pieces plus the residual |S_direct − assembled|, without judging it.
inline DecompositionReport decompose_sum(ArithFn f, Phase alpha, double x, const WeightSystem& ws,
                                         const ArithTables& t) {
  DecompositionReport r;
  r.f = f;
  r.x = x;
  r.s_direct = direct_sum(f, alpha, x, t);
  r.s_I1 = f == ArithFn::mangoldt ? type_I_1(alpha, x, ws, t) : h_sum(alpha, x, ws, t);
  r.s_I2 = type_I_2(f, alpha, x, ws, t);
  r.s_II = type_II(f, alpha, x, ws, t);
  r.s_tail = tail_sum(f, alpha, x, ws, t);
  r.residual = std::abs(r.s_direct.value - r.assembled());
  return r;
}

/// decompose_sum, failing hard when the residual exceeds tol·x.
inline DecompositionReport recombine(ArithFn f, Phase alpha, double x, const WeightSystem& ws,
                                     const ArithTables& t, double tol = 1e-9) {
  auto r = decompose_sum(f, alpha, x, ws, t);
  if (!(r.residual <= tol * x)) {
    std::ostringstream os;
    os << "recombine: residual " << r.residual << " exceeds " << tol << "*x for " << to_string(f)
       << " with weights " << describe(ws.config());
    throw std::runtime_error(os.str());
  }
  return r;
}

}  // namespace expsum
