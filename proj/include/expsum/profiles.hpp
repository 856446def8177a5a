#pragma once

// Mean squares of the divisor sums 1*θ' and 1*λ next to their expected main
// terms X·log(min(X,U1)/U)/log²(U1/U) and X/G_q(R).

#include "expsum/arith_tables.hpp"
#include "expsum/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace expsum {

struct L2Profile {
  double X = 0;
  double theta_l2 = 0;      // Σ_{n<=X} (1*θ')(n)²
  double lambda_l2 = 0;     // Σ_{n<=X} (1*λ)(n)²
  double graham_main = 0;   // X·log⁺(min(X,U1)/U)/log²(U1/U)
  double selberg_main = 0;  // X/G_q(R)

  double theta_ratio() const { return theta_l2 / graham_main; }
  double lambda_ratio() const { return lambda_l2 / selberg_main; }
};

inline L2Profile l2_profiles(const WeightSystem& ws, double X) {
  if (!(X >= 1)) throw std::invalid_argument("l2_profiles: X must be >= 1");
  const auto N = static_cast<std::uint64_t>(std::floor(X));
  const auto& cfg = ws.config();
  std::vector<double> tp_sum(N + 1, 0.0), lam_sum(N + 1, 0.0);
  const auto& tp = ws.theta_prime_table();
  for (std::uint64_t d = 1; d < tp.size() && d <= N; ++d) {
    const double v = to_double(tp[d]);
    if (v == 0) continue;
    for (std::uint64_t k = d; k <= N; k += d) tp_sum[k] += v;
  }
  const auto& lam = ws.selberg().table();
  for (std::uint64_t d = 1; d < lam.size() && d <= N; ++d) {
    if (lam[d] == 0) continue;
    const double v = to_double(lam[d]);
    for (std::uint64_t k = d; k <= N; k += d) lam_sum[k] += v;
  }
  L2Profile p;
  p.X = X;
  long double a = 0, b = 0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    a += static_cast<long double>(tp_sum[n]) * tp_sum[n];
    b += static_cast<long double>(lam_sum[n]) * lam_sum[n];
  }
  p.theta_l2 = static_cast<double>(a);
  p.lambda_l2 = static_cast<double>(b);
  const double l1 = std::log(cfg.U1 / cfg.U);
  p.graham_main = X * std::max(std::log(std::min(X, cfg.U1) / cfg.U), 0.0) / (l1 * l1);
  p.selberg_main = X / to_double(ws.g_q_of_R());
  return p;
}

}  // namespace expsum
