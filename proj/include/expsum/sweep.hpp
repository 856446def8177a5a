#pragma once

// Bound-vs-actual sweeps over (q, a, δ): |Σ f(n)e(nα)| at α = a/q + δ/x next
// to the main bound and the side-condition flags of the parameter choice.
// Tasks are independent; results are stored by task index so the output order
// never depends on the number of workers.

#include "expsum/arith_tables.hpp"
#include "expsum/bounds.hpp"
#include "expsum/diophantine.hpp"
#include "expsum/expsum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace expsum {

struct WeightOverride {
  double U = 0, U1 = 0, R = 0, V = 0;
};

struct SweepConfig {
  double x = 1e6;
  double eta = 1.0 / 15;
  std::uint64_t q_lo = 1;
  std::uint64_t q_hi = 100;
  std::optional<std::uint64_t> a_sample;  // empty: every a coprime to q
  std::vector<double> deltas{0.0};
  std::optional<WeightOverride> weights;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

struct SweepRow {
  double x = 0;
  ArithFn f = ArithFn::mangoldt;
  std::uint64_t q = 1;
  std::uint64_t a = 0;
  double delta = 0;
  double delta0 = 1;
  std::complex<double> value;
  double bound = std::numeric_limits<double>::quiet_NaN();
  double ratio = std::numeric_limits<double>::quiet_NaN();
  bool in_range = false;
  double U = 0, U1 = 0, R = 0, V = 0;
  std::vector<std::pair<std::string, bool>> flags;

  double abs() const { return std::abs(value); }
};

/// Σ_{n<=x, n ≡ r (mod q)} f(n) for r = 0..q−1; then Σ f(n)e(na/q) = Σ_r A(r) e(ra/q).
class ResidueBuckets {
 public:
  ResidueBuckets(ArithFn f, std::uint64_t q, double x, const ArithTables& t) : q_(q), sums_(q, 0.0L) {
    if (q < 1) throw std::invalid_argument("ResidueBuckets: q must be >= 1");
    const auto N = static_cast<std::uint64_t>(std::floor(x));
    if (N > t.n_max()) throw std::out_of_range("ResidueBuckets: x exceeds table range");
    std::vector<long double> comp(q, 0.0L);
    std::uint64_t r = 0;
    for (std::uint64_t n = 1; n <= N; ++n) {
      r = r + 1 == q ? 0 : r + 1;
      const double v = arith_value(f, n, t);
      if (v == 0) continue;
      // Kahan per bucket
      const long double y = v - comp[r];
      const long double s = sums_[r] + y;
      comp[r] = (s - sums_[r]) - y;
      sums_[r] = s;
    }
  }

  std::complex<double> at(std::uint64_t a) const {
    CompensatedSum acc;
    for (std::uint64_t r = 0; r < q_; ++r) {
      if (sums_[r] == 0) continue;
      const Phase p = Phase::of(BigRational(static_cast<long long>((a % q_) * r % q_), static_cast<long long>(q_)));
      acc.add(static_cast<double>(sums_[r]) * p.expi());
    }
    return acc.value();
  }

 private:
  std::uint64_t q_;
  std::vector<long double> sums_;
};

inline std::vector<std::uint64_t> coprime_residues(std::uint64_t q) {
  if (q == 1) return {0};
  std::vector<std::uint64_t> v;
  for (std::uint64_t a = 1; a < q; ++a)
    if (std::gcd(a, q) == 1) v.push_back(a);
  return v;
}

/// The residues a for one q under the configured a-mode; sampling is seeded by (seed, q) only.
inline std::vector<std::uint64_t> residues_for(std::uint64_t q, const SweepConfig& cfg) {
  auto all = coprime_residues(q);
  if (!cfg.a_sample || *cfg.a_sample >= all.size()) return all;
  std::mt19937_64 rng(cfg.seed * 0x9E3779B97F4A7C15ULL + q);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(*cfg.a_sample);
  std::sort(all.begin(), all.end());
  return all;
}

/// Parameters and flags for a row: the default choice, or the override with recomputed flags.
inline ParamChoice params_for(const SweepConfig& cfg, std::uint64_t q, double delta0) {
  auto pc = choose_params(cfg.x, q, delta0, cfg.eta);
  if (cfg.weights) {
    pc.U = cfg.weights->U;
    pc.U1 = cfg.weights->U1;
    pc.R = cfg.weights->R;
    pc.R1 = pc.U1 / pc.U;
    pc.V = cfg.weights->V;
    pc.condition_flags = verify_conditions(pc, cfg.x, q, delta0, cfg.eta, pc.Q);
  }
  return pc;
}

inline void validate(const SweepConfig& cfg, const ArithTables& t) {
  if (!(cfg.eta > 0 && cfg.eta <= 0.1)) throw std::invalid_argument("sweep: eta must lie in (0, 1/10]");
  if (!(cfg.x >= 100)) throw std::invalid_argument("sweep: x must be >= 100");
  if (cfg.q_lo < 1 || cfg.q_hi < cfg.q_lo) throw std::invalid_argument("sweep: need 1 <= q_lo <= q_hi");
  if (cfg.deltas.empty()) throw std::invalid_argument("sweep: delta list is empty");
  if (cfg.a_sample && *cfg.a_sample == 0) throw std::invalid_argument("sweep: sample size must be >= 1");
  if (static_cast<std::uint64_t>(std::floor(cfg.x)) > t.n_max())
    throw std::out_of_range("sweep: x exceeds table range");
}

/// Rows ordered by (q, a, δ, f) with f = Λ before μ.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg, const ArithTables& t) {
  validate(cfg, t);
  struct Task {
    std::uint64_t q;
    std::vector<std::uint64_t> as;
  };
  std::vector<Task> tasks;
  for (std::uint64_t q = cfg.q_lo; q <= cfg.q_hi; ++q) tasks.push_back({q, residues_for(q, cfg)});

  std::vector<std::vector<SweepRow>> out(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        const auto& task = tasks[i];
        const bool need_rational = std::any_of(cfg.deltas.begin(), cfg.deltas.end(), [](double d) { return d == 0; });
        std::optional<ResidueBuckets> lam, mu;
        if (need_rational) {
          lam.emplace(ArithFn::mangoldt, task.q, cfg.x, t);
          mu.emplace(ArithFn::mobius, task.q, cfg.x, t);
        }
        auto& rows = out[i];
        for (const auto a : task.as) {
          for (const double delta : cfg.deltas) {
            const double d0 = delta0_of(delta);
            const auto pc = params_for(cfg, task.q, d0);
            for (const ArithFn f : {ArithFn::mangoldt, ArithFn::mobius}) {
              SweepRow row;
              row.x = cfg.x;
              row.f = f;
              row.q = task.q;
              row.a = a;
              row.delta = delta;
              row.delta0 = d0;
              if (delta == 0) {
                row.value = (f == ArithFn::mangoldt ? *lam : *mu).at(a);
              } else {
                const auto alpha = alpha_from(static_cast<long long>(a), task.q, delta, cfg.x);
                row.value = direct_sum(f, alpha, cfg.x, t).value;
              }
              try {
                row.bound = main_bound(f, cfg.x, task.q, d0, cfg.eta);
                row.ratio = row.abs() / row.bound;
                row.in_range = true;
              } catch (const std::domain_error&) {
                row.in_range = false;
              }
              row.U = pc.U;
              row.U1 = pc.U1;
              row.R = pc.R;
              row.V = pc.V;
              row.flags = pc.condition_flags;
              rows.push_back(std::move(row));
            }
          }
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
        return;
      }
    }
  };

  const unsigned n_workers = std::max(1u, cfg.workers);
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<SweepRow> rows;
  for (auto& v : out)
    for (auto& r : v) rows.push_back(std::move(r));
  return rows;
}

struct SweepSummary {
  std::size_t rows = 0;
  std::size_t rows_in_range = 0;
  std::size_t ratio_above_one = 0;
  std::size_t rows_all_flags = 0;
  double max_ratio_mangoldt = 0;
  double max_ratio_mobius = 0;
  std::vector<std::pair<std::string, std::size_t>> flag_failures;  // per flag name
};

inline SweepSummary summarize(const std::vector<SweepRow>& rows) {
  SweepSummary s;
  s.rows = rows.size();
  for (const auto& r : rows) {
    if (r.in_range) {
      ++s.rows_in_range;
      if (r.ratio > 1) ++s.ratio_above_one;
      auto& m = r.f == ArithFn::mangoldt ? s.max_ratio_mangoldt : s.max_ratio_mobius;
      m = std::max(m, r.ratio);
    }
    bool all = true;
    for (const auto& [name, ok] : r.flags) {
      if (ok) continue;
      all = false;
      auto it = std::find_if(s.flag_failures.begin(), s.flag_failures.end(),
                             [&](const auto& p) { return p.first == name; });
      if (it == s.flag_failures.end()) s.flag_failures.emplace_back(name, 1);
      else ++it->second;
    }
    if (all) ++s.rows_all_flags;
  }
  return s;
}

}  // namespace expsum
