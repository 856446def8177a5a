#pragma once

// Splitting (M, 2M] into classes in which members of the same residue class
// mod q are at least L·q apart: within each residue class the elements are
// listed in increasing order and dealt out cyclically over the classes.

#include "expsum/arith_tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace expsum {

struct Partition {
  std::vector<std::vector<std::uint64_t>> classes;
  double M = 0;
  std::uint64_t q = 1;
  double L = 0;

  std::size_t nonempty_classes() const {
    return static_cast<std::size_t>(
        std::count_if(classes.begin(), classes.end(), [](const auto& c) { return !c.empty(); }));
  }
  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& c : classes) n += c.size();
    return n;
  }
};

/// (q/φ(q))·2L/log L.
inline double prime_class_budget(double L, std::uint64_t q) {
  return static_cast<double>(q) / static_cast<double>(totient_of(factorize_trial(q))) * 2 * L / std::log(L);
}

namespace detail {

inline void check_partition_args(double M, std::uint64_t q, double L, double L_min, const ArithTables& t,
                                 const char* who) {
  auto fail = [&](const std::string& m) { throw std::invalid_argument(std::string(who) + ": " + m); };
  if (q < 1) fail("q must be >= 1");
  if (!(M >= 2)) fail("M must be >= 2");
  if (!(L >= L_min)) fail("L must be >= " + std::to_string(static_cast<int>(L_min)));
  if (!(L <= M / static_cast<double>(q))) fail("L must be <= M/q");
  if (static_cast<std::uint64_t>(std::floor(2 * M)) > t.n_max())
    throw std::out_of_range(std::string(who) + ": 2M exceeds table range");
}

inline Partition deal_cyclically(double M, std::uint64_t q, double L, std::size_t n_classes,
                                 const std::vector<std::uint64_t>& members) {
  Partition p;
  p.M = M;
  p.q = q;
  p.L = L;
  p.classes.assign(n_classes, {});
  std::vector<std::size_t> next(q, 0);  // running index per residue
  for (const auto m : members) {       // members arrive in increasing order
    auto& j = next[m % q];
    p.classes[j % n_classes].push_back(m);
    ++j;
  }
  return p;
}

inline std::vector<std::uint64_t> integers_in(double M) {
  const auto lo = static_cast<std::uint64_t>(std::floor(M)) + 1;
  const auto hi = static_cast<std::uint64_t>(std::floor(2 * M));
  std::vector<std::uint64_t> v;
  for (std::uint64_t m = lo; m <= hi; ++m) v.push_back(m);
  return v;
}

}  // namespace detail

/// Primes in (M, 2M] into ⌈(q/φ(q))·2L/log L⌉ classes; needs 3 <= L <= M/q.
inline Partition partition_primes(double M, std::uint64_t q, double L, const ArithTables& t) {
  detail::check_partition_args(M, q, L, 3, t, "partition_primes");
  const auto k = static_cast<std::size_t>(std::ceil(prime_class_budget(L, q)));
  std::vector<std::uint64_t> primes;
  for (const auto m : detail::integers_in(M))
    if (t.is_prime(m)) primes.push_back(m);
  return detail::deal_cyclically(M, q, L, k, primes);
}

/// Integers in (M, 2M] into ⌈L⌉ classes; needs 2 <= L <= M/q.
inline Partition partition_integers(double M, std::uint64_t q, double L, const ArithTables& t) {
  detail::check_partition_args(M, q, L, 2, t, "partition_integers");
  const auto k = static_cast<std::size_t>(std::ceil(L));
  return detail::deal_cyclically(M, q, L, k, detail::integers_in(M));
}

struct PartitionCheck {
  bool disjoint = true;
  bool covers = true;
  bool spacing = true;
  std::uint64_t min_gap = 0;  // smallest same-residue gap seen inside a class (0 = none)
  std::string witness;

  bool ok() const { return disjoint && covers && spacing; }
};

/// Checks the partition against `expected` (the set it should cover) and the
/// spacing |m − m'| >= L·q for every same-residue pair inside a class. Pairs are
/// compared after sorting each residue group, stopping a row once the gap
/// reaches L·q, which visits every pair that could violate the bound.
inline PartitionCheck verify_partition(const Partition& p, const std::vector<std::uint64_t>& expected) {
  PartitionCheck c;
  std::vector<std::uint64_t> all;
  for (const auto& cls : p.classes) all.insert(all.end(), cls.begin(), cls.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    c.disjoint = false;
    c.witness = "element appears in two classes";
  }
  auto sorted_expected = expected;
  std::sort(sorted_expected.begin(), sorted_expected.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all != sorted_expected) {
    c.covers = false;
    if (c.witness.empty()) c.witness = "union differs from the input set";
  }
  const double need = p.L * static_cast<double>(p.q);
  for (std::size_t j = 0; j < p.classes.size(); ++j) {
    std::map<std::uint64_t, std::vector<std::uint64_t>> by_residue;
    for (const auto m : p.classes[j]) by_residue[m % p.q].push_back(m);
    for (auto& [r, v] : by_residue) {
      std::sort(v.begin(), v.end());
      for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t k = i + 1; k < v.size(); ++k) {
          const auto gap = v[k] - v[i];
          if (c.min_gap == 0 || gap < c.min_gap) c.min_gap = gap;
          if (static_cast<double>(gap) >= need) break;
          if (c.spacing) {
            std::ostringstream os;
            os << "class " << j + 1 << ": " << v[i] << " and " << v[k] << " (residue " << r << ") gap "
               << gap << " < L*q = " << need;
            c.witness = os.str();
          }
          c.spacing = false;
        }
      }
    }
  }
  return c;
}

inline std::vector<std::uint64_t> primes_between(double M, const ArithTables& t) {
  std::vector<std::uint64_t> v;
  for (const auto m : detail::integers_in(M))
    if (t.is_prime(m)) v.push_back(m);
  return v;
}

inline std::vector<std::uint64_t> integers_between(double M) { return detail::integers_in(M); }

}  // namespace expsum
