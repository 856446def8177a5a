#pragma once

#include "expsum/arith_tables.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <utility>

namespace expsum {

/// Σ_p coeff_p · log p, stored sparsely over the basis {log p : p prime}.
/// Zero coefficients are never kept in the map.
template <class T>
class LogVector {
 public:
  using coefficient_type = T;
  using map_type = std::map<std::uint64_t, T>;

  LogVector() = default;

  /// coeff · log p.
  static LogVector log_prime(std::uint64_t p, T coeff = T(1)) {
    LogVector v;
    v.add(p, std::move(coeff));
    return v;
  }

  /// log n expanded over its prime factorization.
  static LogVector log_of(std::uint64_t n, const ArithTables& t) {
    LogVector v;
    for (const auto& [p, e] : t.factorize(n)) v.add(p, T(e));
    return v;
  }

  /// Λ(n) as a log-vector: {p: 1} when n = p^k, empty otherwise.
  static LogVector mangoldt(std::uint64_t n, const ArithTables& t) {
    const auto base = t.mangoldt_base(n);
    return base == 0 ? LogVector{} : log_prime(base);
  }

  const map_type& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }

  T coefficient(std::uint64_t p) const {
    const auto it = coeffs_.find(p);
    return it == coeffs_.end() ? T(0) : it->second;
  }

  void add(std::uint64_t p, const T& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(p, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  /// this += scale · other
  void add_scaled(const LogVector& other, const T& scale) {
    if (scale == 0) return;
    for (const auto& [p, c] : other.coeffs_) add(p, c * scale);
  }

  LogVector& operator+=(const LogVector& o) {
    for (const auto& [p, c] : o.coeffs_) add(p, c);
    return *this;
  }
  LogVector& operator-=(const LogVector& o) {
    for (const auto& [p, c] : o.coeffs_) add(p, T(-c));
    return *this;
  }
  LogVector& operator*=(const T& s) {
    if (s == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [p, c] : coeffs_) c *= s;
    return *this;
  }

  friend LogVector operator+(LogVector a, const LogVector& b) { return a += b; }
  friend LogVector operator-(LogVector a, const LogVector& b) { return a -= b; }
  friend LogVector operator*(LogVector a, const T& s) { return a *= s; }
  friend LogVector operator*(const T& s, LogVector a) { return a *= s; }
  friend bool operator==(const LogVector& a, const LogVector& b) { return a.coeffs_ == b.coeffs_; }

  /// max_p |coeff_p|
  T max_abs_coefficient() const {
    T best(0);
    for (const auto& [p, c] : coeffs_) {
      const T a = c < 0 ? T(-c) : c;
      if (a > best) best = a;
    }
    return best;
  }

  /// Numerical value Σ coeff_p log p.
  template <class R = double>
  R evaluate() const {
    using std::log;
    R sum(0);
    for (const auto& [p, c] : coeffs_) sum += R(c) * log(R(p));
    return sum;
  }

  friend std::ostream& operator<<(std::ostream& os, const LogVector& v) {
    os << '{';
    bool first = true;
    for (const auto& [p, c] : v.coeffs_) {
      if (!first) os << ", ";
      os << p << ": " << c;
      first = false;
    }
    return os << '}';
  }

 private:
  map_type coeffs_;
};

}  // namespace expsum
