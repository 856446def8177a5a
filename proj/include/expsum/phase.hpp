#pragma once

// Phases t mod 1 held as 128-bit fixed point. Adding or scaling by an integer
// wraps modulo 2^128, i.e. exactly modulo 1, so n·α mod 1 never drifts no
// matter how many steps are accumulated.

#include "expsum/numeric_types.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace expsum {

class Phase {
 public:
  using word = unsigned __int128;

  Phase() = default;
  explicit Phase(word raw) : raw_(raw) {}

  /// floor(frac(alpha) · 2^128).
  static Phase of(const BigRational& alpha) {
    const BigInt num = boost::multiprecision::numerator(alpha);
    const BigInt den = boost::multiprecision::denominator(alpha);
    BigInt r = num % den;
    if (r < 0) r += den;
    const BigInt scaled = (r << 128) / den;
    const BigInt mask = (BigInt(1) << 64) - 1;
    const auto hi = static_cast<std::uint64_t>(scaled >> 64);
    const auto lo = static_cast<std::uint64_t>(scaled & mask);
    return Phase((static_cast<word>(hi) << 64) | lo);
  }
  /// A double is an exact dyadic rational, so this conversion is exact up to 2^-128.
  static Phase of(double alpha) { return of(BigRational(alpha)); }

  word raw() const { return raw_; }
  bool is_zero() const { return raw_ == 0; }

  Phase operator+(Phase o) const { return Phase(raw_ + o.raw_); }
  Phase operator-() const { return Phase(word(0) - raw_); }
  Phase& operator+=(Phase o) {
    raw_ += o.raw_;
    return *this;
  }
  Phase times(std::uint64_t n) const { return Phase(raw_ * n); }

  /// Representative in [-1/2, 1/2).
  double centered() const {
    const auto top = static_cast<std::int64_t>(static_cast<std::uint64_t>(raw_ >> 64));
    return std::ldexp(static_cast<double>(top), -64);
  }
  /// Representative in [0, 1).
  double fraction() const {
    const double c = centered();
    return c < 0 ? c + 1.0 : c;
  }

  /// e(t) = exp(2πi t).
  std::complex<double> expi() const {
    const double a = 2 * std::numbers::pi * centered();
    return {std::cos(a), std::sin(a)};
  }
  /// |sin(π t)|, exactly 0 when t ≡ 0.
  double abs_sin_pi() const {
    if (raw_ == 0) return 0.0;
    return std::abs(std::sin(std::numbers::pi * centered()));
  }

 private:
  word raw_ = 0;
};

}  // namespace expsum
