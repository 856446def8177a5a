#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>

namespace expsum {

using BigInt = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;

// 50 significant decimal digits; carrier for the irrational Barban-Vehov ramp.
using Real50 = boost::multiprecision::mpfr_float_50;

inline Real50 to_real50(const BigRational& r) { return Real50(r); }

inline double to_double(const BigRational& r) { return r.convert_to<double>(); }
inline double to_double(const Real50& r) { return r.convert_to<double>(); }

inline std::string numerator_string(const BigRational& r) {
  return boost::multiprecision::numerator(r).str();
}
inline std::string denominator_string(const BigRational& r) {
  return boost::multiprecision::denominator(r).str();
}

// "num/den", or just "num" for integers.
inline std::string to_fraction_string(const BigRational& r) {
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return numerator_string(r);
  return numerator_string(r) + "/" + den.str();
}

inline std::string to_decimal_string(const Real50& v, int digits = 40) {
  return v.str(digits, std::ios_base::scientific);
}

}  // namespace expsum
