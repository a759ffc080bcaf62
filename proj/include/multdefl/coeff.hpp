#pragma once

// Coefficient domains for MPoly: exact rationals (GMP) and complex doubles.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <string>

namespace multdefl {

using Rational = mpq_class;
using Complex = std::complex<double>;

template <class K>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& c) { return sgn(c) == 0; }
  static Complex to_complex(const Rational& c) { return {c.get_d(), 0.0}; }
  static Rational from_int(long v) { return Rational(v); }
  static std::string to_string(const Rational& c) { return c.get_str(); }
};

template <>
struct CoeffTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* name = "complex";
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  // Only exact zeros are pruned; numerical cancellation is left to callers.
  static bool is_zero(const Complex& c) { return c.real() == 0.0 && c.imag() == 0.0; }
  static Complex to_complex(const Complex& c) { return c; }
  static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static std::string to_string(const Complex& c);
};

/// Canonicalizes a rational in place (gmpxx leaves that to the caller).
inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace multdefl
