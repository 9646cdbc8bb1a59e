#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <stdexcept>

namespace gms {

// Exact rationals on GMP; always stored canonical (lowest terms, positive
// denominator -- mpq canonicalizes on every operation).
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Arbitrary-precision binary float on MPFR, runtime precision.
using BigFloat = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;

namespace precision {

inline int digits10_for_bits(int bits) {
  return static_cast<int>(std::ceil(bits * 0.30103)) + 2;
}

// Default mantissa size for the float backend, in bits.
inline int& default_bits_ref() {
  static int bits = 80;
  return bits;
}

inline void set_default_bits(int bits) {
  if (bits < 24) throw std::invalid_argument("float precision below 24 bits");
  default_bits_ref() = bits;
  BigFloat::default_precision(digits10_for_bits(bits));
}

inline int default_bits() { return default_bits_ref(); }

// Make sure the default precision has been applied at least once.
inline void ensure_initialized() {
  static bool done = [] {
    BigFloat::default_precision(digits10_for_bits(default_bits_ref()));
    return true;
  }();
  (void)done;
}

// RAII bump of the working precision (for guard digits in conversions).
class Guard {
 public:
  explicit Guard(int bits) : saved_(BigFloat::default_precision()) {
    BigFloat::default_precision(digits10_for_bits(bits));
  }
  ~Guard() { BigFloat::default_precision(saved_); }
  Guard(const Guard&) = delete;
  Guard& operator=(const Guard&) = delete;

 private:
  unsigned saved_;
};

}  // namespace precision

template <class T>
T pow_int(T base, long e) {
  if (e < 0) {
    base = T(1) / base;
    e = -e;
  }
  T acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

inline int sign_of(const Rational& r) { return r.sign(); }

inline BigFloat to_bigfloat(const Rational& r) {
  precision::ensure_initialized();
  return BigFloat(r);
}

}  // namespace gms
