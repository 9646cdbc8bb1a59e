#pragma once

#include "gms/field.hpp"

#include <string>
#include <variant>

namespace gms {

// Backend-tagged number: exact Q(sqrt5) element or an MPFR float at the
// working precision. Mixed arithmetic promotes to the float backend; the
// exact backend never rounds.
class Scalar {
 public:
  Scalar() : v_(FieldElement(0)) {}
  Scalar(long v) : v_(FieldElement(v)) {}              // NOLINT
  Scalar(FieldElement v) : v_(std::move(v)) {}         // NOLINT
  Scalar(Rational v) : v_(FieldElement(std::move(v))) {}  // NOLINT
  Scalar(BigFloat v) : v_(std::move(v)) {}             // NOLINT
  explicit Scalar(double v) : v_(BigFloat(v)) {}

  bool exact() const { return std::holds_alternative<FieldElement>(v_); }

  const FieldElement& field() const {
    if (!exact()) throw std::domain_error("Scalar: float payload, exact value requested");
    return std::get<FieldElement>(v_);
  }
  BigFloat to_bigfloat(int bits) const {
    if (exact()) return std::get<FieldElement>(v_).to_bigfloat(bits);
    return std::get<BigFloat>(v_);
  }
  BigFloat to_bigfloat() const { return to_bigfloat(precision::default_bits()); }
  double to_double() const { return to_bigfloat(64).convert_to<double>(); }

  int sign() const {
    if (exact()) return std::get<FieldElement>(v_).sign();
    const BigFloat& f = std::get<BigFloat>(v_);
    return f == 0 ? 0 : (f < 0 ? -1 : 1);
  }

  friend Scalar operator-(const Scalar& x) {
    if (x.exact()) return Scalar(-x.field());
    return Scalar(BigFloat(-std::get<BigFloat>(x.v_)));
  }

#define GMS_SCALAR_BINOP(op)                                               \
  friend Scalar operator op(const Scalar& x, const Scalar& y) {            \
    if (x.exact() && y.exact()) return Scalar(x.field() op y.field());     \
    return Scalar(BigFloat(x.to_bigfloat() op y.to_bigfloat()));           \
  }
  GMS_SCALAR_BINOP(+)
  GMS_SCALAR_BINOP(-)
  GMS_SCALAR_BINOP(*)
  GMS_SCALAR_BINOP(/)
#undef GMS_SCALAR_BINOP

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    if (x.exact() && y.exact()) return x.field() == y.field();
    return x.to_bigfloat() == y.to_bigfloat();
  }
  friend bool operator<(const Scalar& x, const Scalar& y) {
    if (x.exact() && y.exact()) return x.field() < y.field();
    return x.to_bigfloat() < y.to_bigfloat();
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
  friend bool operator>(const Scalar& x, const Scalar& y) { return y < x; }
  friend bool operator<=(const Scalar& x, const Scalar& y) { return !(y < x); }
  friend bool operator>=(const Scalar& x, const Scalar& y) { return !(x < y); }

  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  std::string str() const {
    if (exact()) return field().str();
    return std::get<BigFloat>(v_).str();
  }

 private:
  std::variant<FieldElement, BigFloat> v_;
};

inline Scalar pow_int(const Scalar& base, long e) {
  if (base.exact()) return Scalar(pow_int(base.field(), e));
  return Scalar(pow_int(base.to_bigfloat(), e));
}

// Conversion hooks for code templated on the numeric type
// (Num = FieldElement for the exact backend, Num = BigFloat for the float one).
template <class Num>
struct NumFrom;

template <>
struct NumFrom<FieldElement> {
  static FieldElement from(const FieldElement& x) { return x; }
  static FieldElement from(const Rational& x) { return FieldElement(x); }
  static FieldElement from(const Scalar& x) { return x.field(); }
  static FieldElement from(long x) { return FieldElement(x); }
};

template <>
struct NumFrom<BigFloat> {
  static BigFloat from(const FieldElement& x) { return x.to_bigfloat(); }
  static BigFloat from(const Rational& x) { return to_bigfloat(x); }
  static BigFloat from(const Scalar& x) { return x.to_bigfloat(); }
  static BigFloat from(long x) { return BigFloat(x); }
};

template <class Num>
Num num_abs(const Num& x) {
  return x < Num(0) ? Num(-x) : x;
}

template <class Num>
double num_to_double(const Num& x);
template <>
inline double num_to_double<FieldElement>(const FieldElement& x) {
  return x.to_double();
}
template <>
inline double num_to_double<BigFloat>(const BigFloat& x) {
  return x.convert_to<double>();
}

}  // namespace gms
