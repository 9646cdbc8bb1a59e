#pragma once

#include "gms/numeric.hpp"

#include <compare>
#include <iosfwd>
#include <string>

namespace gms {

// Element of Q(sqrt5) in the basis {1, phi}, phi = (1+sqrt5)/2.
// Products renormalize through phi^2 = phi + 1, so the phi-coefficient is
// unique. Comparison is exact: the value a + b*phi is written as
// (u + v*sqrt5)/2 with u = 2a+b, v = b and the sign decided by sign analysis
// of u, v and u^2 - 5v^2.
class FieldElement {
 public:
  FieldElement() : a_(0), b_(0) {}
  FieldElement(long v) : a_(v), b_(0) {}  // NOLINT(google-explicit-constructor)
  FieldElement(Rational v) : a_(std::move(v)), b_(0) {}  // NOLINT
  FieldElement(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static FieldElement phi() { return FieldElement(Rational(0), Rational(1)); }
  // 1/phi = phi - 1 and 1/phi^2 = 2 - phi.
  static FieldElement inv_phi() { return FieldElement(Rational(-1), Rational(1)); }
  static FieldElement sqrt5() { return FieldElement(Rational(-1), Rational(2)); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  FieldElement conjugate() const {  // a + b*(1-sqrt5)/2 = (a+b) - b*phi
    return FieldElement(a_ + b_, -b_);
  }
  Rational norm() const {  // x * conj(x) = a^2 + ab - b^2
    return a_ * a_ + a_ * b_ - b_ * b_;
  }

  FieldElement operator-() const { return FieldElement(-a_, -b_); }

  FieldElement& operator+=(const FieldElement& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  FieldElement& operator-=(const FieldElement& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  FieldElement& operator*=(const FieldElement& o) {
    // (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
    Rational bd = b_ * o.b_;
    Rational na = a_ * o.a_ + bd;
    Rational nb = a_ * o.b_ + b_ * o.a_ + bd;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
  }
  FieldElement& operator/=(const FieldElement& o) {
    if (o.is_zero()) throw std::domain_error("FieldElement: division by zero");
    FieldElement num = *this;
    num *= o.conjugate();
    Rational n = o.norm();
    a_ = num.a_ / n;
    b_ = num.b_ / n;
    return *this;
  }

  friend FieldElement operator+(FieldElement x, const FieldElement& y) { return x += y; }
  friend FieldElement operator-(FieldElement x, const FieldElement& y) { return x -= y; }
  friend FieldElement operator*(FieldElement x, const FieldElement& y) { return x *= y; }
  friend FieldElement operator/(FieldElement x, const FieldElement& y) { return x /= y; }

  // Sign of the real embedding a + b*(1+sqrt5)/2.
  int sign() const;

  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const FieldElement& x, const FieldElement& y) { return !(x == y); }
  friend bool operator<(const FieldElement& x, const FieldElement& y) {
    return (x - y).sign() < 0;
  }
  friend bool operator>(const FieldElement& x, const FieldElement& y) { return y < x; }
  friend bool operator<=(const FieldElement& x, const FieldElement& y) { return !(y < x); }
  friend bool operator>=(const FieldElement& x, const FieldElement& y) { return !(x < y); }

  FieldElement abs() const { return sign() < 0 ? -*this : *this; }

  // Rounded to `bits` of mantissa (computed with 64 guard bits).
  BigFloat to_bigfloat(int bits) const;
  BigFloat to_bigfloat() const;  // at the current default precision
  double to_double() const;

  // "p/q + r/s·phi" (q, s omitted when 1; the phi term omitted when r = 0).
  std::string str() const;
  static FieldElement parse(const std::string& text);

 private:
  Rational a_, b_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

inline FieldElement pow_int(FieldElement base, long e) {
  if (e < 0) {
    base = FieldElement(1) / base;
    e = -e;
  }
  FieldElement acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

namespace golden {
inline const FieldElement& phi() {
  static const FieldElement v = FieldElement::phi();
  return v;
}
inline const FieldElement& inv_phi() {  // 1/phi
  static const FieldElement v = FieldElement::inv_phi();
  return v;
}
inline const FieldElement& inv_phi2() {  // 1/phi^2
  static const FieldElement v = FieldElement(Rational(2), Rational(-1));
  return v;
}
// Boundary levels of the glued manifold: phi^2/(phi+2), 1/(phi+2), -phi/(phi+2).
inline const FieldElement& top_level() {
  static const FieldElement v =
      (FieldElement::phi() * FieldElement::phi()) / (FieldElement::phi() + FieldElement(2));
  return v;
}
inline const FieldElement& mid_level() {
  static const FieldElement v = FieldElement(1) / (FieldElement::phi() + FieldElement(2));
  return v;
}
inline const FieldElement& bottom_level() {
  static const FieldElement v =
      -(FieldElement::phi() / (FieldElement::phi() + FieldElement(2)));
  return v;
}
}  // namespace golden

}  // namespace gms
