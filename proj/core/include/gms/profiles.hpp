#pragma once

#include "gms/scalar.hpp"

#include <stdexcept>

namespace gms {

// Piecewise interpolation profiles shared by the staged homeomorphisms.
// All formulas are piecewise polynomial with breakpoints at 1/3, 2/3 (for the
// unit profiles) and at the eps-collars (for psi), so they evaluate exactly
// over Q(sqrt5).
//
// g_alpha: value 1 at 0, alpha at 1, mean alpha over [0,1]:
//   g(u) = 1 + 3u(5a-5)/4          on [0,1/3]
//        = (5a-1)/4                on [1/3,2/3]
//        = (5a-1)/4 - (3u-2)(a-1)/4 on [2/3,1]
//
// G_{a,b}: C^1 ramp with G'(0)=a, G'(1)=b, G(1)=b (the h_{M_t} collar uses
// the normalized G_{a,1}).
//
// psi_{eps,lambda}: the circle-distortion profile; slopes
// aL = lambda*phi^2/(1+lambda*phi) on [eps, 1/phi - eps] and
// aR = phi^2/(1+lambda*phi) on [1/phi + eps, 1 - eps], glued to slope 1 at
// {0, 1/phi, 1} through g-profiles over the four eps-collars.

template <class Num>
struct ValueDeriv {
  Num value, deriv;
};

template <class Num>
class GAlpha {
 public:
  explicit GAlpha(Num alpha) : a_(std::move(alpha)) {
    if (num_to_double(a_) < 0.25) throw std::invalid_argument("GAlpha: alpha >= 1/4 required");
  }

  // g_alpha(u) and g'_alpha(u), u in [0,1].
  ValueDeriv<Num> eval(const Num& u) const {
    check01(u);
    const Num one(1), three(3);
    Num c = (Num(5) * a_ - Num(5)) / Num(4);  // 5(a-1)/4
    if (u * three <= one) return {one + three * u * c, three * c};
    if (u * three <= Num(2)) return {(Num(5) * a_ - one) / Num(4), Num(0)};
    Num t = three * u - Num(2);
    Num d = (a_ - one) / Num(4);
    return {(Num(5) * a_ - one) / Num(4) - t * d, -three * d};
  }

  // Integral of g_alpha over [0, u] (so integral(1) == alpha exactly).
  Num integral(const Num& u) const {
    check01(u);
    const Num one(1), three(3);
    Num c = (Num(5) * a_ - Num(5)) / Num(4);
    Num i13 = one / three + c / Num(6);  // integral over [0,1/3]
    if (u * three <= one) return u + three * c * u * u / Num(2);
    Num mid = (Num(5) * a_ - one) / Num(4);
    if (u * three <= Num(2)) return i13 + mid * (u - one / three);
    Num i23 = i13 + mid / three;
    Num d = (a_ - one) / Num(4);
    // integral of (mid - (3v-2)d) over [2/3, u]
    Num t = u - Num(2) / three;
    return i23 + mid * t - d * three * t * t / Num(2);
  }

 private:
  static void check01(const Num& u) {
    if (u < Num(0) || u > Num(1)) throw std::domain_error("profile: argument outside [0,1]");
  }
  Num a_;
};

template <class Num>
class GAB {
 public:
  GAB(Num a, Num b) : a_(std::move(a)), b_(std::move(b)) {}

  // G_{a,b}(u) and G'_{a,b}(u).
  ValueDeriv<Num> eval(const Num& u) const {
    if (u < Num(0) || u > Num(1)) throw std::domain_error("profile: argument outside [0,1]");
    const Num one(1), three(3);
    Num diff = b_ - a_;
    Num i13 = a_ / three + Num(5) * diff / Num(24);
    Num mid = (Num(5) * b_ - a_) / Num(4);
    if (u * three <= one) {
      Num d = a_ + Num(15) * diff * u / Num(4);
      return {a_ * u + Num(15) * diff * u * u / Num(8), d};
    }
    if (u * three <= Num(2)) {
      return {i13 + mid * (u - one / three), mid};
    }
    Num i23 = i13 + mid / three;
    Num t = u - Num(2) / three;
    // derivative mid + (2-3u) diff/4 = mid - 3t diff/4
    Num val = i23 + mid * t - three * diff * t * t / Num(8);
    return {val, mid - three * t * diff / Num(4)};
  }

 private:
  Num a_, b_;
};

template <class Num>
class Psi {
 public:
  Psi(Num eps, Num lambda) : eps_(std::move(eps)), lambda_(std::move(lambda)) {
    if (eps_ < Num(0)) throw std::invalid_argument("Psi: eps >= 0 required");
    if (lambda_ < Num(1)) throw std::invalid_argument("Psi: lambda >= 1 required");
    Num phi = NumFrom<Num>::from(golden::phi());
    inv_phi_ = NumFrom<Num>::from(golden::inv_phi());
    // Collars must not collide: eps < |J3|/2 = (1/phi - 1/phi^2)/2 and
    // eps < (1 - 1/phi)/2.
    Num lim = (inv_phi_ - inv_phi_ * inv_phi_) / Num(2);
    if (eps_ > Num(0) && !(eps_ < lim))
      throw std::invalid_argument("Psi: eps too large for the collar layout");
    Num denom = Num(1) + lambda_ * phi;
    slope_left_ = lambda_ * phi * phi / denom;   // lambda*phi^2/(1+lambda*phi)
    slope_right_ = phi * phi / denom;            // phi^2/(1+lambda*phi)
    mid_value_ = lambda_ * phi / denom;          // psi(1/phi)
  }

  const Num& slope_left() const { return slope_left_; }
  const Num& slope_right() const { return slope_right_; }
  const Num& value_at_inv_phi() const { return mid_value_; }

  ValueDeriv<Num> eval(const Num& x) const {
    if (x < Num(0) || x > Num(1)) throw std::domain_error("Psi: argument outside [0,1]");
    const Num one(1);
    if (eps_ == Num(0)) {
      if (x <= inv_phi_) return {slope_left_ * x, slope_left_};
      return {mid_value_ + slope_right_ * (x - inv_phi_), slope_right_};
    }
    GAlpha<Num> gl(slope_left_), gr(slope_right_);
    if (x <= eps_) {
      Num u = x / eps_;
      auto vd = gl.eval(u);
      return {eps_ * gl.integral(u), vd.value};
    }
    if (x <= inv_phi_ - eps_) {
      return {eps_ * slope_left_ + slope_left_ * (x - eps_), slope_left_};
    }
    if (x <= inv_phi_) {
      // mirrored left collar: psi'(x) = g_l((1/phi - x)/eps)
      Num u = (inv_phi_ - x) / eps_;
      auto vd = gl.eval(u);
      return {mid_value_ - eps_ * gl.integral(u), vd.value};
    }
    if (x <= inv_phi_ + eps_) {
      Num u = (x - inv_phi_) / eps_;
      auto vd = gr.eval(u);
      return {mid_value_ + eps_ * gr.integral(u), vd.value};
    }
    if (x <= one - eps_) {
      return {mid_value_ + eps_ * slope_right_ + slope_right_ * (x - inv_phi_ - eps_),
              slope_right_};
    }
    Num u = (one - x) / eps_;
    auto vd = gr.eval(u);
    return {one - eps_ * gr.integral(u), vd.value};
  }

 private:
  Num eps_, lambda_, inv_phi_, slope_left_, slope_right_, mid_value_;
};

}  // namespace gms
