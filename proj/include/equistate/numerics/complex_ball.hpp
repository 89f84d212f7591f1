#pragma once

#include "equistate/numerics/ball.hpp"

namespace equistate {

/// Rectangular complex ball: real and imaginary parts enclosed separately.
struct ComplexBall {
  BallReal re;
  BallReal im;

  ComplexBall() = default;
  ComplexBall(BallReal r, BallReal i) : re(std::move(r)), im(std::move(i)) {}

  static ComplexBall from_rational(const Rational& r, const Rational& i, std::int64_t prec) {
    return {BallReal::from_rational(r, prec), BallReal::from_rational(i, prec)};
  }

  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  /// Upper bound on the radius of the disc enclosing the rectangle.
  Dyadic radius_bound() const { return re.rad + im.rad; }
};

ComplexBall cball_add(const ComplexBall& a, const ComplexBall& b, std::int64_t prec);
ComplexBall cball_sub(const ComplexBall& a, const ComplexBall& b, std::int64_t prec);
ComplexBall cball_mul(const ComplexBall& a, const ComplexBall& b, std::int64_t prec);
/// |z|^2 enclosure.
BallReal cball_norm2(const ComplexBall& a, std::int64_t prec);
/// Throws NonPositiveArgument when b may vanish.
ComplexBall cball_div(const ComplexBall& a, const ComplexBall& b, std::int64_t prec);

}  // namespace equistate
