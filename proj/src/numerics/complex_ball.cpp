#include "equistate/numerics/complex_ball.hpp"

#include "equistate/error.hpp"

namespace equistate {

ComplexBall cball_add(const ComplexBall& a, const ComplexBall& b, std::int64_t prec) {
  return {ball_add(a.re, b.re, prec), ball_add(a.im, b.im, prec)};
}

ComplexBall cball_sub(const ComplexBall& a, const ComplexBall& b, std::int64_t prec) {
  return {ball_sub(a.re, b.re, prec), ball_sub(a.im, b.im, prec)};
}

ComplexBall cball_mul(const ComplexBall& a, const ComplexBall& b, std::int64_t prec) {
  BallReal re = ball_sub(ball_mul(a.re, b.re, prec), ball_mul(a.im, b.im, prec), prec);
  BallReal im = ball_add(ball_mul(a.re, b.im, prec), ball_mul(a.im, b.re, prec), prec);
  return {re, im};
}

BallReal cball_norm2(const ComplexBall& a, std::int64_t prec) {
  return ball_add(ball_sqr(a.re, prec), ball_sqr(a.im, prec), prec);
}

ComplexBall cball_div(const ComplexBall& a, const ComplexBall& b, std::int64_t prec) {
  BallReal n = cball_norm2(b, prec);
  if (!n.positive()) throw Error(ErrorKind::NonPositiveArgument, "complex division by a ball containing 0");
  ComplexBall conj{b.re, ball_neg(b.im)};
  ComplexBall num = cball_mul(a, conj, prec);
  return {ball_div(num.re, n, prec), ball_div(num.im, n, prec)};
}

}  // namespace equistate
