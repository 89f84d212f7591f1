#include "equistate/sphere/sphere_point.hpp"

#include "equistate/error.hpp"

namespace equistate {

bool operator<(const SpherePoint& a, const SpherePoint& b) {
  if (a.is_infinity()) return false;
  if (b.is_infinity()) return true;
  return lex_less(a.z(), b.z());
}

Rational chordal_squared(const SpherePoint& z, const SpherePoint& w) {
  if (z.is_infinity() && w.is_infinity()) return 0;
  if (z.is_infinity()) return Rational(4) / (1 + w.z().norm2());
  if (w.is_infinity()) return Rational(4) / (1 + z.z().norm2());
  Rational d = (z.z() - w.z()).norm2();
  if (d == 0) return 0;
  return 4 * d / ((1 + z.z().norm2()) * (1 + w.z().norm2()));
}

BallReal sqrt_rational(const Rational& q, std::int64_t prec) {
  if (q < 0) throw Error(ErrorKind::NonPositiveArgument, "sqrt of a negative rational");
  if (q == 0) return BallReal();
  // sqrt(q + d) - sqrt(q) <= sqrt(d), so 2(prec+3) absolute bits under the root suffice.
  std::int64_t bits = 2 * prec + 6;
  Dyadic lo = round_abs(q, bits, Round::Down);
  Dyadic hi = round_abs(q, bits, Round::Up);
  Dyadic slo = lo.sign() > 0 ? sqrt(lo, prec + 4, Round::Down) : Dyadic();
  Dyadic shi = sqrt(hi, prec + 4, Round::Up);
  return BallReal::from_interval(slo, shi);
}

BallReal chordal(const SpherePoint& z, const SpherePoint& w, std::int64_t prec) {
  return sqrt_rational(chordal_squared(z, w), prec);
}

std::array<double, 3> embed(const SpherePoint& p) {
  if (p.is_infinity()) return {0.0, 0.0, 1.0};
  Rational n = p.z().norm2();
  Rational d = n + 1;
  Rational x = 2 * p.re() / d;
  Rational y = 2 * p.im() / d;
  Rational z = (n - 1) / d;
  return {x.get_d(), y.get_d(), z.get_d()};
}

bool chordal_less_pow2(const SpherePoint& z, const SpherePoint& w, std::int64_t n) {
  Rational bound(1);
  if (n >= 0) mpq_div_2exp(bound.get_mpq_t(), bound.get_mpq_t(), static_cast<mp_bitcnt_t>(2 * n));
  else mpq_mul_2exp(bound.get_mpq_t(), bound.get_mpq_t(), static_cast<mp_bitcnt_t>(-2 * n));
  return chordal_squared(z, w) < bound;
}

}  // namespace equistate
