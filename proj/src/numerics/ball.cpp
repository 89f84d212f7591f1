#include "equistate/numerics/ball.hpp"

#include <cmath>
#include <cstdio>

#include "equistate/error.hpp"

namespace equistate {

namespace {

constexpr std::int64_t kMaxWorkingBits = 1 << 16;

Dyadic rad_up(const Dyadic& r) { return round_rel(r, kRadiusBits, Round::Up); }

Dyadic rad_up(const Rational& r) {
  if (r <= 0) return Dyadic();
  return round_rel(r, kRadiusBits, Round::Up);
}

// Rounds an exact value to `prec` bits and returns the ball holding it.
BallReal rounded(const Dyadic& exact, const Dyadic& rad, std::int64_t prec) {
  Dyadic m = round_rel(exact, prec, Round::Nearest);
  return BallReal(m, rad_up(rad + (exact - m).abs()));
}

BallReal round_mid_abs(const BallReal& b, std::int64_t bits) {
  Dyadic m = round_abs(b.mid, bits, Round::Nearest);
  return BallReal(m, rad_up(b.rad + (b.mid - m).abs()));
}

BallReal exp_point(const Dyadic& x, std::int64_t prec) {
  if (x.is_zero()) return BallReal(Dyadic(1));
  if (x.msb() > 24) throw Error(ErrorKind::PrecisionExhausted, "exp argument too large");
  double xd = x.to_double();
  auto value_bits = static_cast<std::int64_t>(std::max(0.0, std::ceil(xd * 1.4426950408889634)) + 2);
  std::int64_t s = std::max<std::int64_t>(0, x.msb() + 9);
  Dyadic target = Dyadic::pow2(-prec - 1);
  for (std::int64_t wp = prec + 24 + s + value_bits; wp <= kMaxWorkingBits; wp *= 2) {
    Dyadic y = x.mul_2exp(-s);
    BallReal yb = rounded(y, Dyadic(), wp);
    BallReal sum(Dyadic(1));
    BallReal term(Dyadic(1));
    Dyadic stop = Dyadic::pow2(-wp - 4);
    for (long k = 1;; ++k) {
      term = ball_div(ball_mul(term, yb, wp), BallReal(Dyadic(k)), wp);
      sum = ball_add(sum, term, wp);
      if (ball_abs(term).upper() < stop) break;
    }
    // geometric tail with ratio |y| <= 2^-8
    Dyadic tail = ball_abs(term).upper() * ball_abs(yb).upper().mul_2exp(1);
    sum = ball_widen(sum, tail);
    for (std::int64_t i = 0; i < s; ++i) sum = ball_sqr(sum, wp);
    if (sum.rad <= target) return round_mid_abs(sum, prec + 2);
  }
  throw Error(ErrorKind::PrecisionExhausted, "exp did not reach requested precision");
}

// atanh(z) for |z| <= 1/3
BallReal atanh_small(const Rational& z, std::int64_t wp) {
  BallReal zb = BallReal::from_rational(z, wp);
  BallReal z2 = ball_sqr(zb, wp);
  BallReal pw = zb;
  BallReal sum = zb;
  Dyadic stop = Dyadic::pow2(-wp - 4);
  for (long k = 1;; ++k) {
    pw = ball_mul(pw, z2, wp);
    sum = ball_add(sum, ball_div(pw, BallReal(Dyadic(2 * k + 1)), wp), wp);
    if (ball_abs(pw).upper() < stop) break;
  }
  // tail <= |pw| * z^2 / (1 - z^2) <= |pw| * z^2 * 9/8
  Rational tail = ball_abs(pw).upper().to_rational() * ball_abs(z2).upper().to_rational() * Rational(9, 8);
  return ball_widen(sum, rad_up(tail));
}

BallReal log_point(const Dyadic& x, std::int64_t prec) {
  if (x.sign() <= 0) throw Error(ErrorKind::NonPositiveArgument, "log of non-positive value");
  if (x == Dyadic(1)) return BallReal(Dyadic());
  std::int64_t e = x.msb() + 1;
  Rational m = x.mul_2exp(-e).to_rational();  // in [1/2, 1)
  Rational z = (m - 1) / (m + 1);
  auto ebits = static_cast<std::int64_t>(std::ceil(std::log2(std::abs(static_cast<double>(e)) + 2.0)));
  Dyadic target = Dyadic::pow2(-prec - 1);
  for (std::int64_t wp = prec + 16 + ebits; wp <= kMaxWorkingBits; wp *= 2) {
    BallReal r = ball_mul_2exp(atanh_small(z, wp), 1);
    if (e != 0) {
      BallReal ln2 = ball_mul_2exp(atanh_small(Rational(1, 3), wp), 1);
      r = ball_add(r, ball_mul(ln2, BallReal(Dyadic(static_cast<long>(e))), wp), wp);
    }
    if (r.rad <= target) return round_mid_abs(r, prec + 2);
  }
  throw Error(ErrorKind::PrecisionExhausted, "log did not reach requested precision");
}

}  // namespace

BallReal::BallReal(Dyadic m, Dyadic r) : mid(std::move(m)), rad(std::move(r)) {
  if (rad.sign() < 0) throw Error(ErrorKind::InvalidArgument, "negative ball radius");
}

BallReal BallReal::from_rational(const Rational& q, std::int64_t prec) {
  Dyadic m = round_rel(q, prec, Round::Nearest);
  return BallReal(m, rad_up(abs(q - m.to_rational())));
}

BallReal BallReal::from_interval(const Dyadic& lo, const Dyadic& hi) {
  if (hi < lo) throw Error(ErrorKind::InvalidArgument, "empty interval");
  Dyadic m = (lo + hi).mul_2exp(-1);
  return BallReal(m, rad_up((hi - lo).mul_2exp(-1)));
}

bool BallReal::contains(const Rational& q) const { return abs(q - mid.to_rational()) <= rad.to_rational(); }

bool BallReal::contains(const BallReal& b) const { return lower() <= b.lower() && b.upper() <= upper(); }

bool BallReal::overlaps(const BallReal& b) const { return lower() <= b.upper() && b.lower() <= upper(); }

std::string BallReal::to_string() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g +/- %.3g", mid.to_double(), rad.to_double());
  return buf;
}

BallReal ball_neg(const BallReal& a) { return BallReal(-a.mid, a.rad); }

BallReal ball_abs(const BallReal& a) {
  if (a.mid.sign() >= 0 && a.lower().sign() >= 0) return a;
  if (a.upper().sign() <= 0) return ball_neg(a);
  return BallReal::from_interval(Dyadic(), max(a.lower().abs(), a.upper().abs()));
}

BallReal ball_add(const BallReal& a, const BallReal& b, std::int64_t prec) {
  return rounded(a.mid + b.mid, a.rad + b.rad, prec);
}

BallReal ball_sub(const BallReal& a, const BallReal& b, std::int64_t prec) {
  return rounded(a.mid - b.mid, a.rad + b.rad, prec);
}

BallReal ball_mul(const BallReal& a, const BallReal& b, std::int64_t prec) {
  Dyadic r = a.mid.abs() * b.rad + b.mid.abs() * a.rad + a.rad * b.rad;
  return rounded(a.mid * b.mid, r, prec);
}

BallReal ball_sqr(const BallReal& a, std::int64_t prec) {
  Dyadic r = (a.mid.abs() * a.rad).mul_2exp(1) + a.rad * a.rad;
  return rounded(a.mid * a.mid, r, prec);
}

BallReal ball_div(const BallReal& a, const BallReal& b, std::int64_t prec) {
  if (b.contains_zero()) throw Error(ErrorKind::NonPositiveArgument, "division by a ball containing 0");
  Rational am = a.mid.to_rational();
  Rational bm = b.mid.to_rational();
  Rational q = am / bm;
  Dyadic m = round_rel(q, prec, Round::Nearest);
  Rational prop = (a.rad.to_rational() + abs(q) * b.rad.to_rational()) / (abs(bm) - b.rad.to_rational());
  return BallReal(m, rad_up(prop + abs(q - m.to_rational())));
}

BallReal ball_mul_2exp(const BallReal& a, std::int64_t k) {
  return BallReal(a.mid.mul_2exp(k), a.rad.mul_2exp(k));
}

BallReal ball_sqrt(const BallReal& a, std::int64_t prec) {
  if (a.negative()) throw Error(ErrorKind::NonPositiveArgument, "sqrt of a negative ball");
  if (a.is_exact()) {
    Dyadic lo = sqrt(a.mid, prec, Round::Down);
    Dyadic hi = sqrt(a.mid, prec, Round::Up);
    return BallReal::from_interval(lo, hi);
  }
  Dyadic lo = a.lower().sign() > 0 ? sqrt(a.lower(), prec, Round::Down) : Dyadic();
  Dyadic hi = sqrt(a.upper(), prec, Round::Up);
  return BallReal::from_interval(lo, hi);
}

BallReal ball_exp(const BallReal& a, std::int64_t prec) {
  if (a.is_exact()) return exp_point(a.mid, prec);
  BallReal lo = exp_point(a.lower(), prec + 2);
  BallReal hi = exp_point(a.upper(), prec + 2);
  return round_mid_abs(BallReal::from_interval(lo.lower(), hi.upper()), prec + 3);
}

BallReal ball_log(const BallReal& a, std::int64_t prec) {
  if (a.lower().sign() <= 0) throw Error(ErrorKind::NonPositiveArgument, "log of a ball touching (-inf, 0]");
  if (a.is_exact()) return log_point(a.mid, prec);
  BallReal lo = log_point(a.lower(), prec + 2);
  BallReal hi = log_point(a.upper(), prec + 2);
  return round_mid_abs(BallReal::from_interval(lo.lower(), hi.upper()), prec + 3);
}

BallReal ball_max(const BallReal& a, const BallReal& b) {
  if (a.lower() >= b.upper()) return a;
  if (b.lower() >= a.upper()) return b;
  return BallReal::from_interval(max(a.lower(), b.lower()), max(a.upper(), b.upper()));
}

BallReal ball_min(const BallReal& a, const BallReal& b) {
  if (a.upper() <= b.lower()) return a;
  if (b.upper() <= a.lower()) return b;
  return BallReal::from_interval(min(a.lower(), b.lower()), min(a.upper(), b.upper()));
}

BallReal ball_hull(const BallReal& a, const BallReal& b) {
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  return BallReal::from_interval(min(a.lower(), b.lower()), max(a.upper(), b.upper()));
}

BallReal ball_widen(const BallReal& a, const Dyadic& e) {
  if (e.is_zero()) return a;
  return BallReal(a.mid, rad_up(a.rad + e.abs()));
}

BallReal ball_ln2(std::int64_t prec) { return log_point(Dyadic(2), prec); }

}  // namespace equistate
