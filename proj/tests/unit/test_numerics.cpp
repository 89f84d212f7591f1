#include <doctest.h>

#include <random>

#include "equistate/error.hpp"
#include "equistate/numerics/ball.hpp"
#include "equistate/numerics/directed.hpp"

using namespace equistate;

namespace {

// e as an exact partial sum of 1/k! with the tail 2/(K+1)! as half-width.
std::pair<Rational, Rational> e_oracle() {
  Rational sum = 0, term = 1;
  for (int k = 0; k < 40; ++k) {
    sum += term;
    term /= (k + 1);
  }
  return {sum, 2 * term};
}

// log 2 = sum 1/(k 2^k); tail after K terms is at most 1/(K 2^K).
std::pair<Rational, Rational> ln2_oracle() {
  Rational sum = 0;
  Rational p = Rational(1, 2);
  int k = 1;
  for (; k <= 400; ++k) {
    sum += p / k;
    p /= 2;
  }
  return {sum, p * 2 / k};
}

// The true value lies in [mid - err, mid + err]; the ball must reach it.
bool encloses_interval(const BallReal& b, const std::pair<Rational, Rational>& o) {
  return abs(b.mid.to_rational() - o.first) <= b.rad.to_rational() + o.second;
}

// exp(x) for |x| < 1/2 as a rational partial sum with tail 2|x|^K/K!.
std::pair<Rational, Rational> exp_oracle(const Rational& x) {
  Rational sum = 0, term = 1;
  int k = 0;
  for (; k < 40; ++k) {
    sum += term;
    term *= x;
    term /= (k + 1);
  }
  return {sum, 2 * abs(term)};
}

Dyadic random_dyadic(std::mt19937_64& rng, int bits, int exp_lo, int exp_hi) {
  std::uniform_int_distribution<long> m(-(1L << bits), 1L << bits);
  std::uniform_int_distribution<int> e(exp_lo, exp_hi);
  return Dyadic(BigInt(m(rng)), e(rng));
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-2/-4")) == "1/2");
  CHECK(to_string(parse_rational("-1.25")) == "-5/4");
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK(floor_log2(Rational(1, 3)) == -2);
  CHECK(floor_log2(Rational(8)) == 3);
  CHECK(floor_plus_one(Rational(5, 2)) == 3);
  CHECK(floor_plus_one(Rational(2)) == 3);
}

TEST_CASE("dyadic normalization, rounding and string form") {
  Dyadic d(BigInt(12), 0);
  CHECK(d.mantissa() == 3);
  CHECK(d.exponent() == 2);
  CHECK(d.to_string() == "3*2^2");
  CHECK(Dyadic::parse("3*2^2") == Dyadic(12));
  CHECK(Dyadic::parse("-5*2^-3").to_rational() == Rational(-5, 8));
  Dyadic x(BigInt(0b101101), 0);  // 45
  CHECK(round_rel(x, 3, Round::Down) == Dyadic(40));
  CHECK(round_rel(x, 3, Round::Up) == Dyadic(48));
  CHECK(round_rel(x, 3, Round::Nearest) == Dyadic(48));
  CHECK(round_abs(Rational(1, 3), 4, Round::Down).to_rational() == Rational(5, 16));
  CHECK(round_abs(Rational(1, 3), 4, Round::Up).to_rational() == Rational(3, 8));
  Dyadic s_lo = sqrt(Dyadic(2), 40, Round::Down);
  Dyadic s_hi = sqrt(Dyadic(2), 40, Round::Up);
  CHECK(compare(s_lo * s_lo, Rational(2)) < 0);
  CHECK(compare(s_hi * s_hi, Rational(2)) > 0);
  CHECK(sqrt(Dyadic(9), 10, Round::Up) == Dyadic(3));
  CHECK(sqrt(Dyadic(9), 10, Round::Down) == Dyadic(3));
}

TEST_CASE("ball_add examples") {
  BallReal z;
  BallReal s = ball_add(z, z, 64);
  CHECK(s.mid.is_zero());
  CHECK(s.rad.is_zero());

  BallReal a(Dyadic(1), Dyadic::pow2(-2));
  BallReal b(Dyadic(2), Dyadic::pow2(-2));
  BallReal c = ball_add(a, b, 64);
  CHECK(c.mid == Dyadic(3));
  CHECK(c.rad == Dyadic::pow2(-1));

  BallReal third = BallReal::from_rational(Rational(1, 3), 20);
  BallReal two_thirds = ball_add(third, third, 64);
  CHECK(two_thirds.contains(Rational(2, 3)));
  CHECK(two_thirds.rad <= Dyadic::pow2(-18));
}

TEST_CASE("ball_exp examples") {
  BallReal e0 = ball_exp(BallReal(), 30);
  CHECK(e0.contains(Rational(1)));
  CHECK(e0.rad <= Dyadic::pow2(-30));

  BallReal e1 = ball_exp(BallReal(Dyadic(1)), 30);
  CHECK(encloses_interval(e1, e_oracle()));
  CHECK(e1.rad <= Dyadic::pow2(-30));

  // e^{±1/8} bracketed by e^{-1/8} >= 1 - 1/8 and e^{1/8} <= 1 + 1/8 + 1/64
  BallReal w = ball_exp(BallReal(Dyadic(), Dyadic::pow2(-3)), 10);
  BallReal lo = ball_exp(BallReal(Dyadic::pow2(-3).mul_2exp(0) * Dyadic(-1)), 40);
  BallReal hi = ball_exp(BallReal(Dyadic::pow2(-3)), 40);
  CHECK(w.lower() <= lo.lower());
  CHECK(w.upper() >= hi.upper());
}

TEST_CASE("ball_log examples") {
  BallReal l1 = ball_log(BallReal(Dyadic(1)), 30);
  CHECK(l1.contains(Rational(0)));
  CHECK(l1.rad <= Dyadic::pow2(-30));

  BallReal l2 = ball_log(BallReal(Dyadic(2)), 30);
  CHECK(encloses_interval(l2, ln2_oracle()));
  CHECK(l2.rad <= Dyadic::pow2(-30));

  BallReal l2_hi = ball_log(BallReal(Dyadic(2)), 200);
  CHECK(encloses_interval(l2_hi, ln2_oracle()));
  CHECK(l2_hi.rad <= Dyadic::pow2(-200));

  CHECK_THROWS_AS(ball_log(BallReal(Dyadic(), Dyadic::pow2(-1)), 30), Error);
  try {
    ball_log(BallReal(Dyadic(-3)), 30);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPositiveArgument);
  }
}

TEST_CASE("radius contract on point inputs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    Dyadic x = random_dyadic(rng, 20, -22, -14);
    for (std::int64_t p : {10, 53, 120}) {
      CHECK(ball_exp(BallReal(x), p).rad <= Dyadic::pow2(-p));
      if (x.sign() > 0) CHECK(ball_log(BallReal(x), p).rad <= Dyadic::pow2(-p));
    }
  }
}

TEST_CASE("enclosure soundness on sampled interior points") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    BallReal a(random_dyadic(rng, 16, -18, -17), Dyadic(BigInt(1 + i % 5), -22));
    BallReal b(random_dyadic(rng, 16, -18, -12), Dyadic(BigInt(1 + i % 3), -23));
    if (b.contains_zero()) continue;
    BallReal sum = ball_add(a, b, 24);
    BallReal prod = ball_mul(a, b, 24);
    BallReal quot = ball_div(a, b, 24);
    BallReal ex = ball_exp(a, 40);
    for (int t = 0; t <= 4; ++t) {
      Rational xa = a.lower().to_rational() + (a.rad.to_rational() * 2) * Rational(t, 4);
      Rational xb = b.upper().to_rational() - (b.rad.to_rational() * 2) * Rational(t, 4);
      CHECK(sum.contains(xa + xb));
      CHECK(prod.contains(xa * xb));
      CHECK(quot.contains(xa / xb));
      auto o = exp_oracle(xa);
      CHECK(ex.contains(o.first - o.second));
      CHECK(ex.contains(o.first + o.second));
    }
  }
}

TEST_CASE("exp/log round trip encloses the input ball") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    Dyadic m = random_dyadic(rng, 12, -8, -2).abs() + Dyadic::pow2(-6);
    BallReal a(m, Dyadic::pow2(-12));
    BallReal r = ball_log(ball_exp(a, 50), 50);
    CHECK(r.contains(a));
  }
}

TEST_CASE("sqrt and hull") {
  BallReal r = ball_sqrt(BallReal(Dyadic(2)), 60);
  CHECK(compare(r.lower() * r.lower(), Rational(2)) <= 0);
  CHECK(compare(r.upper() * r.upper(), Rational(2)) >= 0);
  CHECK(r.rad <= Dyadic::pow2(-58));
  BallReal h = ball_hull(BallReal(Dyadic(0)), BallReal(Dyadic(1)));
  CHECK(h.contains(Rational(0)));
  CHECK(h.contains(Rational(1)));
  CHECK_THROWS_AS(ball_div(BallReal(Dyadic(1)), BallReal(Dyadic(0), Dyadic(1)), 20), Error);
}

TEST_CASE("directed_push examples") {
  DirectedReal lo(Direction::Lower, {Rational(0)});
  DirectedReal lo2 = lo.push(Rational(1, 2));
  CHECK(lo2.terms().size() == 2);
  CHECK(lo2.last() == Rational(1, 2));
  try {
    lo2.push(Rational(1, 4));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MonotonicityViolation);
  }
  DirectedReal up(Direction::Upper, {Rational(1)});
  CHECK(up.push(Rational(1, 2)).terms().size() == 2);
}
