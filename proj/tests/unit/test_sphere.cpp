#include <doctest.h>

#include <random>
#include <set>

#include "equistate/sphere/enumeration.hpp"
#include "equistate/sphere/oracle.hpp"

using namespace equistate;

namespace {

SpherePoint random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 9);
  if (num(rng) == 40) return SpherePoint::infinity();
  return SpherePoint(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}

// sigma^2 from the formula in real coordinates, computed in doubles
double sigma_double(double x1, double y1, double x2, double y2) {
  double d2 = (x1 - x2) * (x1 - x2) + (y1 - y2) * (y1 - y2);
  return 2 * std::sqrt(d2) / std::sqrt((1 + x1 * x1 + y1 * y1) * (1 + x2 * x2 + y2 * y2));
}

}  // namespace

TEST_CASE("chordal examples") {
  BallReal a = chordal(SpherePoint(0), SpherePoint::infinity(), 40);
  CHECK(a.mid == Dyadic(2));
  CHECK(a.rad.is_zero());
  BallReal b = chordal(SpherePoint(0), SpherePoint(1), 40);
  CHECK(compare(b.lower() * b.lower(), Rational(2)) <= 0);
  CHECK(compare(b.upper() * b.upper(), Rational(2)) >= 0);
  CHECK(b.rad <= Dyadic::pow2(-40));
  BallReal c = chordal(SpherePoint(1), SpherePoint(-1), 40);
  CHECK(c.mid == Dyadic(2));
  CHECK(c.rad.is_zero());
  CHECK(chordal(SpherePoint::infinity(), SpherePoint::infinity(), 10).mid.is_zero());
}

TEST_CASE("chordal metric axioms on random points") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    SpherePoint x = random_point(rng), y = random_point(rng), z = random_point(rng);
    BallReal xy = chordal(x, y, 50), yx = chordal(y, x, 50);
    CHECK(xy.mid == yx.mid);
    CHECK(xy.rad == yx.rad);
    CHECK(xy.lower() <= Dyadic(2));
    CHECK(xy.upper().sign() >= 0);
    CHECK((chordal_squared(x, y) == 0) == (x == y));
    BallReal yz = chordal(y, z, 50), xz = chordal(x, z, 50);
    CHECK(xz.lower() <= xy.upper() + yz.upper());
    if (!x.is_infinity() && !y.is_infinity()) {
      double d = sigma_double(x.re().get_d(), x.im().get_d(), y.re().get_d(), y.im().get_d());
      CHECK(std::abs(d - xy.to_double()) < 1e-12);
    }
  }
}

TEST_CASE("ideal enumeration") {
  CHECK(ideal_enumerate(BigInt(1)) == SpherePoint(0));
  CHECK(ideal_enumerate(BigInt(2)).is_infinity());
  std::set<std::string> seen;
  for (long k = 1; k <= 100; ++k) {
    SpherePoint p = ideal_enumerate(BigInt(k));
    CHECK(seen.insert(p.to_string()).second);
    CHECK(ideal_index(p) == k);
  }
  // a few arbitrary points are reached at a finite index that maps back
  for (auto& p : {SpherePoint(Rational(3, 7), Rational(-5, 2)), SpherePoint(Rational(-11, 4), Rational(0)),
                  SpherePoint(Rational(0), Rational(1, 1000))}) {
    BigInt k = ideal_index(p);
    CHECK(ideal_enumerate(k) == p);
  }
  // first Calkin-Wilf terms
  CHECK(calkin_wilf(BigInt(1)) == 1);
  CHECK(calkin_wilf(BigInt(2)) == Rational(1, 2));
  CHECK(calkin_wilf(BigInt(3)) == 2);
  CHECK(calkin_wilf(BigInt(4)) == Rational(1, 3));
  CHECK(calkin_wilf(BigInt(5)) == Rational(3, 2));
}

TEST_CASE("ideal density by bounded search") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    SpherePoint p = random_point(rng);
    for (std::int64_t n = 0; n <= 20; ++n) {
      auto [k, q] = ideal_approximation(p, n);
      CHECK(ideal_enumerate(k) == q);
      CHECK(chordal_less_pow2(p, q, n));
    }
  }
}

TEST_CASE("oracles") {
  Oracle o = oracle_of(SpherePoint(1, 1));
  for (std::int64_t n = 0; n < 10; ++n) CHECK(o.query(n) == SpherePoint(1, 1));
  Oracle inf = oracle_of(SpherePoint::infinity());
  for (std::int64_t n = 0; n < 30; ++n) {
    SpherePoint t = inf.query(n);
    CHECK(!t.is_infinity());
    CHECK(chordal_less_pow2(t, SpherePoint::infinity(), n));
  }
  CHECK(oracle_consistent(inf, 5, 10));
  CHECK(oracle_consistent(o, 5, 10));
}

TEST_CASE("Gaussian rational strings") {
  CHECK(GaussianRational::parse("1/2+3/4*i") == GaussianRational(Rational(1, 2), Rational(3, 4)));
  CHECK(GaussianRational::parse("-i") == GaussianRational(Rational(0), Rational(-1)));
  CHECK(GaussianRational::parse("2-i") == GaussianRational(Rational(2), Rational(-1)));
  CHECK(GaussianRational::parse("-2") == GaussianRational(Rational(-2), Rational(0)));
  CHECK(GaussianRational(Rational(1, 2), Rational(-3)).to_string() == "1/2-3*i");
}
