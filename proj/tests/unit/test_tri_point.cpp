#include <doctest.h>

#include <random>

#include "equistate/thurston/tri_point.hpp"

using namespace equistate;

namespace {

TilePoint random_tile_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> w(0, 12);
  long a = w(rng), b = w(rng), c = w(rng);
  if (a + b + c == 0) a = 1;
  long s = a + b + c;
  Face f = (rng() & 1) ? Face::Front : Face::Back;
  return TilePoint(f, {Rational(a, s), Rational(b, s), Rational(c, s)});
}

}  // namespace

TEST_CASE("tile points canonicalize on the shared boundary") {
  TilePoint a(Face::Back, {Rational(1, 2), Rational(1, 2), Rational(0)});
  TilePoint b(Face::Front, {Rational(1, 2), Rational(1, 2), Rational(0)});
  CHECK(a == b);
  CHECK(a.face() == Face::Front);
  CHECK_THROWS(TilePoint(Face::Front, {Rational(1, 2), Rational(1, 3), Rational(0)}));
}

TEST_CASE("tri-sphere metric values") {
  // side length 1
  BallReal ab = tri_distance(TilePoint::vertex(0), TilePoint::vertex(1), 40);
  CHECK(ab.mid == Dyadic(1));
  // barycenters of the two faces: straight unfolding through an edge midpoint, 2 * (1 / (2 sqrt 3))
  BallReal bb = tri_distance(TilePoint::barycenter(Face::Front), TilePoint::barycenter(Face::Back), 50);
  CHECK(std::abs(bb.to_double() - 1.0 / std::sqrt(3.0)) < 1e-12);
  BallReal aa = tri_distance(TilePoint::barycenter(Face::Front), TilePoint::vertex(0), 50);
  CHECK(std::abs(aa.to_double() - 1.0 / std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("tri-sphere metric axioms on random points") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 3000; ++i) {
    TilePoint p = random_tile_point(rng), q = random_tile_point(rng), r = random_tile_point(rng);
    double pq = tri_distance_double(p, q), qp = tri_distance_double(q, p);
    double pr = tri_distance_double(p, r), qr = tri_distance_double(q, r);
    CHECK(std::abs(pq - qp) < 1e-12);
    CHECK(pr <= pq + qr + 1e-12);
    CHECK((pq < 1e-15) == (p == q));
    CHECK(pq <= 1.0 + 1e-12);
  }
  for (int i = 0; i < 50; ++i) {
    TilePoint p = random_tile_point(rng), q = random_tile_point(rng);
    BallReal d = tri_distance(p, q, 60);
    CHECK(d.rad <= Dyadic::pow2(-58));
    CHECK(std::abs(d.to_double() - tri_distance_double(p, q)) < 1e-12);
  }
}
