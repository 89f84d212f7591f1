#include <doctest.h>

#include "equistate/error.hpp"
#include "equistate/io/json.hpp"
#include "equistate/thermo/ruelle.hpp"

using namespace equistate;
using io::json;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

bool same(const FiniteMeasure& a, const FiniteMeasure& b) {
  if (a.space() != b.space() || a.size() != b.size() || a.mass() != b.mass()) return false;
  if (!(a.displacement() == b.displacement())) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.atoms()[i].point != b.atoms()[i].point || a.atoms()[i].weight != b.atoms()[i].weight) return false;
  return true;
}

}  // namespace

TEST_CASE("scalars serialize as exact strings") {
  CHECK(io::to_json(Rational(-6, 4)) == "-3/2");
  CHECK(io::rational_from_json(json("-3/2")) == Rational(-3, 2));
  CHECK(io::rational_from_json(json(7)) == 7);
  Dyadic d(5, -3);
  CHECK(io::dyadic_from_json(io::to_json(d)) == d);
  BallReal b(Dyadic(3, -1), Dyadic(1, -20));
  BallReal c = io::ball_from_json(io::to_json(b));
  CHECK(c.mid == b.mid);
  CHECK(c.rad == b.rad);
  CHECK(kind_of([] { io::rational_from_json(json("1/0")); }) == ErrorKind::Parse);
}

TEST_CASE("points") {
  CHECK(io::to_json(SpherePoint::infinity()) == "inf");
  SpherePoint p(Rational(1, 2), Rational(-3));
  json j = io::to_json(p);
  CHECK(j["re"] == "1/2");
  CHECK(j["im"] == "-3");
  CHECK(std::get<SpherePoint>(io::point_from_json(j, Space::RiemannSphere)) == p);
  CHECK(io::parse_sphere_point("1/2-3*i") == p);
  CHECK(io::parse_sphere_point("inf").is_infinity());

  TilePoint t(Face::Back, {Rational(1, 6), Rational(1, 2), Rational(1, 3)});
  CHECK(std::get<TilePoint>(io::point_from_json(io::to_json(t), Space::TriSphere)) == t);
  CHECK(io::parse_tile_point(t.to_string()) == t);
  CHECK(kind_of([] { io::parse_tile_point("X(1,0,0)"); }) == ErrorKind::Parse);
}

TEST_CASE("measure round trips") {
  FiniteMeasure mu(Space::RiemannSphere, {{SpherePoint(Rational(1, 3)), Rational(1, 4)},
                                          {SpherePoint::infinity(), Rational(1, 2)},
                                          {SpherePoint(Rational(0), Rational(2)), Rational(1, 4)}});
  mu.set_displacement(Dyadic(3, -40));
  FiniteMeasure back = io::measure_from_json(json::parse(io::dump(io::to_json(mu))));
  CHECK(same(mu, back));

  FiniteMeasure sub(Space::RiemannSphere, {{SpherePoint(1), Rational(1, 3)}}, FiniteMeasure::Mass::Sub);
  CHECK(same(sub, io::measure_from_json(io::to_json(sub))));

  FiniteMeasure tiles = mme_tile_measure(Rule::G2, 2);
  json tj = io::to_json(tiles);
  CHECK(tj["space"] == "tri_sphere");
  CHECK(same(tiles, io::measure_from_json(tj)));

  // missing weights and unnormalized input are rejected
  CHECK(kind_of([] { io::measure_from_json(json::parse(R"({"space":"riemann_sphere","atoms":[{"point":"inf"}]})")); }) ==
        ErrorKind::Parse);
  CHECK(kind_of([] {
          io::measure_from_json(
              json::parse(R"({"space":"riemann_sphere","atoms":[{"point":"inf","weight":"1/2"}]})"));
        }) == ErrorKind::InvalidArgument);
}

TEST_CASE("measure csv") {
  FiniteMeasure mu(Space::RiemannSphere, {{SpherePoint(Rational(1, 2)), Rational(1, 2)},
                                          {SpherePoint::infinity(), Rational(1, 2)}});
  std::string csv = io::measure_csv(mu);
  CHECK(csv.rfind("point,re,im,weight\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  std::string tri = io::measure_csv(mme_tile_measure(Rule::G1, 1));
  CHECK(tri.rfind("point,face,x,y,weight\n", 0) == 0);
  CHECK(std::count(tri.begin(), tri.end(), '\n') == 13);
}

TEST_CASE("maps") {
  RationalMap f = RationalMap::parse("(z^2+1/2*i)/(2*z-1)");
  json j = io::to_json(f);
  RationalMap g = io::map_from_json(j);
  CHECK(g.to_string() == f.to_string());
  json k = json::parse(R"({"num":["-2","0","1"],"den":["1"]})");
  CHECK(io::map_from_json(k).to_string() == RationalMap::parse("z^2-2").to_string());
  CHECK(io::map_from_json(json("z^3")).degree() == 3);
  CHECK(kind_of([] { io::map_from_json(json::parse(R"({"num":["1","1"]})")); }) == ErrorKind::Parse);
}

TEST_CASE("potentials") {
  SpherePoint x(Rational(1, 3), Rational(1, 5));
  Potential phi = Potential::sum({Potential::scale(Rational(-2, 3), Potential::basis(SpherePoint(Rational(1, 2)))),
                                  Potential::prod({Potential::basis(SpherePoint::infinity()),
                                                   Potential::hat(SpherePoint(0), Rational(1, 4), Rational(1, 8))}),
                                  Potential::constant(Rational(5, 7))});
  Potential back = io::potential_from_json(json::parse(io::dump(io::to_json(phi))));
  CHECK(back.to_string() == phi.to_string());
  CHECK(holder_bound(back) == holder_bound(phi));
  BallReal a = phi(x, 60), b = back(x, 60);
  CHECK(a.mid == b.mid);

  CHECK(io::parse_potential("const:-1/2").constant_value() == Rational(-1, 2));
  CHECK(io::parse_potential("basis:inf").op() == Potential::Op::Basis);
  Potential h = io::parse_potential("hat:1+i,1/4,1/8");
  CHECK(h.op() == Potential::Op::Hat);
  CHECK(h.hat_eps() == Rational(1, 8));
  CHECK(io::parse_potential(R"({"op":"const","value":"3"})").constant_value() == Rational(3));
  CHECK(kind_of([] { io::parse_potential("wave:1"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { io::parse_potential("hat:0,1"); }) == ErrorKind::Parse);
}

TEST_CASE("pressure and tile complex records") {
  PressureOptions opt;
  opt.c0 = 1;
  PressureResult r = pressure(RationalMap::parse("z^2"), Potential::constant(0), 8, opt);
  json j = io::to_json(r);
  for (const char* key : {"value", "radius", "N_used", "anchor", "anchor_index", "c0_used", "R_used", "certified", "mode"})
    CHECK(j.contains(key));
  CHECK(j["mode"] == "certified");
  CHECK(j["lower"].get<double>() <= 0.6931471805599453);
  CHECK(j["upper"].get<double>() >= 0.6931471805599453);

  TileComplex c = tile_complex(Rule::G1, 2);
  json t = io::to_json(c);
  CHECK(t["rule"] == "g1");
  CHECK(t["level"] == 2);
  CHECK(t["tiles"].size() == 72);
  CHECK(t["parent"].size() == 72);
  CHECK(t["tiles"][5]["verts"].size() == 3);
}
