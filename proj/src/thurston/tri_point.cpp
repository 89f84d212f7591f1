#include "equistate/thurston/tri_point.hpp"

#include <cmath>

#include "equistate/error.hpp"
#include "equistate/sphere/sphere_point.hpp"

namespace equistate {

TilePoint::TilePoint(Face face, std::array<Rational, 3> coords) : face_(face), c_(std::move(coords)) {
  for (auto& x : c_) {
    x.canonicalize();
    if (x < 0) throw Error(ErrorKind::InvalidArgument, "negative barycentric coordinate");
  }
  if (c_[0] + c_[1] + c_[2] != 1) throw Error(ErrorKind::InvalidArgument, "barycentric coordinates must sum to 1");
  if (on_boundary()) face_ = Face::Front;
}

TilePoint TilePoint::vertex(int i) {
  std::array<Rational, 3> c{Rational(0), Rational(0), Rational(0)};
  c[static_cast<std::size_t>(i)] = 1;
  return TilePoint(Face::Front, c);
}

TilePoint TilePoint::barycenter(Face face) {
  return TilePoint(face, {Rational(1, 3), Rational(1, 3), Rational(1, 3)});
}

std::string TilePoint::to_string() const {
  return std::string(face_ == Face::Front ? "F" : "B") + "(" + equistate::to_string(c_[0]) + "," +
         equistate::to_string(c_[1]) + "," + equistate::to_string(c_[2]) + ")";
}

bool operator<(const TilePoint& a, const TilePoint& b) {
  if (a.face() != b.face()) return a.face() < b.face();
  return a.coords() < b.coords();
}

Rational planar_distance_squared(const std::array<Rational, 3>& p, const std::array<Rational, 3>& q) {
  Rational a = p[0] - q[0], b = p[1] - q[1], c = p[2] - q[2];
  return -(a * b + b * c + c * a);
}

namespace {

using Bary = std::array<Rational, 3>;

// q reflected across the edge opposite vertex k
Bary reflect(const Bary& q, int k) {
  Bary r = q;
  auto kk = static_cast<std::size_t>(k);
  for (std::size_t i = 0; i < 3; ++i) r[i] = i == kk ? Rational(-q[i]) : Rational(q[i] + q[kk]);
  return r;
}

Bary vertex_bary(int i) {
  Bary v{Rational(0), Rational(0), Rational(0)};
  v[static_cast<std::size_t>(i)] = 1;
  return v;
}

// Path lengths across the edge opposite vertex k. A straight crossing is one
// squared length; otherwise the two routes through the edge endpoints, each a
// sum of two roots.
struct Crossing {
  bool straight;
  Rational d2;
  std::array<std::array<Rational, 2>, 2> via;
};

Crossing crossing(const Bary& p, const Bary& q, int k) {
  auto kk = static_cast<std::size_t>(k);
  Bary qr = reflect(q, k);
  Rational denom = p[kk] - qr[kk];
  bool hits = true;
  if (denom > 0) {
    Rational t = p[kk] / denom;
    for (std::size_t i = 0; i < 3; ++i) {
      if (i == kk) continue;
      if (p[i] + t * (qr[i] - p[i]) < 0) hits = false;
    }
  }
  Crossing c{hits, 0, {}};
  if (hits) {
    c.d2 = planar_distance_squared(p, qr);
    return c;
  }
  for (int s = 0; s < 2; ++s) {
    Bary v = vertex_bary((k + 1 + s) % 3);
    c.via[static_cast<std::size_t>(s)] = {planar_distance_squared(p, v), planar_distance_squared(q, v)};
  }
  return c;
}

BallReal crossing_ball(const Crossing& c, std::int64_t prec) {
  if (c.straight) return sqrt_rational(c.d2, prec);
  BallReal a = ball_add(sqrt_rational(c.via[0][0], prec + 2), sqrt_rational(c.via[0][1], prec + 2), prec + 8);
  BallReal b = ball_add(sqrt_rational(c.via[1][0], prec + 2), sqrt_rational(c.via[1][1], prec + 2), prec + 8);
  return ball_min(a, b);
}

}  // namespace

BallReal tri_distance(const TilePoint& p, const TilePoint& q, std::int64_t prec) {
  if (p.face() == q.face()) return sqrt_rational(planar_distance_squared(p.coords(), q.coords()), prec);
  BallReal best;
  bool have = false;
  for (int k = 0; k < 3; ++k) {
    BallReal b = crossing_ball(crossing(p.coords(), q.coords(), k), prec);
    best = have ? ball_min(best, b) : b;
    have = true;
  }
  return best;
}

double tri_distance_double(const TilePoint& p, const TilePoint& q) {
  using D3 = std::array<double, 3>;
  D3 a{p[0].get_d(), p[1].get_d(), p[2].get_d()}, b{q[0].get_d(), q[1].get_d(), q[2].get_d()};
  auto d2 = [](const D3& u, const D3& v) {
    double x = u[0] - v[0], y = u[1] - v[1], z = u[2] - v[2];
    return std::max(0.0, -(x * y + y * z + z * x));
  };
  if (p.face() == q.face()) return std::sqrt(d2(a, b));
  double best = 1e300;
  for (std::size_t k = 0; k < 3; ++k) {
    D3 r = b;
    for (std::size_t i = 0; i < 3; ++i) r[i] = i == k ? -b[i] : b[i] + b[k];
    double denom = a[k] - r[k];
    bool hits = true;
    if (denom > 0) {
      double t = a[k] / denom;
      for (std::size_t i = 0; i < 3; ++i)
        if (i != k && a[i] + t * (r[i] - a[i]) < 0) hits = false;
    }
    if (hits) {
      best = std::min(best, std::sqrt(d2(a, r)));
      continue;
    }
    for (std::size_t s = 1; s <= 2; ++s) {
      D3 v{0, 0, 0};
      v[(k + s) % 3] = 1;
      best = std::min(best, std::sqrt(d2(a, v)) + std::sqrt(d2(b, v)));
    }
  }
  return best;
}

}  // namespace equistate
