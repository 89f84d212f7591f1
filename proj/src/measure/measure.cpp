#include "equistate/measure/measure.hpp"

#include <algorithm>
#include <bit>

#include "equistate/error.hpp"

namespace equistate {

std::string_view to_string(Space s) { return s == Space::RiemannSphere ? "riemann_sphere" : "tri_sphere"; }

Space parse_space(std::string_view s) {
  if (s == "riemann_sphere") return Space::RiemannSphere;
  if (s == "tri_sphere") return Space::TriSphere;
  throw Error(ErrorKind::Parse, "unknown space '" + std::string(s) + "'");
}

Space space_of(const MeasurePoint& p) {
  return std::holds_alternative<SpherePoint>(p) ? Space::RiemannSphere : Space::TriSphere;
}

std::string to_string(const MeasurePoint& p) {
  return std::visit([](const auto& x) { return x.to_string(); }, p);
}

bool point_less(const MeasurePoint& a, const MeasurePoint& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  if (auto* s = std::get_if<SpherePoint>(&a)) return *s < std::get<SpherePoint>(b);
  return std::get<TilePoint>(a) < std::get<TilePoint>(b);
}

BallReal distance(const MeasurePoint& a, const MeasurePoint& b, std::int64_t prec) {
  if (a.index() != b.index()) throw Error(ErrorKind::SpaceMismatch, "distance between points of different spaces");
  if (auto* s = std::get_if<SpherePoint>(&a)) return chordal(*s, std::get<SpherePoint>(b), prec);
  return tri_distance(std::get<TilePoint>(a), std::get<TilePoint>(b), prec);
}

FiniteMeasure::FiniteMeasure(Space space, std::vector<Atom> atoms, Mass mass) : space_(space), mass_(mass) {
  for (auto& a : atoms) {
    if (space_of(a.point) != space) throw Error(ErrorKind::SpaceMismatch, "atom outside the measure's space");
    a.weight.canonicalize();
    if (a.weight <= 0) throw Error(ErrorKind::InvalidArgument, "atom weights must be positive");
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& x, const Atom& y) { return point_less(x.point, y.point); });
  for (auto& a : atoms) {
    if (!atoms_.empty() && atoms_.back().point == a.point) atoms_.back().weight += a.weight;
    else atoms_.push_back(std::move(a));
  }
  Rational total = total_mass();
  if (mass == Mass::Probability && total != 1)
    throw Error(ErrorKind::InvalidArgument, "weights sum to " + equistate::to_string(total) + ", not 1");
  if (mass == Mass::Sub && total > 1)
    throw Error(ErrorKind::InvalidArgument, "subprobability mass exceeds 1");
}

FiniteMeasure FiniteMeasure::dirac(const MeasurePoint& p) {
  return FiniteMeasure(space_of(p), {Atom{p, Rational(1)}});
}

Rational FiniteMeasure::total_mass() const {
  Rational t = 0;
  for (auto& a : atoms_) t += a.weight;
  return t;
}

FiniteMeasure FiniteMeasure::scaled(const Rational& c) const {
  if (c <= 0 || c > 1) throw Error(ErrorKind::InvalidArgument, "scale factor must lie in (0, 1]");
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.weight *= c;
  FiniteMeasure m(space_, std::move(atoms), Mass::Sub);
  m.displacement_ = displacement_;
  return m;
}

BallReal integrate(const FiniteMeasure& mu, const PointFunction& f, std::int64_t prec) {
  std::int64_t wp = prec + 16 + static_cast<std::int64_t>(std::bit_width(mu.size()));
  // Weighted rounding errors are accumulated separately so that the radius of the
  // result is exactly the weighted input radii plus at most 2^-prec.
  Rational sum = 0;
  Rational weighted_rad = 0;
  for (const auto& a : mu.atoms()) {
    BallReal v;
    try {
      v = f(a.point);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::PrecisionExhausted) throw;
      throw Error(ErrorKind::EvaluationFailure, "at atom " + to_string(a.point) + ": " + e.what());
    }
    sum += a.weight * v.mid.to_rational();
    weighted_rad += a.weight * v.rad.to_rational();
  }
  Dyadic m = round_rel(sum, wp, Round::Nearest);
  Rational r = weighted_rad + abs(sum - m.to_rational());
  Dyadic rad = r == 0 ? Dyadic() : round_rel(r, kRadiusBits, Round::Up);
  return BallReal(m, rad);
}

FiniteMeasure pushforward(const FiniteMeasure& mu, const PointMap& T) {
  std::vector<Atom> out;
  out.reserve(mu.size());
  for (const auto& a : mu.atoms()) out.push_back(Atom{T(a.point), a.weight});
  Space s = out.empty() ? mu.space() : space_of(out.front().point);
  // The image of the stored atoms is exact; how far it sits from the image of
  // an ideal measure depends on T and is not tracked here.
  return FiniteMeasure(s, std::move(out), mu.mass());
}

}  // namespace equistate
