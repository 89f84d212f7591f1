#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "equistate/sphere/sphere_point.hpp"
#include "equistate/thurston/tri_point.hpp"

namespace equistate {

enum class Space { RiemannSphere, TriSphere };

std::string_view to_string(Space s);
Space parse_space(std::string_view s);

using MeasurePoint = std::variant<SpherePoint, TilePoint>;

Space space_of(const MeasurePoint& p);
std::string to_string(const MeasurePoint& p);
bool point_less(const MeasurePoint& a, const MeasurePoint& b);

/// rho(a, b): chordal on the sphere, intrinsic on the doubled triangle.
/// Throws SpaceMismatch for points of different spaces.
BallReal distance(const MeasurePoint& a, const MeasurePoint& b, std::int64_t prec);

struct Atom {
  MeasurePoint point;
  Rational weight;
};

/// Finitely supported measure with exact positive rational weights.
class FiniteMeasure {
 public:
  enum class Mass { Probability, Sub };

  FiniteMeasure() = default;
  /// Merges coinciding points and sorts atoms. With Mass::Probability the weights
  /// must sum to exactly 1; with Mass::Sub to at most 1. Throws InvalidArgument.
  FiniteMeasure(Space space, std::vector<Atom> atoms, Mass mass = Mass::Probability);

  static FiniteMeasure dirac(const MeasurePoint& p);

  Space space() const { return space_; }
  Mass mass() const { return mass_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  Rational total_mass() const;

  /// Bound on the transport distance between this measure and the ideal one it
  /// approximates (atom displacement plus weight rounding). Zero when exact.
  const Dyadic& displacement() const { return displacement_; }
  void set_displacement(Dyadic d) { displacement_ = std::move(d); }

  /// c * mu for 0 < c <= 1, as a subprobability measure.
  FiniteMeasure scaled(const Rational& c) const;

 private:
  Space space_ = Space::RiemannSphere;
  Mass mass_ = Mass::Probability;
  std::vector<Atom> atoms_;
  Dyadic displacement_;
};

using PointFunction = std::function<BallReal(const MeasurePoint&)>;
using PointMap = std::function<MeasurePoint(const MeasurePoint&)>;

/// Encloses sum w_i f(p_i); rad <= 2^-prec + sum w_i rad(f(p_i)).
/// Exceptions from f are reported as EvaluationFailure.
BallReal integrate(const FiniteMeasure& mu, const PointFunction& f, std::int64_t prec);

/// Image measure under an exactly evaluable map. T signals InexactImage by throwing.
FiniteMeasure pushforward(const FiniteMeasure& mu, const PointMap& T);

}  // namespace equistate
