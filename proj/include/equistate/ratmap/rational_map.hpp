#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "equistate/ratmap/polynomial.hpp"
#include "equistate/ratmap/roots.hpp"
#include "equistate/sphere/sphere_point.hpp"

namespace equistate {

/// f = num / den with coprime polynomials.
class RationalMap {
 public:
  /// Throws NotCoprime when num and den share a root, InvalidArgument when den = 0
  /// or the map is constant.
  RationalMap(Polynomial num, Polynomial den);

  /// Parses an expression in z such as "z^2-2" or "(z^2+1)/(z^2-1)".
  static RationalMap parse(std::string_view expr);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  int degree() const { return degree_; }

  SpherePoint operator()(const SpherePoint& z) const;
  /// num' den - num den'.
  Polynomial wronskian() const;
  std::string to_string() const;

 private:
  Polynomial num_, den_;
  int degree_ = 0;
};

/// Preimages of x as clusters whose multiplicities are local degrees; they sum to deg f.
std::vector<RootCluster> preimages(const RationalMap& f, const SpherePoint& x, std::int64_t l);

/// Preimages of every point of the chordal ball x. Each returned disc contains
/// exactly `multiplicity` preimages of each point of x. The ball radius must be at
/// most 1/4. With best_effort, discs may exceed 2^-l when x is too wide.
std::vector<RootCluster> preimages(const RationalMap& f, const PointBall& x, std::int64_t l,
                                   bool best_effort = false);

/// Critical points with multiplicities summing to 2 deg f - 2.
std::vector<RootCluster> critical_points(const RationalMap& f, std::int64_t l);

struct CriticalOrbit {
  SpherePoint critical;
  int preperiod = 0;  // steps before entering the cycle
  int period = 0;
};

struct PostcriticalResult {
  bool finite = false;  // false means undecided
  std::vector<SpherePoint> post;
  std::vector<CriticalOrbit> orbits;
};

/// Exact iteration of the critical points for at most maxlen steps each.
PostcriticalResult postcritical_orbit(const RationalMap& f, int maxlen);

}  // namespace equistate
