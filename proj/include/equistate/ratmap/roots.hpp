#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "equistate/numerics/complex_ball.hpp"
#include "equistate/ratmap/polynomial.hpp"
#include "equistate/sphere/sphere_point.hpp"

namespace equistate {

/// The chordal disc contains exactly `multiplicity` roots counted with multiplicity.
struct RootCluster {
  PointBall disc;
  int multiplicity = 1;
};

/// Roots of p (degree >= 1) as disjoint clusters of chordal radius <= 2^-l, sorted
/// by center. Rational roots that are recognized exactly come back with radius 0.
/// Throws PrecisionExhausted when the internal precision cap is reached.
std::vector<RootCluster> certified_roots(const Polynomial& p, std::int64_t l);

/// Roots of every polynomial whose coefficients lie in the given balls. The last
/// ball is the leading coefficient and must exclude 0. Each returned disc contains
/// exactly `multiplicity` roots of every such polynomial. With best_effort the
/// tightest clusters found are returned even if their radius exceeds 2^-l.
std::vector<RootCluster> certified_roots_ball(const std::vector<ComplexBall>& coeffs, std::int64_t l,
                                              bool best_effort = false);

/// Roots of A - x B (formal degree d) for every x in the closed disc D(x0, e). The
/// leading coefficient must stay away from 0 on the disc (else ChartFailure). Each
/// returned disc contains exactly `multiplicity` roots for every such x.
std::vector<RootCluster> certified_roots_pencil(const Polynomial& a, const Polynomial& b, const GaussianRational& x0,
                                                const Dyadic& e, int d, std::int64_t l, bool best_effort = false);

/// Chordal radius bound of the Euclidean disc D(c, r).
Dyadic chordal_radius_of_disc(const GaussianRational& c, const Dyadic& r);

/// Simplest rational in [lo, hi] (smallest denominator), if one is found within
/// `max_depth` continued-fraction steps.
std::optional<Rational> simplest_rational_between(const Rational& lo, const Rational& hi, int max_depth = 64);

}  // namespace equistate
