#pragma once

#include <optional>
#include <vector>

#include "equistate/measure/measure.hpp"

namespace equistate {

/// Hat function tau(x) = max(0, 1 - max(0, rho(x, center) - r) / eps).
struct TestFunction {
  MeasurePoint center;
  Rational r;
  Rational eps;

  /// Throws InvalidArgument unless r >= 0 and eps > 0.
  TestFunction(MeasurePoint c, Rational radius, Rational width);

  Rational lipschitz() const { return 1 / eps; }
  BallReal operator()(const MeasurePoint& x, std::int64_t prec) const;
  /// Value on a ball of points around x with radius `rad`.
  BallReal on_ball(const MeasurePoint& x, const Dyadic& rad, std::int64_t prec) const;
  std::string to_string() const;
};

/// tau evaluated at a distance value known to lie in the ball d.
BallReal hat_profile(const BallReal& d, const Rational& r, const Rational& eps);

struct CompareResult {
  bool holds = true;
  std::optional<std::size_t> witness;
  BallReal mu_integral;
  BallReal nu_integral;
};

/// Holds iff <mu, tau> >= <nu, tau> - tol for every tau in the family (a test
/// fails only when the ball arithmetic certifies the violation).
CompareResult compare_ge(const FiniteMeasure& mu, const FiniteMeasure& nu, const std::vector<TestFunction>& family,
                         const Rational& tol, std::int64_t prec = 64);

}  // namespace equistate
