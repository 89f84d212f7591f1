#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "equistate/numerics/ball.hpp"
#include "equistate/numerics/gaussian.hpp"

namespace equistate {

/// Point of the Riemann sphere: a Gaussian rational or infinity.
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(GaussianRational z) : z_(std::move(z)) {}  // NOLINT(google-explicit-constructor)
  SpherePoint(long re) : z_(re) {}  // NOLINT(google-explicit-constructor)
  SpherePoint(Rational re, Rational im) : z_(std::move(re), std::move(im)) {}

  static SpherePoint infinity() {
    SpherePoint p;
    p.inf_ = true;
    return p;
  }

  bool is_infinity() const { return inf_; }
  /// Only meaningful for finite points.
  const GaussianRational& z() const { return z_; }
  const Rational& re() const { return z_.re; }
  const Rational& im() const { return z_.im; }

  std::string to_string() const { return inf_ ? "inf" : z_.to_string(); }

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.z_ == b.z_;
  }

 private:
  GaussianRational z_;
  bool inf_ = false;
};

/// Total order: finite points lexicographically, then infinity.
bool operator<(const SpherePoint& a, const SpherePoint& b);

/// Closed chordal ball B(center, rad).
struct PointBall {
  SpherePoint center;
  Dyadic rad;
};

/// Exact sigma(z, w)^2 as a rational.
Rational chordal_squared(const SpherePoint& z, const SpherePoint& w);

/// Encloses sigma(z, w) with rad <= 2^-prec; exact when sigma^2 is a dyadic square.
BallReal chordal(const SpherePoint& z, const SpherePoint& w, std::int64_t prec);

/// sqrt of a nonnegative rational with absolute error <= 2^-prec (for values <= 4).
BallReal sqrt_rational(const Rational& q, std::int64_t prec);

/// Stereographic image (2x, 2y, |z|^2 - 1) / (|z|^2 + 1) on the unit sphere, rounded
/// to doubles. Euclidean distances of images equal chordal distances.
std::array<double, 3> embed(const SpherePoint& p);

/// True when sigma(z, w) < 2^-n, decided exactly.
bool chordal_less_pow2(const SpherePoint& z, const SpherePoint& w, std::int64_t n);

}  // namespace equistate
