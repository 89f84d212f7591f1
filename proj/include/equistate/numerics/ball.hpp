#pragma once

#include <cstdint>
#include <string>

#include "equistate/numerics/dyadic.hpp"

namespace equistate {

/// Certified real: the represented value lies in [mid - rad, mid + rad].
struct BallReal {
  Dyadic mid;
  Dyadic rad;

  BallReal() = default;
  BallReal(Dyadic m) : mid(std::move(m)) {}  // NOLINT(google-explicit-constructor)
  BallReal(Dyadic m, Dyadic r);

  static BallReal exact(long v) { return BallReal(Dyadic(v)); }
  /// Smallest-radius ball around a rational at `prec` bits of relative precision.
  static BallReal from_rational(const Rational& q, std::int64_t prec);
  /// Encloses [lo, hi]; lo <= hi.
  static BallReal from_interval(const Dyadic& lo, const Dyadic& hi);

  Dyadic lower() const { return mid - rad; }
  Dyadic upper() const { return mid + rad; }

  bool is_exact() const { return rad.is_zero(); }
  bool contains(const Rational& q) const;
  bool contains(const BallReal& b) const;
  bool overlaps(const BallReal& b) const;
  /// True when every point of the ball is > 0 (resp. < 0).
  bool positive() const { return lower().sign() > 0; }
  bool negative() const { return upper().sign() < 0; }
  bool contains_zero() const { return !positive() && !negative(); }

  double to_double() const { return mid.to_double(); }
  std::string to_string() const;
};

/// Radii are stored with this many significant bits, rounded up.
inline constexpr std::int64_t kRadiusBits = 30;

BallReal ball_neg(const BallReal& a);
BallReal ball_abs(const BallReal& a);
/// `prec` is the relative precision (bits) used to round the midpoint.
BallReal ball_add(const BallReal& a, const BallReal& b, std::int64_t prec);
BallReal ball_sub(const BallReal& a, const BallReal& b, std::int64_t prec);
BallReal ball_mul(const BallReal& a, const BallReal& b, std::int64_t prec);
BallReal ball_sqr(const BallReal& a, std::int64_t prec);
/// Throws NonPositiveArgument when b contains 0.
BallReal ball_div(const BallReal& a, const BallReal& b, std::int64_t prec);
BallReal ball_mul_2exp(const BallReal& a, std::int64_t k);
/// Negative parts of the ball are clamped to 0; throws when the ball is entirely negative.
BallReal ball_sqrt(const BallReal& a, std::int64_t prec);
/// For a point input the result has rad <= 2^-prec.
BallReal ball_exp(const BallReal& a, std::int64_t prec);
/// Throws NonPositiveArgument when the ball touches (-inf, 0].
BallReal ball_log(const BallReal& a, std::int64_t prec);
BallReal ball_max(const BallReal& a, const BallReal& b);
BallReal ball_min(const BallReal& a, const BallReal& b);
/// Union hull of two balls.
BallReal ball_hull(const BallReal& a, const BallReal& b);
/// Adds `e` to the radius.
BallReal ball_widen(const BallReal& a, const Dyadic& e);

/// log 2 with rad <= 2^-prec.
BallReal ball_ln2(std::int64_t prec);

}  // namespace equistate
