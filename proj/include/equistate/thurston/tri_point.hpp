#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "equistate/numerics/ball.hpp"

namespace equistate {

enum class Face : int { Front = 0, Back = 1 };

/// Point of the doubled equilateral triangle: a face and exact barycentric
/// coordinates with respect to the shared vertices A, B, C.
class TilePoint {
 public:
  TilePoint() = default;
  /// Throws InvalidArgument unless coords are nonnegative and sum to 1.
  TilePoint(Face face, std::array<Rational, 3> coords);

  static TilePoint vertex(int i);
  static TilePoint barycenter(Face face);

  Face face() const { return face_; }
  const std::array<Rational, 3>& coords() const { return c_; }
  const Rational& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  bool on_boundary() const { return c_[0] == 0 || c_[1] == 0 || c_[2] == 0; }

  std::string to_string() const;

  friend bool operator==(const TilePoint& a, const TilePoint& b) { return a.face_ == b.face_ && a.c_ == b.c_; }

 private:
  Face face_ = Face::Front;
  std::array<Rational, 3> c_{Rational(1), Rational(0), Rational(0)};
};

bool operator<(const TilePoint& a, const TilePoint& b);

/// Squared Euclidean distance of two points given in barycentrics of one unit triangle.
Rational planar_distance_squared(const std::array<Rational, 3>& p, const std::array<Rational, 3>& q);

/// Intrinsic distance: Euclidean within a face; across faces the shortest path
/// crossing one edge (straight when the unfolded segment meets the edge,
/// otherwise through the nearer edge endpoint). Encloses the value with rad <= 2^-prec.
BallReal tri_distance(const TilePoint& p, const TilePoint& q, std::int64_t prec);

/// Same metric in doubles, for screening and plots.
double tri_distance_double(const TilePoint& p, const TilePoint& q);

}  // namespace equistate
