#pragma once

#include <vector>

#include "equistate/numerics/rational.hpp"

namespace equistate {

enum class Direction { Lower, Upper };

/// Finite prefix of a monotone approximation sequence. A Lower sequence is
/// nondecreasing and approaches its limit from below; an Upper one is nonincreasing.
class DirectedReal {
 public:
  explicit DirectedReal(Direction dir) : dir_(dir) {}
  DirectedReal(Direction dir, std::vector<Rational> terms);

  /// Returns a copy extended by q; throws MonotonicityViolation.
  DirectedReal push(const Rational& q) const;

  Direction direction() const { return dir_; }
  const std::vector<Rational>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// Best bound so far.
  const Rational& last() const;

 private:
  Direction dir_;
  std::vector<Rational> terms_;
};

}  // namespace equistate
