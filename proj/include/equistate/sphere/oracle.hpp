#pragma once

#include <cstdint>
#include <functional>

#include "equistate/sphere/sphere_point.hpp"

namespace equistate {

/// query(n) returns an ideal point within chordal distance 2^-n of the target.
struct Oracle {
  std::function<SpherePoint(std::int64_t)> query;
};

/// Finite points answer with themselves; infinity answers with the real point 2^(n+2).
Oracle oracle_of(const SpherePoint& p);

/// True when the answers at n and m > n are within 2^-n + 2^-m of each other.
bool oracle_consistent(const Oracle& o, std::int64_t n, std::int64_t m);

}  // namespace equistate
