#pragma once

#include "equistate/sphere/sphere_point.hpp"

namespace equistate {

/// Decomposition of an ideal index. Index 1 is 0 and index 2 is infinity; every
/// index k >= 3 is the Cantor pair (a, b) = unpair(k - 2) of two signed
/// Calkin-Wilf codes, giving re = r(a) and im = r(b).
struct IdealIndexParts {
  bool is_zero = false;
  bool is_infinity = false;
  BigInt a, b;
};

IdealIndexParts decompose_index(const BigInt& k);

/// s_k for k >= 1. Bijective onto Q(i) together with infinity.
SpherePoint ideal_enumerate(const BigInt& k);

/// Inverse of ideal_enumerate.
BigInt ideal_index(const SpherePoint& p);

/// The k-th positive rational of the Calkin-Wilf sequence, k >= 1.
Rational calkin_wilf(const BigInt& k);
BigInt calkin_wilf_index(const Rational& q);

/// The ideal point nearest p among those with coordinates in 2^-(n+2) Z,
/// together with its index. Its chordal distance to p is below 2^-n.
std::pair<BigInt, SpherePoint> ideal_approximation(const SpherePoint& p, std::int64_t n);

}  // namespace equistate
