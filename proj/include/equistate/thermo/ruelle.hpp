#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "equistate/measure/measure.hpp"
#include "equistate/ratmap/rational_map.hpp"
#include "equistate/thermo/potential.hpp"

namespace equistate {

/// Encloses S_n phi(x) = sum_{m < n} phi(f^m(x)) along the exact orbit.
BallReal birkhoff_sum(const RationalMap& f, const Potential& phi, const SpherePoint& x, int n, std::int64_t prec);

/// A depth-m preimage of the tree root: the disc holds `multiplicity` points y
/// (counted with deg_{f^m}) and S_m phi(y) lies in `birkhoff` for each of them.
struct TreeLeaf {
  PointBall point;
  BigInt multiplicity;
  BallReal birkhoff;
};

/// Leaves of the depth-m backward tree of x. Preimage discs target chordal
/// radius 2^-l; deeper discs may be wider when a parent disc is wide.
std::vector<TreeLeaf> preimage_tree(const RationalMap& f, const Potential& phi, const SpherePoint& x, int m,
                                    std::int64_t l, std::int64_t prec);

/// Throws ExcludedPoint when x = f^i(infinity) for some 1 <= i <= m.
void check_not_excluded(const RationalMap& f, const SpherePoint& x, int m);

/// Encloses L_phi^m(u)(x) with rad <= 2^-n.
BallReal ruelle_apply(const RationalMap& f, const Potential& phi, const Potential& u, const SpherePoint& x, int m,
                      std::int64_t n);

struct PressureOptions {
  Rational c0 = 1;
  Rational R = 0;
  bool empirical = false;
  /// Largest preimage tree (leaf count) the evaluation may build.
  std::int64_t max_leaves = 1 << 16;
};

struct PressureResult {
  BallReal value;
  std::int64_t n_used = 0;
  SpherePoint anchor;
  BigInt anchor_index;
  Rational c0_used;
  Rational r_used;
  bool certified = false;
  std::string mode;
};

/// Pressure P(f, phi) with rad <= 2^-n. In certified mode the truncation depth is the
/// smallest N > 2^(n+1) c0 R, and the answer is refused (PrecisionExhausted) when
/// the tree would exceed max_leaves. Empirical mode increases N until successive
/// estimates agree to 2^-(n+2) and is not certified.
PressureResult pressure(const RationalMap& f, const Potential& phi, std::int64_t n, const PressureOptions& opt);

/// Depth-m backward-orbit measure of x with weights proportional to
/// deg_{f^m}(y) e^{S_m phi(y)}, summing exactly to 1. Disc midpoints stand in for
/// inexact preimages; the measure's displacement bounds the resulting error.
FiniteMeasure backward_orbit_measure(const RationalMap& f, const Potential& phi, const SpherePoint& x, int depth,
                                     std::int64_t l = 48);

}  // namespace equistate
