#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equistate/measure/test_function.hpp"
#include "equistate/numerics/directed.hpp"
#include "equistate/thermo/potential.hpp"
#include "equistate/verify/dynamics.hpp"

namespace equistate {

/// Open region on which the map is meant to be injective: an open ball, or
/// the interior of a tile.
struct Patch {
  enum class Kind { Ball, TileInterior };
  Kind kind = Kind::Ball;
  MeasurePoint center;
  Rational radius;
  Tile tile;

  static Patch ball(MeasurePoint c, Rational r);
  static Patch tile_interior(Tile t);
  std::string to_string() const;
};

enum class Where { In, Out, Unknown };

/// Position of the closed ball B(p, rad) relative to the patch.
Where locate(const Patch& patch, const MeasurePoint& p, const Dyadic& rad, std::int64_t prec = 64);

struct PatchSystem {
  /// Empty means the whole space.
  std::vector<Patch> patches;
  std::vector<MeasurePoint> excluded;
};

/// Interiors of the 1-tiles.
PatchSystem tile_patches(const SubdivisionMap& g);

/// Sample-grid check that at most one preimage of T(p) lies in the patch for
/// points p of the patch. Tile interiors pass structurally.
bool validate_patch(const Dynamics& T, const Patch& patch, int rings = 4, int angles = 12);

/// J = d, or J(x) = exp(P - phi(x) + h(T x) - h(x)).
class JacobianSpec {
 public:
  static JacobianSpec constant(Rational d);
  static JacobianSpec potential_form(BallReal pressure, Potential phi, Potential h);

  bool is_constant() const { return constant_; }
  const Rational& constant_value() const { return d_; }

  /// J on the ball B(y, rad) given the exact image ty of its points.
  BallReal at(const MeasurePoint& y, const Dyadic& rad, const MeasurePoint& ty, std::int64_t prec) const;
  std::string to_string() const;

 private:
  bool constant_ = true;
  Rational d_;
  BallReal p_;
  Potential phi_, h_;
};

/// |sum over y in T^{-1}(x) within the patches of 1/J(y) - 1|. Throws
/// ExcludedPoint when a preimage is critical, meets the excluded set or
/// straddles a patch boundary.
BallReal jacobian_unitarity(const Dynamics& T, const JacobianSpec& J, const MeasurePoint& x,
                            const PatchSystem& patches, std::int64_t prec);

struct AtomJacobian {
  MeasurePoint point;
  Rational value;
};

/// J(a) = mu({T a}) / mu({a}). Throws NotInjectiveOnSupport when two atoms of
/// one patch share an image.
std::vector<AtomJacobian> atomic_jacobian(const FiniteMeasure& mu, const Dynamics& T, const PatchSystem& patches);

/// Encloses the integral of log J. Throws NonPositiveJacobian.
BallReal rokhlin_lower_bound(const FiniteMeasure& mu, const std::vector<AtomJacobian>& J, std::int64_t prec);
BallReal rokhlin_lower_bound(const FiniteMeasure& mu, const Dynamics& T, const JacobianSpec& J, std::int64_t prec);

struct MembershipOptions {
  Rational tol{1, 1024};
  std::int64_t prec = 64;
  /// Defaults to the atom mesh of mu.
  std::optional<Rational> mesh;
};

struct ResidualRow {
  std::size_t patch = 0;
  std::size_t test = 0;
  BallReal value;
  Rational slack;
  bool violated = false;
};

struct MembershipReport {
  std::vector<ResidualRow> rows;
  bool pass = true;
  std::optional<std::size_t> witness;  // row index of the largest violation
  Rational mesh;
  Rational tol;
  std::vector<Patch> patches;
};

/// For each (patch, test): the integral of J tau 1_Y minus the integral of the
/// largest tau over preimages in Y. A row is violated when the residual
/// certainly exceeds slack + tol, with slack = (sup J + 1) Lip(tau) mesh.
/// Without explicit patches each test uses its own open support as patch
/// (tile interiors on the doubled triangle). Throws NotInjectiveOnPatch.
MembershipReport membership_residual(const FiniteMeasure& mu, const Dynamics& T, const PatchSystem& patches,
                                     const JacobianSpec& J, const std::vector<TestFunction>& tests,
                                     const MembershipOptions& opt = {});

/// Hats of radius 0 and widths 2^-1 .. 2^-4 (those >= mesh) at the first
/// `centers` ideal points of the space, keeping those whose support passes
/// validate_patch.
std::vector<TestFunction> default_tests(const Dynamics& T, const Rational& mesh, int centers = 16);

struct TangentWitness {
  Potential psi;
  DirectedReal upper;  // upper bounds for P(T, psi)
};

struct TangentResult {
  bool pass = true;
  std::optional<std::size_t> witness;
  BallReal gap;               // smallest gap
  std::vector<BallReal> gaps; // P_i - <nu, psi_i> + <nu, phi> - p_lower + tol
};

TangentResult tangent_certificate(const FiniteMeasure& nu, const Potential& phi,
                                  const std::vector<TangentWitness>& witnesses, const DirectedReal& p_lower,
                                  const Rational& tol, std::int64_t prec = 64);

/// W(mu, T_* mu) for the stored atoms of mu.
BallReal invariance_residual(const FiniteMeasure& mu, const Dynamics& T, std::int64_t prec = 40);

}  // namespace equistate
