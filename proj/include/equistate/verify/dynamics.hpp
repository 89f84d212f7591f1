#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "equistate/measure/measure.hpp"
#include "equistate/ratmap/rational_map.hpp"
#include "equistate/thurston/subdivision.hpp"

namespace equistate {

/// A preimage: a point and a radius (0 when exact) in the space's metric, with
/// its local degree.
struct PreimagePoint {
  MeasurePoint point;
  Dyadic rad;
  int multiplicity = 1;
};

/// A map T: X -> X evaluable exactly on ideal points, with certified preimages.
class Dynamics {
 public:
  virtual ~Dynamics() = default;
  virtual Space space() const = 0;
  virtual int degree() const = 0;
  /// Exact image; throws SpaceMismatch for a point of the wrong space.
  virtual MeasurePoint image(const MeasurePoint& x) const = 0;
  /// All preimages, radii at most 2^-l.
  virtual std::vector<PreimagePoint> preimages(const MeasurePoint& x, std::int64_t l) const = 0;
  virtual std::string name() const = 0;

  PointMap as_map() const {
    return [this](const MeasurePoint& p) { return image(p); };
  }
};

class RationalDynamics : public Dynamics {
 public:
  explicit RationalDynamics(RationalMap f) : f_(std::move(f)) {}
  const RationalMap& map() const { return f_; }

  Space space() const override { return Space::RiemannSphere; }
  int degree() const override { return f_.degree(); }
  MeasurePoint image(const MeasurePoint& x) const override;
  std::vector<PreimagePoint> preimages(const MeasurePoint& x, std::int64_t l) const override;
  std::string name() const override { return f_.to_string(); }

 private:
  RationalMap f_;
};

class TileDynamics : public Dynamics {
 public:
  explicit TileDynamics(Rule rule) : g_(rule) {}
  const SubdivisionMap& map() const { return g_; }

  Space space() const override { return Space::TriSphere; }
  int degree() const override { return g_.degree(); }
  MeasurePoint image(const MeasurePoint& x) const override;
  std::vector<PreimagePoint> preimages(const MeasurePoint& x, std::int64_t l) const override;
  std::string name() const override { return std::string(to_string(g_.rule())); }

 private:
  SubdivisionMap g_;
};

}  // namespace equistate
