#include "equistate/verify/dynamics.hpp"

#include "equistate/error.hpp"

namespace equistate {

namespace {

template <class P>
const P& as(const MeasurePoint& x) {
  if (!std::holds_alternative<P>(x)) throw Error(ErrorKind::SpaceMismatch, "point belongs to another space");
  return std::get<P>(x);
}

}  // namespace

MeasurePoint RationalDynamics::image(const MeasurePoint& x) const { return f_(as<SpherePoint>(x)); }

std::vector<PreimagePoint> RationalDynamics::preimages(const MeasurePoint& x, std::int64_t l) const {
  std::vector<PreimagePoint> out;
  for (const auto& c : equistate::preimages(f_, as<SpherePoint>(x), l))
    out.push_back({c.disc.center, c.disc.rad, c.multiplicity});
  return out;
}

MeasurePoint TileDynamics::image(const MeasurePoint& x) const { return g_(as<TilePoint>(x)); }

std::vector<PreimagePoint> TileDynamics::preimages(const MeasurePoint& x, std::int64_t) const {
  std::vector<PreimagePoint> out;
  for (const auto& p : g_.preimages(as<TilePoint>(x))) out.push_back({p.point, Dyadic(), p.local_degree});
  return out;
}

}  // namespace equistate
