#include "equistate/verify/verify.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "equistate/error.hpp"
#include "equistate/measure/transport.hpp"
#include "equistate/sphere/enumeration.hpp"

namespace equistate {

namespace {

Rational det3(const std::array<Bary, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

bool strictly_inside(const Tile& t, const TilePoint& p) {
  if (p.face() != t.face || p.on_boundary()) return false;
  // cheap rejection in doubles before the exact test
  auto dd = [](const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  std::array<std::array<double, 3>, 3> md;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i) md[k][i] = t.coords[k][i].get_d();
  double d0 = dd(md);
  for (std::size_t k = 0; k < 3; ++k) {
    auto m = md;
    for (std::size_t i = 0; i < 3; ++i) m[k][i] = p[static_cast<int>(i)].get_d();
    if (dd(m) / d0 < -1e-9) return false;
  }
  Rational d = det3(t.coords);
  for (std::size_t k = 0; k < 3; ++k) {
    auto m = t.coords;
    m[k] = p.coords();
    if (det3(m) / d <= 0) return false;
  }
  return true;
}

BallReal exact_ball(const Rational& q, std::int64_t prec) { return BallReal::from_rational(q, prec); }

BallReal hull_with_zero(const BallReal& v) {
  return BallReal::from_interval(min(Dyadic(), v.lower()), max(Dyadic(), v.upper()));
}

Rational upper_rational(const BallReal& b) { return b.upper().to_rational(); }

// Sample points of an open chordal ball, center first.
std::vector<SpherePoint> sphere_samples(const SpherePoint& c, const Rational& radius, int rings, int angles) {
  std::vector<SpherePoint> out{c};
  double rho = radius.get_d();
  for (int i = 1; i <= rings; ++i) {
    double t = rho * (1.0 - std::ldexp(1.0, -i));
    for (int j = 0; j < angles; ++j) {
      double th = 2 * std::numbers::pi * j / angles;
      SpherePoint p;
      if (c.is_infinity()) {
        double m = 2 / t;
        p = SpherePoint(Dyadic::from_double(m * std::cos(th)).to_rational(),
                        Dyadic::from_double(m * std::sin(th)).to_rational());
      } else {
        double s = t * (1 + c.re().get_d() * c.re().get_d() + c.im().get_d() * c.im().get_d()) / 2;
        p = SpherePoint(c.re() + Dyadic::from_double(s * std::cos(th)).to_rational(),
                        c.im() + Dyadic::from_double(s * std::sin(th)).to_rational());
      }
      if (chordal_squared(c, p) < radius * radius) out.push_back(p);
    }
  }
  return out;
}

std::vector<TilePoint> tile_samples(const Patch& patch) {
  std::set<TilePoint> pts;
  for (const auto& t : tile_complex(Rule::G1, 2).tiles)
    for (int k = 0; k < 3; ++k)
      if (locate(patch, t.vertex(k), Dyadic()) != Where::Out) pts.insert(t.vertex(k));
  if (locate(patch, patch.center, Dyadic()) != Where::Out) pts.insert(std::get<TilePoint>(patch.center));
  return {pts.begin(), pts.end()};
}

bool at_most_one_preimage(const Dynamics& T, const Patch& patch, const MeasurePoint& p) {
  int count = 0;
  for (const auto& y : T.preimages(T.image(p), 24))
    if (locate(patch, y.point, y.rad) != Where::Out) count += y.multiplicity;
  return count <= 1;
}

}  // namespace

Patch Patch::ball(MeasurePoint c, Rational r) {
  if (r <= 0) throw Error(ErrorKind::InvalidArgument, "patch radius must be positive");
  Patch p;
  p.center = std::move(c);
  p.radius = std::move(r);
  return p;
}

Patch Patch::tile_interior(Tile t) {
  Patch p;
  p.kind = Kind::TileInterior;
  p.center = t.barycenter();
  p.tile = std::move(t);
  return p;
}

std::string Patch::to_string() const {
  if (kind == Kind::Ball) return "ball(" + equistate::to_string(center) + ", " + equistate::to_string(radius) + ")";
  return "tile(" + tile.vertex(0).to_string() + ", " + tile.vertex(1).to_string() + ", " + tile.vertex(2).to_string() +
         ")";
}

Where locate(const Patch& patch, const MeasurePoint& p, const Dyadic& rad, std::int64_t prec) {
  if (space_of(p) != space_of(patch.center)) throw Error(ErrorKind::SpaceMismatch, "point and patch differ in space");
  if (patch.kind == Patch::Kind::TileInterior) {
    if (!rad.is_zero()) throw Error(ErrorKind::InvalidArgument, "tile patches take exact points");
    return strictly_inside(patch.tile, std::get<TilePoint>(p)) ? Where::In : Where::Out;
  }
  if (rad.is_zero() && std::holds_alternative<SpherePoint>(p)) {
    Rational d2 = chordal_squared(std::get<SpherePoint>(p), std::get<SpherePoint>(patch.center));
    return d2 < patch.radius * patch.radius ? Where::In : Where::Out;
  }
  BallReal d = distance(p, patch.center, prec);
  if (compare(d.upper() + rad, patch.radius) < 0) return Where::In;
  if (compare(d.lower() - rad, patch.radius) >= 0) return Where::Out;
  return Where::Unknown;
}

PatchSystem tile_patches(const SubdivisionMap& g) {
  PatchSystem ps;
  for (const auto& t : g.level_one().tiles) ps.patches.push_back(Patch::tile_interior(t));
  return ps;
}

bool validate_patch(const Dynamics& T, const Patch& patch, int rings, int angles) {
  if (patch.kind == Patch::Kind::TileInterior) return true;
  if (T.space() == Space::TriSphere) {
    for (const auto& p : tile_samples(patch))
      if (!at_most_one_preimage(T, patch, p)) return false;
    return true;
  }
  for (const auto& p : sphere_samples(std::get<SpherePoint>(patch.center), patch.radius, rings, angles))
    if (!at_most_one_preimage(T, patch, p)) return false;
  return true;
}

JacobianSpec JacobianSpec::constant(Rational d) {
  JacobianSpec j;
  j.d_ = std::move(d);
  return j;
}

JacobianSpec JacobianSpec::potential_form(BallReal pressure, Potential phi, Potential h) {
  JacobianSpec j;
  j.constant_ = false;
  j.p_ = std::move(pressure);
  j.phi_ = std::move(phi);
  j.h_ = std::move(h);
  return j;
}

BallReal JacobianSpec::at(const MeasurePoint& y, const Dyadic& rad, const MeasurePoint& ty, std::int64_t prec) const {
  if (constant_) return exact_ball(d_, prec);
  if (!std::holds_alternative<SpherePoint>(y))
    throw Error(ErrorKind::SpaceMismatch, "potential-form Jacobians live on the sphere");
  std::int64_t wp = prec + 16;
  PointBall yb{std::get<SpherePoint>(y), rad};
  BallReal e = ball_sub(p_, phi_.on_ball(yb, wp), wp);
  e = ball_add(e, h_(std::get<SpherePoint>(ty), wp), wp);
  e = ball_sub(e, h_.on_ball(yb, wp), wp);
  return ball_exp(e, prec);
}

std::string JacobianSpec::to_string() const {
  if (constant_) return "const:" + equistate::to_string(d_);
  return "exp(" + p_.to_string() + " - " + phi_.to_string() + " + h o T - h), h = " + h_.to_string();
}

BallReal jacobian_unitarity(const Dynamics& T, const JacobianSpec& J, const MeasurePoint& x,
                            const PatchSystem& patches, std::int64_t prec) {
  std::int64_t wp = prec + 16;
  BallReal sum;
  for (const auto& y : T.preimages(x, prec + 8)) {
    if (y.multiplicity > 1)
      throw Error(ErrorKind::ExcludedPoint, to_string(x) + " has a critical preimage");
    for (const auto& e : patches.excluded)
      if (distance(y.point, e, wp).lower() <= y.rad)
        throw Error(ErrorKind::ExcludedPoint, "preimage " + to_string(y.point) + " meets the excluded set");
    if (!patches.patches.empty()) {
      bool in = false;
      for (const auto& p : patches.patches) {
        Where w = locate(p, y.point, y.rad, wp);
        if (w == Where::Unknown)
          throw Error(ErrorKind::ExcludedPoint, "preimage " + to_string(y.point) + " straddles a patch boundary");
        in = in || w == Where::In;
      }
      if (!in) continue;
    }
    BallReal j = J.at(y.point, y.rad, x, wp);
    sum = ball_add(sum, ball_div(BallReal(Dyadic(1)), j, wp), wp);
  }
  return ball_abs(ball_sub(sum, BallReal(Dyadic(1)), prec + 2));
}

std::vector<AtomJacobian> atomic_jacobian(const FiniteMeasure& mu, const Dynamics& T, const PatchSystem& patches) {
  auto less = [](const MeasurePoint& a, const MeasurePoint& b) { return point_less(a, b); };
  std::map<MeasurePoint, Rational, decltype(less)> weight(less);
  for (const auto& a : mu.atoms()) weight.emplace(a.point, a.weight);
  std::vector<MeasurePoint> images;
  std::vector<AtomJacobian> out;
  for (const auto& a : mu.atoms()) {
    MeasurePoint ta = T.image(a.point);
    auto it = weight.find(ta);
    Rational v = it == weight.end() ? Rational(0) : Rational(it->second / a.weight);
    out.push_back({a.point, v});
    images.push_back(ta);
  }
  // atoms of one patch must have distinct images
  std::size_t groups = patches.patches.empty() ? 1 : patches.patches.size();
  for (std::size_t g = 0; g < groups; ++g) {
    std::map<MeasurePoint, std::size_t, decltype(less)> seen(less);
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (!patches.patches.empty() && locate(patches.patches[g], mu.atoms()[i].point, Dyadic()) != Where::In) continue;
      auto [it, fresh] = seen.emplace(images[i], i);
      if (!fresh)
        throw Error(ErrorKind::NotInjectiveOnSupport, to_string(mu.atoms()[it->second].point) + " and " +
                                                          to_string(mu.atoms()[i].point) + " have the same image");
    }
  }
  if (!patches.patches.empty()) {
    for (const auto& a : mu.atoms()) {
      bool in = false;
      for (const auto& p : patches.patches) in = in || locate(p, a.point, Dyadic()) == Where::In;
      if (!in) throw Error(ErrorKind::NotInjectiveOnSupport, to_string(a.point) + " lies in no patch");
    }
  }
  return out;
}

BallReal rokhlin_lower_bound(const FiniteMeasure& mu, const std::vector<AtomJacobian>& J, std::int64_t prec) {
  auto less = [](const MeasurePoint& a, const MeasurePoint& b) { return point_less(a, b); };
  std::map<MeasurePoint, Rational, decltype(less)> value(less);
  for (const auto& j : J) {
    if (j.value <= 0) throw Error(ErrorKind::NonPositiveJacobian, "J(" + to_string(j.point) + ") <= 0");
    value.emplace(j.point, j.value);
  }
  std::int64_t wp = prec + 8;
  return integrate(
      mu,
      [&](const MeasurePoint& p) {
        auto it = value.find(p);
        if (it == value.end()) throw Error(ErrorKind::InvalidArgument, "no Jacobian value at " + to_string(p));
        return ball_log(exact_ball(it->second, wp + 8), wp);
      },
      prec);
}

BallReal rokhlin_lower_bound(const FiniteMeasure& mu, const Dynamics& T, const JacobianSpec& J, std::int64_t prec) {
  if (J.is_constant() && J.constant_value() <= 0) throw Error(ErrorKind::NonPositiveJacobian, "constant J <= 0");
  std::int64_t wp = prec + 8;
  return integrate(
      mu, [&](const MeasurePoint& p) { return ball_log(J.at(p, Dyadic(), T.image(p), wp + 8), wp); }, prec);
}

MembershipReport membership_residual(const FiniteMeasure& mu, const Dynamics& T, const PatchSystem& patches,
                                     const JacobianSpec& J, const std::vector<TestFunction>& tests,
                                     const MembershipOptions& opt) {
  if (mu.space() != T.space()) throw Error(ErrorKind::SpaceMismatch, "measure and map live on different spaces");
  std::int64_t wp = opt.prec + 16;
  MembershipReport rep;
  rep.tol = opt.tol;
  rep.mesh = opt.mesh ? *opt.mesh : upper_rational(atom_mesh(mu));

  // (patch, test) pairs
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  bool own_support = false;
  if (!patches.patches.empty()) {
    rep.patches = patches.patches;
  } else if (const auto* td = dynamic_cast<const TileDynamics*>(&T)) {
    rep.patches = tile_patches(td->map()).patches;
  } else {
    own_support = true;
    for (const auto& t : tests) rep.patches.push_back(Patch::ball(t.center, t.r + t.eps));
  }
  for (std::size_t k = 0; k < rep.patches.size(); ++k)
    for (std::size_t t = 0; t < tests.size(); ++t)
      if (!own_support || k == t) pairs.emplace_back(k, t);

  std::vector<std::vector<PreimagePoint>> pre(mu.size());
  std::vector<BallReal> jx(mu.size());
  Rational jmax = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto& x = mu.atoms()[i].point;
    pre[i] = T.preimages(x, opt.prec);
    jx[i] = J.at(x, Dyadic(), T.image(x), wp);
    jmax = std::max(jmax, upper_rational(jx[i]));
  }

  // test values and patch positions are shared across rows
  std::vector<std::vector<BallReal>> tau_atom(tests.size()), tau_pre(tests.size());
  std::vector<bool> tau_done(tests.size(), false);
  auto tau_values = [&](std::size_t t) {
    if (tau_done[t]) return;
    tau_done[t] = true;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      tau_atom[t].push_back(tests[t](mu.atoms()[i].point, wp));
      for (const auto& y : pre[i])
        tau_pre[t].push_back(y.rad.is_zero() ? tests[t](y.point, wp) : tests[t].on_ball(y.point, y.rad, wp));
    }
  };
  std::vector<std::vector<Where>> where_atom(rep.patches.size()), where_pre(rep.patches.size());
  auto positions = [&](std::size_t k) {
    if (!where_atom[k].empty() || mu.size() == 0) return;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      where_atom[k].push_back(locate(rep.patches[k], mu.atoms()[i].point, Dyadic(), wp));
      for (const auto& y : pre[i]) where_pre[k].push_back(locate(rep.patches[k], y.point, y.rad, wp));
    }
  };

  std::vector<BallReal> weights;
  for (const auto& a : mu.atoms()) weights.push_back(exact_ball(a.weight, wp));

  std::optional<Dyadic> worst;
  for (auto [k, t] : pairs) {
    const Patch& patch = rep.patches[k];
    const TestFunction& tau = tests[t];
    tau_values(t);
    positions(k);
    BallReal lhs, rhs;
    std::size_t slot = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const Atom& a = mu.atoms()[i];
      const BallReal& w = weights[i];
      Where wx = where_atom[k][i];
      if (wx != Where::Out && !tau_atom[t][i].mid.is_zero()) {
        BallReal v = ball_mul(jx[i], tau_atom[t][i], wp);
        if (wx == Where::Unknown) v = hull_with_zero(v);
        lhs = ball_add(lhs, ball_mul(w, v, wp), wp);
      }
      std::optional<BallReal> best;
      int inside = 0;
      for (const auto& y : pre[i]) {
        Where wy = where_pre[k][slot];
        BallReal v = tau_pre[t][slot];
        ++slot;
        if (wy == Where::Out) continue;
        if (wy == Where::In) inside += y.multiplicity;
        else v = hull_with_zero(v);
        if (v.mid.is_zero() && v.rad.is_zero()) continue;
        best = best ? ball_max(*best, v) : v;
      }
      if (inside > 1)
        throw Error(ErrorKind::NotInjectiveOnPatch,
                    "two preimages of " + to_string(a.point) + " lie in " + patch.to_string());
      if (best) rhs = ball_add(rhs, ball_mul(w, *best, wp), wp);
    }
    ResidualRow row;
    row.patch = k;
    row.test = t;
    row.value = ball_sub(lhs, rhs, opt.prec);
    row.slack = (jmax + 1) * tau.lipschitz() * rep.mesh;
    Rational bound = row.slack + rep.tol;
    row.violated = compare(row.value.lower(), bound) > 0;
    if (row.violated) {
      rep.pass = false;
      Dyadic excess = row.value.lower();
      if (!worst || excess > *worst) {
        worst = excess;
        rep.witness = rep.rows.size();
      }
    }
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<TestFunction> default_tests(const Dynamics& T, const Rational& mesh, int centers) {
  std::vector<MeasurePoint> cs;
  if (T.space() == Space::RiemannSphere) {
    for (int k = 1; k <= centers; ++k) cs.push_back(ideal_enumerate(BigInt(k)));
  } else {
    // 1-tile vertices then barycenters, in id order
    TileComplex one = tile_complex(Rule::G1, 1);
    if (const auto* td = dynamic_cast<const TileDynamics*>(&T)) one = td->map().level_one();
    std::set<TilePoint> seen;
    for (const auto& t : one.tiles)
      for (int k = 0; k < 3; ++k)
        if (seen.insert(t.vertex(k)).second) cs.push_back(t.vertex(k));
    for (const auto& t : one.tiles) cs.push_back(t.barycenter());
    if (cs.size() > static_cast<std::size_t>(centers)) cs.resize(static_cast<std::size_t>(centers));
  }
  std::vector<TestFunction> out;
  for (int s = 1; s <= 4; ++s) {
    Rational eps(1, 1L << s);
    if (eps < mesh) break;
    for (const auto& c : cs) {
      TestFunction tau(c, 0, eps);
      bool tile_space = T.space() == Space::TriSphere;
      // on the doubled triangle the tests are paired with tile patches
      if (tile_space || validate_patch(T, Patch::ball(c, eps), 3, 8)) out.push_back(tau);
    }
  }
  return out;
}

TangentResult tangent_certificate(const FiniteMeasure& nu, const Potential& phi,
                                  const std::vector<TangentWitness>& witnesses, const DirectedReal& p_lower,
                                  const Rational& tol, std::int64_t prec) {
  if (p_lower.direction() != Direction::Lower || p_lower.empty())
    throw Error(ErrorKind::InvalidArgument, "p_lower must be a nonempty lower sequence");
  std::int64_t wp = prec + 16;
  Dyadic disp = nu.displacement();
  auto pair = [&](const Potential& p) {
    BallReal v = integrate(
        nu, [&](const MeasurePoint& x) { return p(std::get<SpherePoint>(x), wp); }, wp);
    if (!disp.is_zero()) v = ball_widen(v, round_rel(holder_bound(p) * disp.to_rational(), kRadiusBits, Round::Up));
    return v;
  };
  if (nu.space() != Space::RiemannSphere) throw Error(ErrorKind::SpaceMismatch, "potentials live on the sphere");
  BallReal base = ball_sub(pair(phi), exact_ball(p_lower.last() - tol, wp), wp);
  TangentResult res;
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    const auto& w = witnesses[i];
    if (w.upper.direction() != Direction::Upper || w.upper.empty())
      throw Error(ErrorKind::InvalidArgument, "witness bounds must be a nonempty upper sequence");
    BallReal gap = ball_add(ball_sub(exact_ball(w.upper.last(), wp), pair(w.psi), wp), base, prec);
    res.gaps.push_back(gap);
    if (!res.witness || gap.mid < res.gap.mid) {
      res.witness = i;
      res.gap = gap;
    }
  }
  res.pass = true;
  for (const auto& g : res.gaps) res.pass = res.pass && g.lower().sign() >= 0;
  if (res.pass) res.witness.reset();
  return res;
}

BallReal invariance_residual(const FiniteMeasure& mu, const Dynamics& T, std::int64_t prec) {
  FiniteMeasure stored = mu;
  stored.set_displacement(Dyadic());
  return wasserstein(stored, pushforward(stored, T.as_map()), prec);
}

}  // namespace equistate
