#include "equistate/thermo/ruelle.hpp"

#include <cmath>

#include "equistate/error.hpp"
#include "equistate/sphere/enumeration.hpp"

namespace equistate {

namespace {

constexpr int kMaxAttempts = 6;

struct Node {
  PointBall point;
  BigInt multiplicity;
  BallReal birkhoff;
};

std::vector<SpherePoint> infinity_orbit(const RationalMap& f, int m) {
  std::vector<SpherePoint> orbit;
  SpherePoint p = SpherePoint::infinity();
  for (int i = 1; i <= m; ++i) {
    p = f(p);
    if (std::find(orbit.begin(), orbit.end(), p) != orbit.end()) break;
    orbit.push_back(p);
  }
  return orbit;
}

// crude log2 of the magnitude of a ball, for sizing working precision
std::int64_t magnitude_bits(const BallReal& b) {
  Dyadic u = max(b.upper().abs(), b.lower().abs());
  return u.is_zero() ? 0 : std::max<std::int64_t>(0, u.msb() + 1);
}

BallReal leaf_sum(const std::vector<TreeLeaf>& leaves, const Potential& u, std::int64_t prec) {
  BallReal acc;
  for (const TreeLeaf& leaf : leaves) {
    BallReal e = ball_exp(leaf.birkhoff, prec);
    BallReal w = ball_mul(e, BallReal(Dyadic(leaf.multiplicity, 0)), prec);
    auto c = u.constant_value();
    BallReal uv = c ? BallReal::from_rational(*c, prec) : u.on_ball(leaf.point, prec);
    acc = ball_add(acc, ball_mul(w, uv, prec), prec);
  }
  return acc;
}

BigInt ipow(long base, std::int64_t e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

BallReal birkhoff_sum(const RationalMap& f, const Potential& phi, const SpherePoint& x, int n, std::int64_t prec) {
  BallReal acc;
  SpherePoint p = x;
  std::int64_t wp = prec + 8 + static_cast<std::int64_t>(std::log2(n + 1.0));
  for (int m = 0; m < n; ++m) {
    try {
      acc = ball_add(acc, phi(p, wp), wp);
    } catch (const Error& e) {
      throw Error(ErrorKind::EvaluationFailure, std::string("potential evaluation failed: ") + e.what());
    }
    if (m + 1 < n) p = f(p);
  }
  return acc;
}

void check_not_excluded(const RationalMap& f, const SpherePoint& x, int m) {
  for (const SpherePoint& p : infinity_orbit(f, m))
    if (p == x) throw Error(ErrorKind::ExcludedPoint, x.to_string() + " lies on the forward orbit of infinity");
}

std::vector<TreeLeaf> preimage_tree(const RationalMap& f, const Potential& phi, const SpherePoint& x, int m,
                                    std::int64_t l, std::int64_t prec) {
  auto constant = phi.constant_value();
  std::vector<Node> level{{PointBall{x, Dyadic()}, BigInt(1), BallReal()}};
  for (int depth = 1; depth <= m; ++depth) {
    std::vector<Node> next;
    next.reserve(level.size() * static_cast<std::size_t>(f.degree()));
    for (const Node& node : level) {
      for (RootCluster& c : preimages(f, node.point, l, true)) {
        BallReal v = constant ? BallReal::from_rational(*constant, prec + 8) : phi.on_ball(c.disc, prec);
        next.push_back({c.disc, node.multiplicity * c.multiplicity, ball_add(node.birkhoff, v, prec + 8)});
      }
    }
    level = std::move(next);
  }
  std::vector<TreeLeaf> out;
  out.reserve(level.size());
  for (Node& n : level) out.push_back({n.point, n.multiplicity, n.birkhoff});
  return out;
}

BallReal ruelle_apply(const RationalMap& f, const Potential& phi, const Potential& u, const SpherePoint& x, int m,
                      std::int64_t n) {
  check_not_excluded(f, x, m);
  Dyadic target = Dyadic::pow2(-n);
  if (m == 0) {
    BallReal v = u(x, n + 4);
    if (v.rad <= target) return v;
  }
  // size the precision from the magnitude of the result: at most deg^m e^{m sup|phi|} sup|u|
  std::int64_t extra = 24 + m * static_cast<std::int64_t>(std::ceil(std::log2(f.degree()))) +
                       static_cast<std::int64_t>(std::ceil(std::log2(m + 2.0)));
  Rational lip = holder_bound(phi) + holder_bound(u);
  std::int64_t lip_bits = static_cast<std::int64_t>(std::ceil(std::log2(lip.get_d() + 1)));
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::int64_t prec = n + extra + 32 * attempt;
    std::int64_t l = n + extra + lip_bits + 32 * attempt;
    std::vector<TreeLeaf> leaves = preimage_tree(f, phi, x, m, l, prec);
    BallReal value = leaf_sum(leaves, u, prec);
    extra = std::max(extra, magnitude_bits(value) + 24);
    if (value.rad <= target) return value;
  }
  throw Error(ErrorKind::PrecisionExhausted, "Ruelle iterate did not reach the requested precision");
}

PressureResult pressure(const RationalMap& f, const Potential& phi, std::int64_t n, const PressureOptions& opt) {
  if (f.degree() < 2) throw Error(ErrorKind::InvalidArgument, "pressure needs a map of degree >= 2");
  if (!opt.empirical && (opt.c0 <= 0 || opt.R < 0))
    throw Error(ErrorKind::InvalidArgument, "certified pressure needs c0 > 0 and R >= 0");
  PressureResult res;
  res.c0_used = opt.c0;
  res.r_used = opt.R;
  res.certified = !opt.empirical;
  res.mode = opt.empirical ? "empirical" : "certified";

  // truncation depth: smallest N > 2^(n+1) c0 R, at least 1
  Rational bound = opt.c0 * opt.R;
  mpq_mul_2exp(bound.get_mpq_t(), bound.get_mpq_t(), static_cast<mp_bitcnt_t>(n + 1));
  BigInt big_n = floor_plus_one(bound);
  if (big_n < 1) big_n = 1;

  auto leaves_for = [&](std::int64_t depth) { return ipow(f.degree(), depth); };
  std::int64_t max_depth = opt.empirical ? 64 : (big_n.fits_slong_p() ? big_n.get_si() : INT64_MAX);
  if (!opt.empirical && (!big_n.fits_slong_p() || leaves_for(max_depth) > opt.max_leaves))
    throw Error(ErrorKind::PrecisionExhausted,
                "certified pressure needs N = " + big_n.get_str() + ", a preimage tree beyond the leaf budget");

  // anchor: first ideal point away from the forward orbit of infinity
  std::vector<SpherePoint> orbit = infinity_orbit(f, static_cast<int>(std::min<std::int64_t>(max_depth, 4096)));
  bool found = false;
  for (long k = 1; k <= 10000 && !found; ++k) {
    SpherePoint s = ideal_enumerate(BigInt(k));
    bool near = false;
    for (const SpherePoint& p : orbit) near = near || s == p || chordal_less_pow2(s, p, n + 2);
    if (near) continue;
    res.anchor = s;
    res.anchor_index = k;
    found = true;
  }
  if (!found) throw Error(ErrorKind::ExcludedAnchor, "no admissible anchor among the first 10000 ideal points");

  auto estimate = [&](std::int64_t depth, std::int64_t bits) {
    Dyadic target = Dyadic::pow2(-bits - 1);
    std::int64_t abs_bits = bits + 16;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt, abs_bits += 48) {
      BallReal l = ruelle_apply(f, phi, Potential::constant(1), res.anchor, static_cast<int>(depth), abs_bits);
      if (!l.positive()) continue;
      BallReal w = ball_div(ball_log(l, bits + 8), BallReal(Dyadic(static_cast<long>(depth))), bits + 8);
      if (w.rad <= target) return w;
    }
    throw Error(ErrorKind::PrecisionExhausted, "pressure estimate did not reach the requested precision");
  };

  if (!opt.empirical) {
    std::int64_t depth = big_n.get_si();
    BallReal w = estimate(depth, n + 2);
    // truncation error < c0 R / N <= 2^-(n+1)
    Rational trunc = opt.c0 * opt.R / Rational(big_n);
    Dyadic t = trunc == 0 ? Dyadic() : round_rel(trunc, kRadiusBits, Round::Up);
    res.value = ball_widen(w, t);
    res.n_used = depth;
    if (res.value.rad > Dyadic::pow2(-n)) throw Error(ErrorKind::PrecisionExhausted, "pressure radius above 2^-n");
    return res;
  }

  BallReal prev = estimate(1, n + 2);
  for (std::int64_t depth = 2; depth <= max_depth; ++depth) {
    if (leaves_for(depth) > opt.max_leaves) break;
    BallReal cur = estimate(depth, n + 2);
    Dyadic gap = (cur.mid - prev.mid).abs();
    prev = cur;
    res.n_used = depth;
    if (gap <= Dyadic::pow2(-n - 2)) break;
  }
  if (res.n_used == 0) res.n_used = 1;
  res.value = prev;
  return res;
}

FiniteMeasure backward_orbit_measure(const RationalMap& f, const Potential& phi, const SpherePoint& x, int depth,
                                     std::int64_t l) {
  check_not_excluded(f, x, depth);
  std::int64_t prec = l + 16;
  std::vector<TreeLeaf> leaves = preimage_tree(f, phi, x, depth, l, prec);
  std::vector<Atom> atoms;
  Dyadic displacement;
  for (const TreeLeaf& leaf : leaves) displacement = max(displacement, leaf.point.rad);

  auto constant = phi.constant_value();
  if (constant) {
    // weights deg / deg(f)^depth, exactly
    BigInt total = ipow(f.degree(), depth);
    for (const TreeLeaf& leaf : leaves) atoms.push_back({leaf.point.center, Rational(leaf.multiplicity, total)});
  } else {
    std::vector<BallReal> w;
    BallReal sum;
    for (const TreeLeaf& leaf : leaves) {
      w.push_back(ball_mul(ball_exp(leaf.birkhoff, prec), BallReal(Dyadic(leaf.multiplicity, 0)), prec));
      sum = ball_add(sum, w.back(), prec);
    }
    // rounded normalized weights; the weight error moves mass by at most
    // diam(sphere) / 2 * sum |p_i - w_i| = sum |p_i - w_i|
    std::vector<Rational> approx;
    Rational approx_sum;
    for (const BallReal& wi : w) {
      approx.push_back(wi.mid.to_rational());
      approx_sum += approx.back();
    }
    Rational weight_error;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Rational q = approx[i] / approx_sum;
      BallReal p = ball_div(w[i], sum, prec);
      weight_error += abs(p.mid.to_rational() - q) + p.rad.to_rational();
      atoms.push_back({leaves[i].point.center, q});
    }
    if (weight_error > 0) displacement = displacement + round_rel(weight_error, kRadiusBits, Round::Up);
  }
  FiniteMeasure mu(Space::RiemannSphere, std::move(atoms));
  mu.set_displacement(displacement);
  return mu;
}

}  // namespace equistate
