#include "equistate/ratmap/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>

#include "equistate/error.hpp"

namespace equistate {

namespace {

constexpr std::int64_t kPrecisionCap = 1 << 14;
constexpr int kMaxIterations = 600;

struct DZ {
  Dyadic re, im;
};

struct Disc {
  GaussianRational c;
  Dyadic r;
  int count = 1;
  std::vector<std::size_t> members;  // indices of the approximations merged into it
};

ComplexBall exact_ball(const DZ& z) { return {BallReal(z.re), BallReal(z.im)}; }

Dyadic hypot_up(const Dyadic& a, const Dyadic& b) {
  Dyadic s = a * a + b * b;
  return s.is_zero() ? Dyadic() : sqrt(round_rel(s, 64, Round::Up), 40, Round::Up);
}

Dyadic abs_up(const ComplexBall& w) {
  return hypot_up(w.re.mid.abs() + w.re.rad, w.im.mid.abs() + w.im.rad);
}

Dyadic rational_abs_up(const GaussianRational& z) {
  Rational n = z.norm2();
  if (n == 0) return Dyadic();
  return sqrt(round_rel(n, 64, Round::Up), 40, Round::Up);
}

DZ round_complex(const Dyadic& re, const Dyadic& im, std::int64_t bits) {
  std::int64_t e = 0;
  if (!re.is_zero()) e = re.msb();
  if (!im.is_zero()) e = std::max(e, im.msb());
  return {round_abs(re, bits - e, Round::Nearest), round_abs(im, bits - e, Round::Nearest)};
}

// Ehrlich-Aberth iteration in double precision for starting values.
std::vector<DZ> aberth_start(const std::vector<ComplexBall>& c) {
  using C = std::complex<double>;
  std::size_t k = c.size() - 1;
  std::vector<C> a(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) a[i] = C(c[i].re.mid.to_double(), c[i].im.mid.to_double());
  double bound = 0;
  for (std::size_t i = 0; i < k; ++i) bound = std::max(bound, std::abs(a[i] / a[k]));
  double r0 = std::abs(a[0]) > 0 ? std::pow(std::abs(a[0] / a[k]), 1.0 / static_cast<double>(k)) : 0.5;
  if (!std::isfinite(r0) || r0 <= 0) r0 = 1;
  r0 = std::min(r0, 1 + bound);
  std::vector<C> z(k);
  for (std::size_t i = 0; i < k; ++i) {
    double t = 2 * M_PI * static_cast<double>(i) / static_cast<double>(k) + 0.7;
    z[i] = std::polar(r0, t);
  }
  for (int it = 0; it < 500; ++it) {
    double worst = 0;
    for (std::size_t i = 0; i < k; ++i) {
      C p = a[k], dp = 0;
      for (std::size_t t = k; t-- > 0;) {
        dp = dp * z[i] + p;
        p = p * z[i] + a[t];
      }
      if (p == C(0)) continue;
      C ratio = p / dp;
      C s = 0;
      for (std::size_t j = 0; j < k; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      C w = ratio / (1.0 - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[i] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[i])));
    }
    if (worst < 1e-15) break;
  }
  std::vector<DZ> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    double re = std::isfinite(z[i].real()) ? z[i].real() : 1.0;
    double im = std::isfinite(z[i].imag()) ? z[i].imag() : static_cast<double>(i);
    out[i] = {Dyadic::from_double(re), Dyadic::from_double(im)};
  }
  // approximations must be pairwise distinct
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (out[i].re == out[j].re && out[i].im == out[j].im) {
        out[i].re = out[i].re + Dyadic::pow2(-30) * Dyadic(static_cast<long>(i + 1));
        out[i].im = out[i].im + Dyadic::pow2(-31) * Dyadic(static_cast<long>(j + 1));
      }
  return out;
}

// W_i for the midpoint polynomial as a ball, plus a bound on how far W_i can move
// over the whole family.
struct Correction {
  ComplexBall w;
  Dyadic delta;
};

class Family {
 public:
  virtual ~Family() = default;
  virtual std::vector<ComplexBall> midpoint(std::int64_t wp) const = 0;
  /// nullopt when a denominator may vanish
  virtual std::optional<std::vector<Correction>> corrections(const std::vector<DZ>& z, std::int64_t wp) const = 0;
};

ComplexBall horner(const std::vector<ComplexBall>& c, const ComplexBall& z, std::int64_t wp) {
  ComplexBall acc = c.back();
  for (std::size_t t = c.size() - 1; t-- > 0;) acc = cball_add(cball_mul(acc, z, wp), c[t], wp);
  return acc;
}

ComplexBall node_product(const std::vector<DZ>& z, std::size_t i, std::int64_t wp) {
  ComplexBall p{BallReal(Dyadic(1)), BallReal()};
  for (std::size_t j = 0; j < z.size(); ++j)
    if (j != i) p = cball_mul(p, exact_ball(DZ{z[i].re - z[j].re, z[i].im - z[j].im}), wp);
  return p;
}

Dyadic abs_down(const ComplexBall& w) {
  Dyadic re = max(Dyadic(), w.re.mid.abs() - w.re.rad);
  Dyadic im = max(Dyadic(), w.im.mid.abs() - w.im.rad);
  Dyadic s = re * re + im * im;
  return s.is_zero() ? Dyadic() : sqrt(round_rel(s, 64, Round::Down), 40, Round::Down);
}

// Every polynomial whose coefficients lie in the given balls.
class BallFamily : public Family {
 public:
  explicit BallFamily(std::vector<ComplexBall> c) : c_(std::move(c)) {}
  std::vector<ComplexBall> midpoint(std::int64_t) const override { return c_; }
  std::optional<std::vector<Correction>> corrections(const std::vector<DZ>& z, std::int64_t wp) const override {
    std::vector<Correction> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      ComplexBall den = cball_mul(c_.back(), node_product(z, i, wp), wp);
      try {
        out[i].w = cball_div(horner(c_, exact_ball(z[i]), wp), den, wp);
      } catch (const Error&) {
        return std::nullopt;
      }
    }
    return out;
  }

 private:
  std::vector<ComplexBall> c_;
};

// Exact polynomial, with coefficients rounded to the working precision.
class ExactFamily : public Family {
 public:
  explicit ExactFamily(const Polynomial& p) : p_(p) {}
  std::vector<ComplexBall> midpoint(std::int64_t wp) const override { return to_balls(p_, wp); }
  std::optional<std::vector<Correction>> corrections(const std::vector<DZ>& z, std::int64_t wp) const override {
    return BallFamily(to_balls(p_, wp)).corrections(z, wp);
  }

 private:
  Polynomial p_;
};

// A - x B for every x in the closed disc D(x0, e), of formal degree d. With
// alpha = A(z_i), beta = B(z_i), gamma = A_d, delta = B_d the correction
// W_i(x) = (alpha - x beta) / ((gamma - x delta) P_i) is a Moebius function of x and
// |W_i(x) - W_i(x0)| = |x - x0| |alpha delta - beta gamma| / (|gamma - x delta| |gamma - x0 delta| |P_i|).
class PencilFamily : public Family {
 public:
  PencilFamily(Polynomial a, Polynomial b, GaussianRational x0, Dyadic e, int d)
      : a_(std::move(a)), b_(std::move(b)), x0_(std::move(x0)), e_(std::move(e)), d_(d) {
    mid_ = a_ - x0_ * b_;
    std::vector<GaussianRational> c(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) c[static_cast<std::size_t>(k)] = mid_.coeff(k);
    mid_coeffs_ = std::move(c);
  }
  std::vector<ComplexBall> midpoint(std::int64_t wp) const override {
    std::vector<ComplexBall> r;
    for (auto& c : mid_coeffs_) r.push_back(ComplexBall::from_rational(c.re, c.im, wp));
    return r;
  }
  std::optional<std::vector<Correction>> corrections(const std::vector<DZ>& z, std::int64_t wp) const override {
    std::vector<ComplexBall> mc = midpoint(wp);
    std::vector<ComplexBall> ac = to_balls(a_, wp), bc = to_balls(b_, wp);
    ComplexBall gamma = ComplexBall::from_rational(a_.coeff(d_).re, a_.coeff(d_).im, wp);
    ComplexBall delta = ComplexBall::from_rational(b_.coeff(d_).re, b_.coeff(d_).im, wp);
    Dyadic lc_lo = abs_down(mc.back());
    Dyadic lc_far = lc_lo - e_ * abs_up(delta);
    if (lc_far.sign() <= 0) return std::nullopt;
    std::vector<Correction> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      ComplexBall zi = exact_ball(z[i]);
      ComplexBall p = node_product(z, i, wp);
      try {
        out[i].w = cball_div(horner(mc, zi, wp), cball_mul(mc.back(), p, wp), wp);
      } catch (const Error&) {
        return std::nullopt;
      }
      if (e_.is_zero()) continue;
      ComplexBall alpha = ac.empty() ? ComplexBall() : horner(ac, zi, wp);
      ComplexBall beta = bc.empty() ? ComplexBall() : horner(bc, zi, wp);
      ComplexBall cross = cball_sub(cball_mul(alpha, delta, wp), cball_mul(beta, gamma, wp), wp);
      Dyadic den = round_rel(lc_lo * lc_far * abs_down(p), 40, Round::Down);
      if (den.sign() <= 0) return std::nullopt;
      out[i].delta = round_rel(divide(e_ * abs_up(cross), den, 40, Round::Up), kRadiusBits, Round::Up);
    }
    return out;
  }

 private:
  Polynomial a_, b_, mid_;
  std::vector<GaussianRational> mid_coeffs_;
  GaussianRational x0_;
  Dyadic e_;
  int d_;
};

// Gerschgorin discs of the Weierstrass matrix diag(z) - W 1^T, whose eigenvalues are
// the roots: D(z_i - W_i, (k-1)|W_i|). Over a family the union of these discs lies
// in D(z_i - mid W_i, r + delta + (k-1)(|W_i| + delta)).
std::vector<Disc> gerschgorin(const std::vector<DZ>& z, const std::vector<Correction>& w) {
  std::size_t k = z.size();
  std::vector<Disc> out;
  for (std::size_t i = 0; i < k; ++i) {
    const ComplexBall& wi = w[i].w;
    Dyadic spread = hypot_up(wi.re.rad, wi.im.rad) + w[i].delta;
    Dyadic r = spread + (abs_up(wi) + w[i].delta) * Dyadic(static_cast<long>(k - 1));
    out.push_back({GaussianRational((z[i].re - wi.re.mid).to_rational(), (z[i].im - wi.im.mid).to_rational()),
                   round_rel(r, kRadiusBits, Round::Up), 1, {i}});
  }
  return out;
}

bool overlap(const Disc& a, const Disc& b) {
  Rational s = (a.r + b.r).to_rational();
  return (a.c - b.c).norm2() <= s * s;
}

// Connected components of overlapping discs, each replaced by one enclosing disc.
std::vector<Disc> merge(std::vector<Disc> discs) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < discs.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < discs.size() && !changed; ++j) {
        if (!overlap(discs[i], discs[j])) continue;
        const Disc& a = discs[i];
        const Disc& b = discs[j];
        const Disc& big = a.r >= b.r ? a : b;
        const Disc& small = a.r >= b.r ? b : a;
        Dyadic r = max(big.r, rational_abs_up(big.c - small.c) + small.r);
        Disc m{big.c, round_rel(r, kRadiusBits, Round::Up), a.count + b.count, a.members};
        m.members.insert(m.members.end(), b.members.begin(), b.members.end());
        discs.erase(discs.begin() + static_cast<std::ptrdiff_t>(j));
        discs[i] = m;
        changed = true;
      }
  }
  return discs;
}

Dyadic worst_chordal(const std::vector<Disc>& discs) {
  Dyadic w;
  for (auto& d : discs) w = max(w, chordal_radius_of_disc(d.c, d.r));
  return w;
}

struct Attempt {
  std::vector<Disc> discs;
  Dyadic worst;
  bool ok = false;
};

Attempt attempt(const Family& fam, const std::vector<DZ>& z, std::int64_t wp) {
  auto w = fam.corrections(z, wp);
  if (!w) return {};
  std::vector<Disc> discs = merge(gerschgorin(z, *w));
  Dyadic worst = worst_chordal(discs);
  return {std::move(discs), worst, true};
}

// Approximations converging onto a multiple root of the midpoint polynomial make
// the discs of a coefficient-ball family blow up. Spread each cluster's
// approximations on a circle around their mean and keep the radius giving the
// tightest certified discs.
void respread(const Family& fam, std::vector<DZ>& z, const std::vector<Disc>& discs,
              std::int64_t wp, std::int64_t max_bits) {
  for (const Disc& d : discs) {
    std::size_t m = d.members.size();
    if (m < 2) continue;
    Dyadic sre, sim;
    for (std::size_t i : d.members) {
      sre = sre + z[i].re;
      sim = sim + z[i].im;
    }
    Dyadic cre = divide(sre, Dyadic(static_cast<long>(m)), wp, Round::Nearest);
    Dyadic cim = divide(sim, Dyadic(static_cast<long>(m)), wp, Round::Nearest);
    std::vector<DZ> best = z;
    Dyadic best_worst;
    bool have = false;
    for (std::int64_t t = 1; t <= max_bits; ++t) {
      std::vector<DZ> trial = z;
      for (std::size_t k = 0; k < m; ++k) {
        double ang = 2 * M_PI * static_cast<double>(k) / static_cast<double>(m) + 0.3;
        Dyadic dx = round_rel(Dyadic::from_double(std::cos(ang)), 40, Round::Nearest).mul_2exp(-t);
        Dyadic dy = round_rel(Dyadic::from_double(std::sin(ang)), 40, Round::Nearest).mul_2exp(-t);
        trial[d.members[k]] = {cre + dx, cim + dy};
      }
      Attempt a = attempt(fam, trial, wp);
      if (!a.ok) continue;
      if (!have || a.worst < best_worst) {
        best = trial;
        best_worst = a.worst;
        have = true;
      }
    }
    z = best;
  }
}

struct Solved {
  std::vector<Disc> discs;
  bool reached = false;
};

// True when every correction is dominated by the coefficient uncertainty, so
// further iteration cannot tighten the discs.
bool input_limited(const std::vector<Correction>& w) {
  for (const Correction& c : w) {
    const ComplexBall& wi = c.w;
    Dyadic mid = max(wi.re.mid.abs(), wi.im.mid.abs());
    Dyadic rad = max(wi.re.rad, wi.im.rad) + c.delta;
    if (mid > rad.mul_2exp(3)) return false;
  }
  return true;
}

Solved solve(const Family& fam, std::int64_t l, bool best_effort) {
  std::vector<ComplexBall> c0 = fam.midpoint(96);
  if (c0.size() < 2) return {{}, true};
  if (c0.back().contains_zero()) throw Error(ErrorKind::ChartFailure, "leading coefficient may vanish");
  std::vector<DZ> z = aberth_start(c0);
  Dyadic target = Dyadic::pow2(-l);
  std::int64_t prec = 64;
  Solved best;
  Dyadic best_worst;
  int since_improvement = 0;
  bool spread = false;
  auto give_up = [&](const char* why) -> Solved {
    if (best_effort && !best.discs.empty()) return best;
    throw Error(ErrorKind::PrecisionExhausted, why);
  };
  for (int it = 0; it < kMaxIterations; ++it) {
    std::int64_t wp = prec + 32;
    auto w = fam.corrections(z, wp);
    if (!w) {
      for (std::size_t i = 0; i < z.size(); ++i)
        z[i].re = z[i].re + Dyadic::pow2(-prec / 2) * Dyadic(static_cast<long>(i + 1));
      continue;
    }
    std::vector<Disc> discs = merge(gerschgorin(z, *w));
    Dyadic worst = worst_chordal(discs);
    if (worst <= target) return {discs, true};
    if (best.discs.empty() || worst < best_worst) {
      since_improvement = (best.discs.empty() || worst < best_worst.mul_2exp(-1)) ? 0 : since_improvement + 1;
      best = {discs, false};
      best_worst = worst;
    } else {
      ++since_improvement;
    }

    bool clustered = std::any_of(discs.begin(), discs.end(), [](const Disc& d) { return d.members.size() > 1; });
    if (input_limited(*w) || since_improvement > 40) {
      if (clustered && !spread) {
        respread(fam, z, discs, wp, std::min<std::int64_t>(prec, 4 * l + 64));
        spread = true;
        Attempt a = attempt(fam, z, wp);
        if (a.ok && a.worst <= target) return {a.discs, true};
        if (a.ok && a.worst < best_worst) {
          best = {a.discs, false};
          best_worst = a.worst;
        }
        since_improvement = 0;
        continue;
      }
      if (input_limited(*w)) return give_up("coefficient balls too wide for the requested radius");
    }

    // Weierstrass (Durand-Kerner) step, then raise the precision once the
    // corrections are small relative to it.
    double rel = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const ComplexBall& wi = (*w)[i].w;
      z[i] = round_complex(z[i].re - wi.re.mid, z[i].im - wi.im.mid, prec);
      double mag = std::max(1.0, std::hypot(z[i].re.to_double(), z[i].im.to_double()));
      rel = std::max(rel, std::hypot(wi.re.mid.to_double(), wi.im.mid.to_double()) / mag);
    }
    if (rel < std::ldexp(1.0, static_cast<int>(-prec / 2))) {
      if (prec >= kPrecisionCap) return give_up("root isolation reached the precision cap");
      prec = std::min(kPrecisionCap, prec * 2);
    }
  }
  return give_up("root isolation did not converge");
}

std::vector<RootCluster> to_clusters(const std::vector<Disc>& discs) {
  std::vector<RootCluster> out;
  for (auto& d : discs) out.push_back({PointBall{SpherePoint(d.c), chordal_radius_of_disc(d.c, d.r)}, d.count});
  std::sort(out.begin(), out.end(),
            [](const RootCluster& a, const RootCluster& b) { return a.disc.center < b.disc.center; });
  return out;
}

// Replaces an isolated simple root by the exact rational root inside it, if any.
void snap_exact(Disc& d, const Polynomial& f) {
  if (d.r.is_zero()) return;
  Rational r = d.r.to_rational();
  auto re = simplest_rational_between(d.c.re - r, d.c.re + r, 48);
  auto im = simplest_rational_between(d.c.im - r, d.c.im + r, 48);
  if (!re || !im) return;
  GaussianRational cand(*re, *im);
  if (f(cand).is_zero()) d = {cand, Dyadic(), d.count, {}};
}

bool pairwise_disjoint(const std::vector<Disc>& discs) {
  for (std::size_t i = 0; i < discs.size(); ++i)
    for (std::size_t j = i + 1; j < discs.size(); ++j)
      if (overlap(discs[i], discs[j])) return false;
  return true;
}

}  // namespace

Dyadic chordal_radius_of_disc(const GaussianRational& c, const Dyadic& r) {
  if (r.is_zero()) return Dyadic();
  // sigma(z, c) <= 2|z - c| / sqrt((1 + |c|^2)(1 + |z|^2)) with |z| >= |c| - r
  Dyadic c2 = round_rel(c.norm2(), 64, Round::Down);
  Dyadic clo = c2.is_zero() ? Dyadic() : sqrt(c2, 40, Round::Down);
  Dyadic t = max(Dyadic(), clo - r);
  Dyadic num = (r * r).mul_2exp(2);
  Dyadic den = round_rel((Dyadic(1) + c2) * (Dyadic(1) + t * t), 64, Round::Down);
  Dyadic q = divide(num, den, 40, Round::Up);
  return min(Dyadic(2), sqrt(q, kRadiusBits, Round::Up));
}

std::optional<Rational> simplest_rational_between(const Rational& lo_in, const Rational& hi_in, int max_depth) {
  Rational lo = lo_in, hi = hi_in;
  if (hi < lo) return std::nullopt;
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) {
    auto r = simplest_rational_between(-hi, -lo, max_depth);
    if (!r) return r;
    return Rational(-*r);
  }
  // 0 < lo <= hi: continued-fraction descent
  std::vector<BigInt> terms;
  for (int depth = 0; depth < max_depth; ++depth) {
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (Rational(fl) == lo) {
      terms.push_back(fl);
      break;
    }
    if (Rational(fl + 1) <= hi) {
      terms.push_back(fl + 1);
      break;
    }
    terms.push_back(fl);
    Rational nlo = 1 / (hi - fl);
    Rational nhi = 1 / (lo - fl);
    lo = nlo;
    hi = nhi;
    if (depth + 1 == max_depth) return std::nullopt;
  }
  Rational v(terms.back());
  for (std::size_t i = terms.size() - 1; i-- > 0;) v = Rational(terms[i]) + 1 / v;
  v.canonicalize();
  return v;
}

std::vector<RootCluster> certified_roots_ball(const std::vector<ComplexBall>& coeffs, std::int64_t l,
                                              bool best_effort) {
  if (coeffs.size() < 2) throw Error(ErrorKind::InvalidArgument, "root finding needs degree >= 1");
  Solved s = solve(BallFamily(coeffs), l, best_effort);
  return to_clusters(s.discs);
}

std::vector<RootCluster> certified_roots_pencil(const Polynomial& a, const Polynomial& b, const GaussianRational& x0,
                                                const Dyadic& e, int d, std::int64_t l, bool best_effort) {
  if (d < 1 || a.degree() > d || b.degree() > d) throw Error(ErrorKind::InvalidArgument, "bad pencil degree");
  GaussianRational lc = a.coeff(d) - x0 * b.coeff(d);
  Rational far = e.to_rational();
  if (lc.is_zero() || lc.norm2() <= far * far * b.coeff(d).norm2())
    throw Error(ErrorKind::ChartFailure, "leading coefficient may vanish on the disc");
  Solved s = solve(PencilFamily(a, b, x0, e, d), l, best_effort);
  return to_clusters(s.discs);
}

std::vector<RootCluster> certified_roots(const Polynomial& p, std::int64_t l) {
  if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "root finding needs degree >= 1");
  int m0 = p.zero_multiplicity();
  Polynomial q = p.divide_by_z_power(m0);
  std::vector<Polynomial> factors = squarefree_factors(q);
  Dyadic target = Dyadic::pow2(-l);

  std::vector<Disc> all;
  for (std::int64_t lw = l; lw <= l + 512; lw += 32) {
    all.clear();
    if (m0 > 0) all.push_back({GaussianRational(), Dyadic(), m0, {}});
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const Polynomial& f = factors[i];
      int mult = static_cast<int>(i) + 1;
      if (f.degree() < 1) continue;
      if (f.degree() == 1) {
        all.push_back({-f.coeff(0) / f.coeff(1), Dyadic(), mult, {}});
        continue;
      }
      Solved s = solve(ExactFamily(f), lw, false);
      for (Disc d : s.discs) {
        if (d.count == 1) snap_exact(d, f);
        d.count *= mult;
        all.push_back(d);
      }
    }
    if (pairwise_disjoint(all)) return to_clusters(all);
  }
  all = merge(all);
  if (worst_chordal(all) > target) throw Error(ErrorKind::PrecisionExhausted, "could not separate root clusters");
  return to_clusters(all);
}

}  // namespace equistate
