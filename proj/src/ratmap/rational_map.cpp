#include "equistate/ratmap/rational_map.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "equistate/error.hpp"

namespace equistate {

namespace {

struct Fraction {
  Polynomial n, d;
};

Fraction add(const Fraction& a, const Fraction& b) { return {a.n * b.d + b.n * a.d, a.d * b.d}; }
Fraction sub(const Fraction& a, const Fraction& b) { return {a.n * b.d - b.n * a.d, a.d * b.d}; }
Fraction mul(const Fraction& a, const Fraction& b) { return {a.n * b.n, a.d * b.d}; }
Fraction div(const Fraction& a, const Fraction& b) {
  if (b.n.is_zero()) throw Error(ErrorKind::Parse, "division by zero in map expression");
  return {a.n * b.d, a.d * b.n};
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Fraction parse() {
    Fraction f = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, "map expression: " + what + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Fraction expr() {
    Fraction f;
    if (eat('-')) f = sub(constant(0), term());
    else {
      eat('+');
      f = term();
    }
    for (;;) {
      if (eat('+')) f = add(f, term());
      else if (eat('-')) f = sub(f, term());
      else return f;
    }
  }

  Fraction term() {
    Fraction f = power();
    for (;;) {
      if (eat('*')) f = mul(f, power());
      else if (eat('/')) f = div(f, power());
      else {
        // implicit product such as "2z" or "3i"
        skip();
        if (pos_ < s_.size() && (s_[pos_] == 'z' || s_[pos_] == 'i' || s_[pos_] == '(')) f = mul(f, power());
        else return f;
      }
    }
  }

  Fraction power() {
    Fraction b = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      Fraction r = constant(1);
      for (int k = 0; k < e; ++k) r = mul(r, b);
      return r;
    }
    return b;
  }

  Fraction atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Fraction f = expr();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    if (c == 'z') {
      ++pos_;
      return {Polynomial::z(), Polynomial(GaussianRational(1))};
    }
    if (c == 'i') {
      ++pos_;
      return {Polynomial(GaussianRational(0, 1)), Polynomial(GaussianRational(1))};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return {Polynomial(GaussianRational(parse_rational(s_.substr(start, pos_ - start)))),
              Polynomial(GaussianRational(1))};
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  static Fraction constant(long v) { return {Polynomial(GaussianRational(v)), Polynomial(GaussianRational(1))}; }

  std::string_view s_;
  std::size_t pos_ = 0;
};

bool too_large(const SpherePoint& p) {
  if (p.is_infinity()) return false;
  auto bits = [](const Rational& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
  };
  return bits(p.re()) + bits(p.im()) > 20000;
}

}  // namespace

RationalMap::RationalMap(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  Polynomial g = gcd(num_, den_);
  if (g.degree() >= 1) throw Error(ErrorKind::NotCoprime, "numerator and denominator share the factor " + g.to_string());
  degree_ = std::max(num_.degree(), den_.degree());
  if (degree_ < 1) throw Error(ErrorKind::InvalidArgument, "constant map");
}

RationalMap RationalMap::parse(std::string_view expr) {
  Fraction f = Parser(expr).parse();
  if (f.d.is_zero()) throw Error(ErrorKind::Parse, "map expression has a zero denominator");
  Polynomial g = gcd(f.n, f.d);
  Polynomial n = f.n, d = f.d;
  if (g.degree() >= 1) {
    n = divmod(n, g).first;
    d = divmod(d, g).first;
  }
  // normalize so that the denominator is monic
  GaussianRational s = GaussianRational(1) / d.leading();
  return RationalMap(s * n, s * d);
}

SpherePoint RationalMap::operator()(const SpherePoint& z) const {
  if (z.is_infinity()) {
    if (num_.degree() > den_.degree()) return SpherePoint::infinity();
    if (num_.degree() < den_.degree()) return SpherePoint(0);
    return SpherePoint(num_.leading() / den_.leading());
  }
  GaussianRational d = den_(z.z());
  if (d.is_zero()) return SpherePoint::infinity();
  return SpherePoint(num_(z.z()) / d);
}

Polynomial RationalMap::wronskian() const { return num_.derivative() * den_ - num_ * den_.derivative(); }

std::string RationalMap::to_string() const {
  if (den_ == Polynomial(GaussianRational(1))) return num_.to_string();
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

std::vector<RootCluster> preimages(const RationalMap& f, const SpherePoint& x, std::int64_t l) {
  const int d = f.degree();
  Polynomial g;
  if (x.is_infinity()) {
    g = f.den();
  } else if (x.z().norm2() <= 1) {
    g = f.num() - x.z() * f.den();
  } else {
    g = (GaussianRational(1) / x.z()) * f.num() - f.den();
  }
  if (g.is_zero()) throw Error(ErrorKind::ChartFailure, "degenerate preimage equation");
  std::vector<RootCluster> out;
  if (g.degree() >= 1) out = certified_roots(g, l);
  if (g.degree() < d) out.push_back({PointBall{SpherePoint::infinity(), Dyadic()}, d - g.degree()});
  return out;
}

std::vector<RootCluster> preimages(const RationalMap& f, const PointBall& x, std::int64_t l, bool best_effort) {
  if (x.rad.is_zero()) return preimages(f, x.center, l);
  if (x.rad > Dyadic::pow2(-2)) throw Error(ErrorKind::PrecisionExhausted, "preimage target ball too wide");
  const int d = f.degree();
  // Points within chordal distance rho <= 1/4 of a point c with |c| <= 1 satisfy
  // |x - c| <= 2 rho, and then |x - c| <= rho / 2 * sqrt((1 + (|c| + 2 rho)^2)(1 + |c|^2)).
  // Beyond the unit disc the same holds for 1/x, the chordal metric being invariant.
  bool swapped = x.center.is_infinity() || x.center.z().norm2() > 1;
  GaussianRational c = x.center.is_infinity() ? GaussianRational() : swapped ? GaussianRational(1) / x.center.z() : x.center.z();
  Dyadic a2 = round_rel(c.norm2(), 64, Round::Up);
  Dyadic a = a2.is_zero() ? Dyadic() : sqrt(a2, 64, Round::Up);
  Dyadic t = a + x.rad.mul_2exp(1);
  Dyadic e = (x.rad.mul_2exp(-1) * sqrt((Dyadic(1) + t * t) * (Dyadic(1) + a2), 64, Round::Up));
  e = min(round_rel(e, kRadiusBits, Round::Up), x.rad.mul_2exp(1));
  const Polynomial& pa = swapped ? f.den() : f.num();
  const Polynomial& pb = swapped ? f.num() : f.den();
  Rational e2 = e.to_rational() * e.to_rational();
  GaussianRational lc = pa.coeff(d) - c * pb.coeff(d);
  if (!lc.is_zero() && lc.norm2() > e2 * pb.coeff(d).norm2())
    return certified_roots_pencil(pa, pb, c, e, d, l, best_effort);

  // The disc may contain f(infinity): solve for w = 1/z instead.
  GaussianRational lc0 = pa.coeff(0) - c * pb.coeff(0);
  if (lc0.is_zero() || lc0.norm2() <= e2 * pb.coeff(0).norm2())
    throw Error(ErrorKind::ChartFailure, "target ball contains both f(0) and f(infinity)");
  std::vector<RootCluster> w = certified_roots_pencil(pa.reversed(d), pb.reversed(d), c, e, d, l, best_effort);
  for (auto& cl : w) {
    const SpherePoint& p = cl.disc.center;
    if (p.is_infinity()) cl.disc.center = SpherePoint(0);
    else if (p.z().is_zero()) cl.disc.center = SpherePoint::infinity();
    else cl.disc.center = SpherePoint(GaussianRational(1) / p.z());
  }
  std::sort(w.begin(), w.end(), [](const RootCluster& a, const RootCluster& b) { return a.disc.center < b.disc.center; });
  return w;
}

std::vector<RootCluster> critical_points(const RationalMap& f, std::int64_t l) {
  Polynomial w = f.wronskian();
  std::vector<RootCluster> out;
  if (w.degree() >= 1) out = certified_roots(w, l);
  int at_inf = 2 * f.degree() - 2 - std::max(w.degree(), 0);
  if (at_inf > 0) out.push_back({PointBall{SpherePoint::infinity(), Dyadic()}, at_inf});
  return out;
}

PostcriticalResult postcritical_orbit(const RationalMap& f, int maxlen) {
  PostcriticalResult res;
  std::vector<SpherePoint> crit;
  for (auto& c : critical_points(f, 64)) {
    if (!c.disc.rad.is_zero()) return res;
    crit.push_back(c.disc.center);
  }
  std::set<SpherePoint> post;
  for (const SpherePoint& c : crit) {
    std::vector<SpherePoint> orbit{c};
    bool closed = false;
    for (int step = 0; step < maxlen && !closed; ++step) {
      SpherePoint next = f(orbit.back());
      if (too_large(next)) return res;
      auto it = std::find(orbit.begin(), orbit.end(), next);
      if (it != orbit.end()) {
        int pre = static_cast<int>(it - orbit.begin());
        res.orbits.push_back({c, pre, static_cast<int>(orbit.size()) - pre});
        closed = true;
      } else {
        orbit.push_back(next);
      }
    }
    if (!closed) return res;
    // post(f) is the union of the forward images f^n(c), n >= 1
    const CriticalOrbit& o = res.orbits.back();
    for (std::size_t k = 1; k < orbit.size(); ++k) post.insert(orbit[k]);
    if (o.preperiod == 0) post.insert(orbit[0]);
  }
  res.finite = true;
  res.post.assign(post.begin(), post.end());
  return res;
}

}  // namespace equistate
