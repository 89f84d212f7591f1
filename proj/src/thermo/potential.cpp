#include "equistate/thermo/potential.hpp"

#include <map>

#include "equistate/error.hpp"

namespace equistate {

namespace {

BallReal clamp_distance(const BallReal& d) {
  Dyadic lo = max(Dyadic(), d.lower());
  Dyadic hi = min(Dyadic(2), d.upper());
  if (d.is_exact()) return d;
  return BallReal::from_interval(lo, hi);
}

// A monomial is a sorted list of atom keys; atoms are basis or hat nodes.
struct AtomInfo {
  Rational sup;
  Rational lip;
};
using Monomial = std::vector<std::string>;
using NormalForm = std::map<Monomial, Rational>;

NormalForm expand(const Potential& p, std::map<std::string, AtomInfo>& atoms) {
  switch (p.op()) {
    case Potential::Op::Const: {
      NormalForm f;
      if (p.value() != 0) f[{}] = p.value();
      return f;
    }
    case Potential::Op::Basis:
    case Potential::Op::Hat: {
      std::string key = p.to_string();
      if (p.op() == Potential::Op::Basis) atoms[key] = {Rational(2), Rational(1)};
      else atoms[key] = {Rational(1), 1 / p.hat_eps()};
      return {{{key}, Rational(1)}};
    }
    case Potential::Op::Sum: {
      NormalForm f;
      for (auto& c : p.children())
        for (auto& [m, q] : expand(c, atoms)) f[m] += q;
      return f;
    }
    case Potential::Op::Prod: {
      NormalForm f{{{}, Rational(1)}};
      for (auto& c : p.children()) {
        NormalForm g = expand(c, atoms), h;
        for (auto& [m1, q1] : f)
          for (auto& [m2, q2] : g) {
            Monomial m = m1;
            m.insert(m.end(), m2.begin(), m2.end());
            std::sort(m.begin(), m.end());
            h[m] += q1 * q2;
          }
        f = std::move(h);
      }
      return f;
    }
    case Potential::Op::Scale: {
      NormalForm f = expand(p.children()[0], atoms);
      for (auto& [m, q] : f) q *= p.value();
      return f;
    }
  }
  return {};
}

}  // namespace

Potential Potential::constant(Rational q) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  q.canonicalize();
  n->q = q;
  return Potential(n);
}

Potential Potential::basis(SpherePoint s) {
  auto n = std::make_shared<Node>();
  n->op = Op::Basis;
  n->point = std::move(s);
  return Potential(n);
}

Potential Potential::hat(SpherePoint center, Rational r, Rational eps) {
  if (r < 0 || eps <= 0) throw Error(ErrorKind::InvalidArgument, "hat needs r >= 0 and eps > 0");
  auto n = std::make_shared<Node>();
  n->op = Op::Hat;
  n->point = std::move(center);
  n->r = r;
  n->eps = eps;
  return Potential(n);
}

Potential Potential::sum(std::vector<Potential> terms) {
  auto n = std::make_shared<Node>();
  n->op = Op::Sum;
  n->kids = std::move(terms);
  return Potential(n);
}

Potential Potential::prod(std::vector<Potential> factors) {
  auto n = std::make_shared<Node>();
  n->op = Op::Prod;
  n->kids = std::move(factors);
  return Potential(n);
}

Potential Potential::scale(Rational q, Potential p) {
  auto n = std::make_shared<Node>();
  n->op = Op::Scale;
  q.canonicalize();
  n->q = q;
  n->kids = {std::move(p)};
  return Potential(n);
}

BallReal Potential::operator()(const SpherePoint& x, std::int64_t prec) const {
  return on_ball(PointBall{x, Dyadic()}, prec);
}

BallReal Potential::on_ball(const PointBall& x, std::int64_t prec) const {
  std::int64_t wp = prec + 8;
  switch (op()) {
    case Op::Const:
      return BallReal::from_rational(value(), wp);
    case Op::Basis:
      return clamp_distance(ball_widen(chordal(x.center, point(), wp), x.rad));
    case Op::Hat: {
      TestFunction tau(MeasurePoint(point()), hat_r(), hat_eps());
      return tau.on_ball(MeasurePoint(x.center), x.rad, wp);
    }
    case Op::Sum: {
      BallReal acc;
      for (auto& c : children()) acc = ball_add(acc, c.on_ball(x, prec), wp);
      return acc;
    }
    case Op::Prod: {
      BallReal acc(Dyadic(1));
      for (auto& c : children()) acc = ball_mul(acc, c.on_ball(x, prec), wp);
      return acc;
    }
    case Op::Scale:
      return ball_mul(BallReal::from_rational(value(), wp), children()[0].on_ball(x, prec), wp);
  }
  return {};
}

std::optional<Rational> Potential::constant_value() const {
  switch (op()) {
    case Op::Const: return value();
    case Op::Basis:
    case Op::Hat: return std::nullopt;
    case Op::Sum: {
      Rational s;
      for (auto& c : children()) {
        auto v = c.constant_value();
        if (!v) return std::nullopt;
        s += *v;
      }
      return s;
    }
    case Op::Prod: {
      Rational s(1);
      for (auto& c : children()) {
        auto v = c.constant_value();
        if (!v) return std::nullopt;
        s *= *v;
      }
      return s;
    }
    case Op::Scale: {
      auto v = children()[0].constant_value();
      if (!v) return std::nullopt;
      return value() * *v;
    }
  }
  return std::nullopt;
}

std::string Potential::to_string() const {
  auto join = [&](const char* name) {
    std::string s = std::string(name) + "(";
    for (std::size_t i = 0; i < children().size(); ++i) s += (i ? ", " : "") + children()[i].to_string();
    return s + ")";
  };
  switch (op()) {
    case Op::Const: return equistate::to_string(value());
    case Op::Basis: return "sigma(x, " + point().to_string() + ")";
    case Op::Hat:
      return "hat(" + point().to_string() + ", " + equistate::to_string(hat_r()) + ", " +
             equistate::to_string(hat_eps()) + ")";
    case Op::Sum: return join("sum");
    case Op::Prod: return join("prod");
    case Op::Scale: return equistate::to_string(value()) + "*" + children()[0].to_string();
  }
  return {};
}

Rational holder_bound(const Potential& phi) {
  std::map<std::string, AtomInfo> atoms;
  NormalForm f = expand(phi, atoms);
  Rational total;
  for (auto& [m, q] : f) {
    if (m.empty() || q == 0) continue;
    Rational lip;
    for (std::size_t j = 0; j < m.size(); ++j) {
      Rational term = atoms[m[j]].lip;
      for (std::size_t k = 0; k < m.size(); ++k)
        if (k != j) term *= atoms[m[k]].sup;
      lip += term;
    }
    total += abs(q) * lip;
  }
  return total;
}

}  // namespace equistate
