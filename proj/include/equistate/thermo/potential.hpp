#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "equistate/measure/test_function.hpp"
#include "equistate/sphere/sphere_point.hpp"

namespace equistate {

/// Expression tree over constants, basis functions sigma(x, s), hat functions,
/// sums, products and rational scaling.
class Potential {
 public:
  enum class Op { Const, Basis, Hat, Sum, Prod, Scale };

  static Potential constant(Rational q);
  /// x -> sigma(x, s)
  static Potential basis(SpherePoint s);
  static Potential hat(SpherePoint center, Rational r, Rational eps);
  static Potential sum(std::vector<Potential> terms);
  static Potential prod(std::vector<Potential> factors);
  static Potential scale(Rational q, Potential p);

  Potential() : Potential(constant(Rational(0))) {}

  Op op() const { return node_->op; }
  const Rational& value() const { return node_->q; }  // Const value or Scale factor
  const SpherePoint& point() const { return node_->point; }
  const Rational& hat_r() const { return node_->r; }
  const Rational& hat_eps() const { return node_->eps; }
  const std::vector<Potential>& children() const { return node_->kids; }

  BallReal operator()(const SpherePoint& x, std::int64_t prec) const;
  /// Encloses the values on the closed chordal ball B(center, rad).
  BallReal on_ball(const PointBall& x, std::int64_t prec) const;

  /// Exact value when the expression contains no basis or hat function.
  std::optional<Rational> constant_value() const;

  std::string to_string() const;

 private:
  struct Node {
    Op op = Op::Const;
    Rational q, r, eps;
    SpherePoint point;
    std::vector<Potential> kids;
  };
  explicit Potential(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Chordal Lipschitz bound computed on the expanded normal form
/// sum_t q_t prod_j g_{t,j}: each monomial contributes |q_t| sum_j L_j prod_{k != j} S_k,
/// with S = 2, L = 1 for basis functions and S = 1, L = 1/eps for hats. For
/// basis-only monomials of size m this is 2^(m-1) m |q_t|.
Rational holder_bound(const Potential& phi);

}  // namespace equistate
