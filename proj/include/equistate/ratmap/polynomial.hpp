#pragma once

#include <string>
#include <vector>

#include "equistate/numerics/complex_ball.hpp"
#include "equistate/numerics/gaussian.hpp"

namespace equistate {

/// Polynomial with Gaussian-rational coefficients, c[k] multiplying z^k.
/// Trailing zero coefficients are trimmed, so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<GaussianRational> coeffs);
  Polynomial(GaussianRational c) : Polynomial(std::vector<GaussianRational>{std::move(c)}) {}  // NOLINT

  static Polynomial monomial(const GaussianRational& c, int k);
  static Polynomial z() { return monomial(GaussianRational(1), 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<GaussianRational>& coeffs() const { return c_; }
  GaussianRational coeff(int k) const;
  const GaussianRational& leading() const { return c_.back(); }

  GaussianRational operator()(const GaussianRational& z) const;
  Polynomial derivative() const;
  Polynomial monic() const;
  /// z^d p(1/z) for d >= degree.
  Polynomial reversed(int d) const;

  /// Multiplicity of 0 as a root.
  int zero_multiplicity() const;
  Polynomial divide_by_z_power(int k) const;

  std::string to_string() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const GaussianRational& s, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<GaussianRational> c_;
};

/// Quotient and remainder; b nonzero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
/// Monic greatest common divisor (zero if both are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// Yun's square-free factorization: p = lc * prod f_i^i with f_i square-free,
/// pairwise coprime and monic. Entry i-1 holds f_i (possibly constant 1).
std::vector<Polynomial> squarefree_factors(const Polynomial& p);

/// Coefficients as exact complex balls.
std::vector<ComplexBall> to_balls(const Polynomial& p, std::int64_t prec);

}  // namespace equistate
