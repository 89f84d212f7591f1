#pragma once

#include <string>
#include <string_view>

#include "equistate/numerics/rational.hpp"

namespace equistate {

/// Exact element re + im*i of Q(i).
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r) : re(r) {}  // NOLINT(google-explicit-constructor)

  bool is_zero() const { return re == 0 && im == 0; }
  Rational norm2() const { return re * re + im * im; }
  GaussianRational conj() const { return {re, -im}; }

  /// "p/q+r/s*i", with a zero part omitted.
  std::string to_string() const;
  static GaussianRational parse(std::string_view text);

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  /// b must be nonzero.
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Lexicographic order on (re, im).
bool lex_less(const GaussianRational& a, const GaussianRational& b);

}  // namespace equistate
