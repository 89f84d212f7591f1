#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "equistate/numerics/rational.hpp"

namespace equistate {

enum class Round { Down, Up, Nearest };

/// Exact binary rational m * 2^e. Normalized so that m is odd (or m = 0, e = 0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long value);  // NOLINT(google-explicit-constructor)
  Dyadic(BigInt mantissa, std::int64_t exponent);

  static Dyadic pow2(std::int64_t e);
  static Dyadic from_double(double v);

  const BigInt& mantissa() const { return man_; }
  std::int64_t exponent() const { return exp_; }

  int sign() const { return sgn(man_); }
  bool is_zero() const { return sgn(man_) == 0; }

  /// floor(log2 |x|); undefined for zero.
  std::int64_t msb() const;
  /// Number of significant bits in the mantissa.
  std::int64_t bit_length() const;

  Dyadic abs() const;
  Dyadic mul_2exp(std::int64_t k) const { return is_zero() ? *this : Dyadic(man_, exp_ + k); }

  Rational to_rational() const;
  double to_double() const;

  /// "m*2^e"
  std::string to_string() const;
  static Dyadic parse(std::string_view text);

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a);

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.man_ == b.man_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void normalize();

  BigInt man_ = 0;
  std::int64_t exp_ = 0;
};

int compare(const Dyadic& a, const Rational& b);

Dyadic min(const Dyadic& a, const Dyadic& b);
Dyadic max(const Dyadic& a, const Dyadic& b);

/// Rounds to at most `bits` significant bits in the given direction.
Dyadic round_rel(const Dyadic& x, std::int64_t bits, Round mode);
/// Rounds to a multiple of 2^-bits in the given direction.
Dyadic round_abs(const Dyadic& x, std::int64_t bits, Round mode);
/// Rational rounded to a multiple of 2^-bits.
Dyadic round_abs(const Rational& q, std::int64_t bits, Round mode);
/// Rational rounded to `bits` significant bits.
Dyadic round_rel(const Rational& q, std::int64_t bits, Round mode);

/// a / b rounded to `bits` significant bits; b != 0.
Dyadic divide(const Dyadic& a, const Dyadic& b, std::int64_t bits, Round mode);
/// sqrt(a) rounded to `bits` significant bits; a >= 0.
Dyadic sqrt(const Dyadic& a, std::int64_t bits, Round mode);

}  // namespace equistate
