#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace equistate {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", an integer, or a finite decimal such as "-1.25".
/// The result is canonical (lowest terms, positive denominator).
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

Rational abs(const Rational& q);

/// Smallest integer strictly greater than q.
BigInt floor_plus_one(const Rational& q);

/// floor(log2 |q|) for q != 0.
std::int64_t floor_log2(const Rational& q);

}  // namespace equistate
