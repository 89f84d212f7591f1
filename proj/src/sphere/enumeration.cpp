#include "equistate/sphere/enumeration.hpp"

#include <vector>

#include "equistate/error.hpp"

namespace equistate {

namespace {

BigInt fusc(const BigInt& n) {
  BigInt a = 1, b = 0;
  std::size_t bits = n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(n.get_mpz_t(), i)) b += a;
    else a += b;
  }
  return b;
}

std::pair<BigInt, BigInt> cantor_unpair(const BigInt& z) {
  BigInt s = 8 * z + 1;
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
  BigInt w = (r - 1) / 2;
  BigInt t = w * (w + 1) / 2;
  BigInt b = z - t;
  return {w - b, b};
}

BigInt cantor_pair(const BigInt& a, const BigInt& b) {
  BigInt s = a + b;
  return s * (s + 1) / 2 + b;
}

// 0 -> 0, 2j-1 -> cw(j), 2j -> -cw(j)
Rational signed_code(const BigInt& n) {
  if (n == 0) return 0;
  if (mpz_odd_p(n.get_mpz_t())) return calkin_wilf((n + 1) / 2);
  return -calkin_wilf(n / 2);
}

BigInt signed_code_index(const Rational& q) {
  if (q == 0) return 0;
  if (q > 0) return 2 * calkin_wilf_index(q) - 1;
  return 2 * calkin_wilf_index(-q);
}

}  // namespace

Rational calkin_wilf(const BigInt& k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "Calkin-Wilf index must be >= 1");
  Rational q(fusc(k), fusc(k + 1));
  q.canonicalize();
  return q;
}

BigInt calkin_wilf_index(const Rational& q) {
  if (q <= 0) throw Error(ErrorKind::InvalidArgument, "Calkin-Wilf code of a non-positive rational");
  BigInt p = q.get_num(), r = q.get_den();
  // runs of (bit, count) from the leaf towards the root
  std::vector<std::pair<int, BigInt>> runs;
  while (p != r) {
    if (p < r) {
      BigInt k = (r - 1) / p;
      r -= k * p;
      runs.emplace_back(0, k);
    } else {
      BigInt k = (p - 1) / r;
      p -= k * r;
      runs.emplace_back(1, k);
    }
  }
  BigInt idx = 1;
  for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
    auto k = static_cast<mp_bitcnt_t>(it->second.get_ui());
    if (it->second > 1u << 24) throw Error(ErrorKind::InvalidArgument, "Calkin-Wilf run too long");
    mpz_mul_2exp(idx.get_mpz_t(), idx.get_mpz_t(), k);
    if (it->first == 1) {
      BigInt ones;
      mpz_setbit(ones.get_mpz_t(), k);
      idx += ones - 1;
    }
  }
  return idx;
}

IdealIndexParts decompose_index(const BigInt& k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "ideal index must be >= 1");
  IdealIndexParts parts;
  if (k == 1) {
    parts.is_zero = true;
    return parts;
  }
  if (k == 2) {
    parts.is_infinity = true;
    return parts;
  }
  auto [a, b] = cantor_unpair(k - 2);
  parts.a = a;
  parts.b = b;
  return parts;
}

SpherePoint ideal_enumerate(const BigInt& k) {
  IdealIndexParts parts = decompose_index(k);
  if (parts.is_zero) return SpherePoint(0);
  if (parts.is_infinity) return SpherePoint::infinity();
  return SpherePoint(signed_code(parts.a), signed_code(parts.b));
}

BigInt ideal_index(const SpherePoint& p) {
  if (p.is_infinity()) return 2;
  if (p.z().is_zero()) return 1;
  return cantor_pair(signed_code_index(p.re()), signed_code_index(p.im())) + 2;
}

std::pair<BigInt, SpherePoint> ideal_approximation(const SpherePoint& p, std::int64_t n) {
  SpherePoint q;
  if (p.is_infinity()) {
    q = SpherePoint::infinity();
  } else {
    // coordinates rounded to 2^-(n+2): Euclidean error <= 2^-(n+2), and sigma <= 2|dz|
    std::int64_t bits = std::max<std::int64_t>(n + 2, 0);
    q = SpherePoint(round_abs(p.re(), bits, Round::Nearest).to_rational(),
                    round_abs(p.im(), bits, Round::Nearest).to_rational());
  }
  return {ideal_index(q), q};
}

}  // namespace equistate
