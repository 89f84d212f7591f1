#include "equistate/sphere/oracle.hpp"

namespace equistate {

Oracle oracle_of(const SpherePoint& p) {
  if (!p.is_infinity()) return {[p](std::int64_t) { return p; }};
  return {[](std::int64_t n) {
    Rational t(1);
    std::int64_t e = std::max<std::int64_t>(n + 2, 0);
    mpq_mul_2exp(t.get_mpq_t(), t.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    return SpherePoint(t, Rational(0));
  }};
}

bool oracle_consistent(const Oracle& o, std::int64_t n, std::int64_t m) {
  SpherePoint a = o.query(n);
  SpherePoint b = o.query(m);
  Rational bound(1);
  mpq_div_2exp(bound.get_mpq_t(), bound.get_mpq_t(), static_cast<mp_bitcnt_t>(n));
  Rational add(1);
  mpq_div_2exp(add.get_mpq_t(), add.get_mpq_t(), static_cast<mp_bitcnt_t>(m));
  bound += add;
  return chordal_squared(a, b) < bound * bound;
}

}  // namespace equistate
