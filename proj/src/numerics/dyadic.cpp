#include "equistate/numerics/dyadic.hpp"

#include <cmath>

#include "equistate/error.hpp"

namespace equistate {

namespace {

// floor, ceil or nearest (ties away from zero) of m / 2^shift, shift > 0
BigInt shift_round(const BigInt& m, std::int64_t shift, Round mode) {
  BigInt r;
  auto s = static_cast<mp_bitcnt_t>(shift);
  switch (mode) {
    case Round::Down: mpz_fdiv_q_2exp(r.get_mpz_t(), m.get_mpz_t(), s); break;
    case Round::Up: mpz_cdiv_q_2exp(r.get_mpz_t(), m.get_mpz_t(), s); break;
    case Round::Nearest: {
      BigInt a = abs(m);
      BigInt half;
      mpz_setbit(half.get_mpz_t(), s - 1);
      a += half;
      mpz_fdiv_q_2exp(r.get_mpz_t(), a.get_mpz_t(), s);
      if (m < 0) r = -r;
      break;
    }
  }
  return r;
}

// floor/ceil/nearest of a rational
BigInt rational_round(const Rational& q, Round mode) {
  BigInt r;
  switch (mode) {
    case Round::Down: mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t()); break;
    case Round::Up: mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t()); break;
    case Round::Nearest: {
      Rational h = q + Rational(1, 2);
      mpz_fdiv_q(r.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
      break;
    }
  }
  return r;
}

}  // namespace

Dyadic::Dyadic(long value) : man_(value), exp_(0) { normalize(); }

Dyadic::Dyadic(BigInt mantissa, std::int64_t exponent) : man_(std::move(mantissa)), exp_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (sgn(man_) == 0) {
    exp_ = 0;
    return;
  }
  mp_bitcnt_t tz = mpz_scan1(man_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_tdiv_q_2exp(man_.get_mpz_t(), man_.get_mpz_t(), tz);
    exp_ += static_cast<std::int64_t>(tz);
  }
}

Dyadic Dyadic::pow2(std::int64_t e) { return Dyadic(BigInt(1), e); }

Dyadic Dyadic::from_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite double");
  if (v == 0.0) return Dyadic();
  int e = 0;
  double m = std::frexp(v, &e);
  auto mi = static_cast<long long>(std::ldexp(m, 53));
  BigInt bm;
  mpz_set_si(bm.get_mpz_t(), static_cast<long>(mi));
  return Dyadic(bm, static_cast<std::int64_t>(e) - 53);
}

std::int64_t Dyadic::bit_length() const {
  if (is_zero()) return 0;
  return static_cast<std::int64_t>(mpz_sizeinbase(man_.get_mpz_t(), 2));
}

std::int64_t Dyadic::msb() const { return bit_length() - 1 + exp_; }

Dyadic Dyadic::abs() const {
  Dyadic r = *this;
  r.man_ = equistate::abs(man_);
  return r;
}

Rational Dyadic::to_rational() const {
  Rational q(man_);
  if (exp_ > 0) mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(exp_));
  else if (exp_ < 0) mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp_));
  return q;
}

double Dyadic::to_double() const {
  if (is_zero()) return 0.0;
  long e = 0;
  double d = mpz_get_d_2exp(&e, man_.get_mpz_t());
  return std::ldexp(d, static_cast<int>(std::max<std::int64_t>(std::min<std::int64_t>(e + exp_, 1 << 20), -(1 << 20))));
}

std::string Dyadic::to_string() const { return man_.get_str() + "*2^" + std::to_string(exp_); }

Dyadic Dyadic::parse(std::string_view text) {
  auto star = text.find("*2^");
  try {
    if (star == std::string_view::npos) return Dyadic(BigInt(std::string(text), 10), 0);
    BigInt m(std::string(text.substr(0, star)), 10);
    std::int64_t e = std::stoll(std::string(text.substr(star + 3)));
    return Dyadic(m, e);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad dyadic '" + std::string(text) + "'");
  }
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.exp_ == b.exp_) return Dyadic(a.man_ + b.man_, a.exp_);
  const Dyadic& lo = a.exp_ < b.exp_ ? a : b;
  const Dyadic& hi = a.exp_ < b.exp_ ? b : a;
  BigInt m;
  mpz_mul_2exp(m.get_mpz_t(), hi.man_.get_mpz_t(), static_cast<mp_bitcnt_t>(hi.exp_ - lo.exp_));
  return Dyadic(m + lo.man_, lo.exp_);
}

Dyadic operator-(const Dyadic& a) {
  Dyadic r = a;
  r.man_ = -r.man_;
  return r;
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero() || b.is_zero()) return Dyadic();
  return Dyadic(a.man_ * b.man_, a.exp_ + b.exp_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int compare(const Dyadic& a, const Rational& b) { return cmp(a.to_rational(), b); }

Dyadic min(const Dyadic& a, const Dyadic& b) { return a < b ? a : b; }
Dyadic max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

Dyadic round_rel(const Dyadic& x, std::int64_t bits, Round mode) {
  if (bits < 1) bits = 1;
  std::int64_t bl = x.bit_length();
  if (bl <= bits) return x;
  std::int64_t shift = bl - bits;
  return Dyadic(shift_round(x.mantissa(), shift, mode), x.exponent() + shift);
}

Dyadic round_abs(const Dyadic& x, std::int64_t bits, Round mode) {
  if (x.is_zero() || x.exponent() >= -bits) return x;
  std::int64_t shift = -bits - x.exponent();
  return Dyadic(shift_round(x.mantissa(), shift, mode), -bits);
}

Dyadic round_abs(const Rational& q, std::int64_t bits, Round mode) {
  Rational s = q;
  if (bits > 0) mpq_mul_2exp(s.get_mpq_t(), s.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
  else if (bits < 0) mpq_div_2exp(s.get_mpq_t(), s.get_mpq_t(), static_cast<mp_bitcnt_t>(-bits));
  return Dyadic(rational_round(s, mode), -bits);
}

Dyadic round_rel(const Rational& q, std::int64_t bits, Round mode) {
  if (q == 0) return Dyadic();
  if (bits < 1) bits = 1;
  std::int64_t e = floor_log2(q);
  return round_abs(q, bits - 1 - e, mode);
}

Dyadic divide(const Dyadic& a, const Dyadic& b, std::int64_t bits, Round mode) {
  if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
  if (a.is_zero()) return Dyadic();
  return round_rel(a.to_rational() / b.to_rational(), bits, mode);
}

Dyadic sqrt(const Dyadic& a, std::int64_t bits, Round mode) {
  if (a.sign() < 0) throw Error(ErrorKind::NonPositiveArgument, "sqrt of negative dyadic");
  if (a.is_zero()) return Dyadic();
  if (bits < 1) bits = 1;
  // N = a * 2^(2t) with at least 2*bits+2 significant bits
  std::int64_t t = (2 * bits + 4 - a.msb() + 1) / 2;
  std::int64_t e = a.exponent() + 2 * t;
  BigInt n;
  bool exact = true;
  if (e >= 0) {
    mpz_mul_2exp(n.get_mpz_t(), a.mantissa().get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_fdiv_q_2exp(n.get_mpz_t(), a.mantissa().get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    exact = mpz_scan1(a.mantissa().get_mpz_t(), 0) >= static_cast<mp_bitcnt_t>(-e);
  }
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  if (mode == Round::Up && !(exact && s * s == n)) s += 1;
  return round_rel(Dyadic(s, -t), bits, mode == Round::Nearest ? Round::Nearest : mode);
}

}  // namespace equistate
