#include "equistate/numerics/rational.hpp"

#include <cctype>

#include "equistate/error.hpp"

namespace equistate {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error(ErrorKind::Parse, "bad integer '" + std::string(s) + "'");
  BigInt v(std::string(s), 10);
  return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorKind::Parse, "empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt p = parse_integer(text.substr(0, slash));
    BigInt q = parse_integer(text.substr(slash + 1));
    if (q == 0) throw Error(ErrorKind::Parse, "zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot);
    std::string_view fp = text.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.remove_prefix(1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw Error(ErrorKind::Parse, "bad decimal '" + std::string(text) + "'");
    BigInt whole = ip.empty() ? BigInt(0) : BigInt(std::string(ip), 10);
    BigInt frac = fp.empty() ? BigInt(0) : BigInt(std::string(fp), 10);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    Rational r(whole * scale + frac, scale);
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

BigInt floor_plus_one(const Rational& q) {
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f + 1;
}

std::int64_t floor_log2(const Rational& q) {
  BigInt n = q.get_num();
  n = abs(n);
  const BigInt& d = q.get_den();
  std::int64_t e = static_cast<std::int64_t>(mpz_sizeinbase(n.get_mpz_t(), 2)) -
                   static_cast<std::int64_t>(mpz_sizeinbase(d.get_mpz_t(), 2));
  // 2^e is within a factor of 2 of |q|; fix up.
  Rational a = abs(q);
  Rational p = 1;
  if (e >= 0) mpq_mul_2exp(p.get_mpq_t(), p.get_mpq_t(), static_cast<unsigned long>(e));
  else mpq_div_2exp(p.get_mpq_t(), p.get_mpq_t(), static_cast<unsigned long>(-e));
  while (p > a) {
    mpq_div_2exp(p.get_mpq_t(), p.get_mpq_t(), 1);
    --e;
  }
  for (;;) {
    Rational p2 = p * 2;
    if (p2 > a) break;
    p = p2;
    ++e;
  }
  return e;
}

}  // namespace equistate
