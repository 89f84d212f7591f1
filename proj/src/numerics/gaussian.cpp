#include "equistate/numerics/gaussian.hpp"

#include <cctype>

#include "equistate/error.hpp"

namespace equistate {

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  Rational n = b.norm2();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "division by zero in Q(i)");
  GaussianRational p = a * b.conj();
  return {p.re / n, p.im / n};
}

bool lex_less(const GaussianRational& a, const GaussianRational& b) {
  if (a.re != b.re) return a.re < b.re;
  return a.im < b.im;
}

std::string GaussianRational::to_string() const {
  if (im == 0) return equistate::to_string(re);
  std::string s;
  if (re != 0) s = equistate::to_string(re);
  std::string i = equistate::to_string(im);
  if (re != 0 && im > 0) s += "+";
  return s + i + "*i";
}

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw Error(ErrorKind::Parse, "empty Gaussian rational");
  if (t.back() != 'i') return {parse_rational(t), Rational(0)};
  t.pop_back();
  if (!t.empty() && t.back() == '*') t.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != '/') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : t.substr(0, split);
  std::string im_part = split == std::string::npos ? t : t.substr(split);
  Rational im_val;
  if (im_part.empty() || im_part == "+") im_val = 1;
  else if (im_part == "-") im_val = -1;
  else im_val = parse_rational(im_part);
  Rational re_val = re_part.empty() ? Rational(0) : parse_rational(re_part);
  return {re_val, im_val};
}

}  // namespace equistate
