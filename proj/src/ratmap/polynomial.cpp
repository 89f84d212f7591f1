#include "equistate/ratmap/polynomial.hpp"

#include "equistate/error.hpp"

namespace equistate {

Polynomial::Polynomial(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) {
    c.re.canonicalize();
    c.im.canonicalize();
  }
  trim();
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Polynomial Polynomial::monomial(const GaussianRational& c, int k) {
  std::vector<GaussianRational> v(static_cast<std::size_t>(k) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

GaussianRational Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return GaussianRational();
  return c_[static_cast<std::size_t>(k)];
}

GaussianRational Polynomial::operator()(const GaussianRational& z) const {
  GaussianRational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (degree() < 1) return Polynomial();
  std::vector<GaussianRational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = GaussianRational(Rational(static_cast<long>(k))) * c_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  GaussianRational inv = GaussianRational(1) / leading();
  return inv * *this;
}

Polynomial Polynomial::reversed(int d) const {
  if (d < degree()) throw Error(ErrorKind::InvalidArgument, "reversal degree below polynomial degree");
  std::vector<GaussianRational> r(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= degree(); ++k) r[static_cast<std::size_t>(d - k)] = c_[static_cast<std::size_t>(k)];
  return Polynomial(std::move(r));
}

int Polynomial::zero_multiplicity() const {
  int k = 0;
  while (k <= degree() && c_[static_cast<std::size_t>(k)].is_zero()) ++k;
  return k;
}

Polynomial Polynomial::divide_by_z_power(int k) const {
  if (k <= 0) return *this;
  if (k > degree()) return Polynomial();
  return Polynomial(std::vector<GaussianRational>(c_.begin() + k, c_.end()));
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int k = degree(); k >= 0; --k) {
    const auto& c = c_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c.to_string() + ")";
    if (k >= 1) s += "*z";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<GaussianRational> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (k < a.c_.size()) r[k] = r[k] + a.c_[k];
    if (k < b.c_.size()) r[k] = r[k] + b.c_[k];
  }
  return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + GaussianRational(-1) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<GaussianRational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
  return Polynomial(std::move(r));
}

Polynomial operator*(const GaussianRational& s, const Polynomial& p) {
  std::vector<GaussianRational> r = p.c_;
  for (auto& c : r) c = s * c;
  return Polynomial(std::move(r));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
  Polynomial q, r = a;
  GaussianRational inv = GaussianRational(1) / b.leading();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int k = r.degree() - b.degree();
    Polynomial t = Polynomial::monomial(r.leading() * inv, k);
    q = q + t;
    r = r - t * b;
  }
  return {q, r};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).second;
    x = y;
    y = r;
  }
  return x.monic();
}

std::vector<Polynomial> squarefree_factors(const Polynomial& p) {
  if (p.degree() < 1) return {};
  std::vector<Polynomial> out;
  Polynomial dp = p.derivative();
  Polynomial a = gcd(p, dp);
  Polynomial b = divmod(p, a).first;
  Polynomial c = divmod(dp, a).first;
  Polynomial d = c - b.derivative();
  while (b.degree() >= 1) {
    Polynomial f = gcd(b, d);
    out.push_back(f);
    b = divmod(b, f).first;
    c = divmod(d, f).first;
    d = c - b.derivative();
  }
  return out;
}

std::vector<ComplexBall> to_balls(const Polynomial& p, std::int64_t prec) {
  std::vector<ComplexBall> r;
  for (auto& c : p.coeffs()) r.push_back(ComplexBall::from_rational(c.re, c.im, prec));
  return r;
}

}  // namespace equistate
