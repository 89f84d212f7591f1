#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "equistate/error.hpp"
#include "equistate/measure/test_function.hpp"
#include "equistate/measure/transport.hpp"

using namespace equistate;

namespace {

MeasurePoint sp(long re, long im = 0) { return SpherePoint(Rational(re), Rational(im)); }

FiniteMeasure uniform(const std::vector<MeasurePoint>& pts) {
  std::vector<Atom> atoms;
  for (auto& p : pts) atoms.push_back({p, Rational(1, static_cast<long>(pts.size()))});
  return FiniteMeasure(space_of(pts.front()), atoms);
}

MeasurePoint square(const MeasurePoint& p) {
  const auto& s = std::get<SpherePoint>(p);
  if (s.is_infinity()) return s;
  return SpherePoint(s.z() * s.z());
}

// Brute-force minimum over all assignments of an n x n integer cost matrix.
std::int64_t assignment_min(const std::vector<std::int64_t>& c, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  do {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += c[i * n + perm[i]];
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("finite measures merge atoms and check mass") {
  FiniteMeasure m(Space::RiemannSphere, {{sp(1), Rational(1, 4)}, {sp(1), Rational(1, 4)}, {sp(2), Rational(1, 2)}});
  CHECK(m.size() == 2);
  CHECK(m.atoms()[0].weight == Rational(1, 2));
  CHECK_THROWS_AS(FiniteMeasure(Space::RiemannSphere, {{sp(1), Rational(1, 3)}}), Error);
  CHECK_THROWS_AS(FiniteMeasure(Space::RiemannSphere, {{sp(1), Rational(-1)}, {sp(2), Rational(2)}}), Error);
  FiniteMeasure sub(Space::RiemannSphere, {{sp(0), Rational(1, 2)}}, FiniteMeasure::Mass::Sub);
  CHECK(sub.total_mass() == Rational(1, 2));
}

TEST_CASE("integrate examples") {
  auto dist0 = [](const MeasurePoint& x) { return distance(x, sp(0), 60); };
  CHECK(integrate(FiniteMeasure::dirac(sp(0)), dist0, 40).mid.is_zero());
  BallReal half = integrate(uniform({sp(0), sp(1)}), dist0, 40);
  // sqrt(2)/2 squared is 1/2
  CHECK(compare(half.lower() * half.lower(), Rational(1, 2)) <= 0);
  CHECK(compare(half.upper() * half.upper(), Rational(1, 2)) >= 0);
  CHECK(half.rad <= Dyadic::pow2(-40));
  auto c = [](const MeasurePoint&) { return BallReal(Dyadic(BigInt(3), -2)); };
  BallReal ic = integrate(uniform({sp(0), sp(1), sp(5, 2)}), c, 40);
  CHECK(ic.contains(Rational(3, 4)));
  auto bad = [](const MeasurePoint&) -> BallReal { throw Error(ErrorKind::InexactImage, "x"); };
  try {
    integrate(FiniteMeasure::dirac(sp(0)), bad, 10);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EvaluationFailure);
  }
}

TEST_CASE("pushforward examples") {
  CHECK(pushforward(FiniteMeasure::dirac(sp(1)), square).atoms().size() == 1);
  FiniteMeasure a = pushforward(uniform({sp(1), sp(-1)}), square);
  CHECK(a.size() == 1);
  CHECK(a.atoms()[0].point == sp(1));
  CHECK(a.atoms()[0].weight == 1);
  FiniteMeasure b = pushforward(uniform({sp(1), sp(-1), sp(0, 1), sp(0, -1)}), square);
  CHECK(b.size() == 2);
  CHECK(b.atoms()[0].point == sp(-1));
  CHECK(b.atoms()[0].weight == Rational(1, 2));
  CHECK(b.atoms()[1].weight == Rational(1, 2));
}

TEST_CASE("wasserstein examples") {
  CHECK(wasserstein(FiniteMeasure::dirac(sp(0)), FiniteMeasure::dirac(sp(0))).upper() <= Dyadic::pow2(-39));
  for (std::int64_t prec : {30, 50}) {
    BallReal w = wasserstein(FiniteMeasure::dirac(sp(0)), FiniteMeasure::dirac(sp(1)), prec);
    BallReal s = chordal(SpherePoint(0), SpherePoint(1), 60);
    CHECK(w.overlaps(s));
    CHECK(w.rad <= Dyadic::pow2(-prec));
    BallReal h = wasserstein(uniform({sp(0), sp(1)}), FiniteMeasure::dirac(sp(0)), prec);
    CHECK(h.overlaps(ball_mul_2exp(s, -1)));
  }
  // 2x2: basic feasible plans are the two permutations
  FiniteMeasure mu = uniform({sp(0), sp(2)});
  FiniteMeasure nu = uniform({sp(1), sp(-1)});
  double s01 = chordal(SpherePoint(0), SpherePoint(1), 60).to_double();
  double s0m = chordal(SpherePoint(0), SpherePoint(-1), 60).to_double();
  double s21 = chordal(SpherePoint(2), SpherePoint(1), 60).to_double();
  double s2m = chordal(SpherePoint(2), SpherePoint(-1), 60).to_double();
  double brute = std::min(s01 + s2m, s0m + s21) / 2;
  CHECK(std::abs(wasserstein(mu, nu).to_double() - brute) < 1e-10);
  CHECK_THROWS_AS(wasserstein(FiniteMeasure::dirac(sp(0)), FiniteMeasure::dirac(TilePoint::vertex(0))), Error);
}

TEST_CASE("transport LP equals the brute-force assignment minimum") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> cost(0, 1000);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + trial % 6;
    std::vector<std::int64_t> c(n * n);
    for (auto& x : c) x = (trial % 3 == 0) ? cost(rng) % 4 : cost(rng);  // many ties when small
    std::vector<BigInt> ones(n, BigInt(1));
    TransportSolution sol = solve_transport(n, n, c, ones, ones);
    CHECK(sol.cost == assignment_min(c, n));
    CHECK(sol.certified);
  }
}

TEST_CASE("transport on unequal weights has a dual certificate") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::int64_t> cost(0, 1 << 20);
  std::uniform_int_distribution<long> w(1, 30);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + trial % 13, m = 1 + (trial * 7) % 11;
    std::vector<std::int64_t> c(n * m);
    for (auto& x : c) x = cost(rng);
    std::vector<BigInt> a(n), b(m);
    BigInt ta = 0, tb = 0;
    for (auto& x : a) ta += (x = w(rng));
    for (auto& x : b) tb += (x = w(rng));
    // scale to equal totals
    for (auto& x : a) x *= tb;
    for (auto& x : b) x *= ta;
    TransportSolution sol = solve_transport(n, m, c, a, b);
    CHECK(sol.certified);
    std::vector<BigInt> rows(n, BigInt(0)), cols(m, BigInt(0));
    for (auto& e : sol.plan) {
      rows[e.i] += e.mass.get_num();
      cols[e.j] += e.mass.get_num();
    }
    CHECK(rows == a);
    CHECK(cols == b);
  }
}

TEST_CASE("wasserstein metric properties on random small measures") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long> coord(-6, 6);
  std::uniform_int_distribution<long> wt(1, 5);
  std::uniform_int_distribution<int> cnt(1, 5);
  auto random_measure = [&]() {
    std::vector<Atom> atoms;
    int k = cnt(rng);
    long total = 0;
    std::vector<long> ws;
    for (int i = 0; i < k; ++i) total += ws.emplace_back(wt(rng));
    for (int i = 0; i < k; ++i)
      atoms.push_back({SpherePoint(Rational(coord(rng), 2), Rational(coord(rng), 3)), Rational(ws[i], total)});
    return FiniteMeasure(Space::RiemannSphere, atoms);
  };
  for (int t = 0; t < 60; ++t) {
    FiniteMeasure a = random_measure(), b = random_measure(), c = random_measure();
    WassersteinResult ab = wasserstein_full(a, b), ba = wasserstein_full(b, a);
    CHECK(ab.certified);
    CHECK(ab.pinned_value == ba.pinned_value);
    BallReal ac = wasserstein(a, c), bc = wasserstein(b, c);
    CHECK(ac.lower() <= ab.value.upper() + bc.upper() + (ac.rad + ab.value.rad + bc.rad).mul_2exp(1));
    CHECK(ab.value.lower() <= Dyadic(2));
    CHECK(wasserstein(a, a).upper() <= Dyadic::pow2(-39));
  }
}

TEST_CASE("hat functions and compare_ge") {
  TestFunction tau(sp(1), Rational(0), Rational(1, 4));
  CHECK(tau(sp(1), 40).mid == Dyadic(1));
  CHECK(tau(sp(0), 40).mid.is_zero());
  FiniteMeasure d0 = FiniteMeasure::dirac(sp(0));
  FiniteMeasure d1 = FiniteMeasure::dirac(sp(1));
  CHECK(compare_ge(d0, d0, {tau}, Rational(0)).holds);
  CHECK(compare_ge(d0, d0.scaled(Rational(1, 2)), {TestFunction(sp(0), Rational(0), Rational(1, 2))}, Rational(0)).holds);
  CompareResult r = compare_ge(d0, d1, {tau}, Rational(1, 1024));
  CHECK(!r.holds);
  CHECK(*r.witness == 0);
  CHECK(r.mu_integral.mid.is_zero());
  CHECK(r.nu_integral.mid == Dyadic(1));
  // Lipschitz bound on the tri-sphere
  TestFunction t2(TilePoint::barycenter(Face::Front), Rational(1, 10), Rational(1, 5));
  BallReal v1 = t2(TilePoint::vertex(0), 50), v2 = t2(TilePoint::barycenter(Face::Back), 50);
  double dd = tri_distance_double(TilePoint::vertex(0), TilePoint::barycenter(Face::Back));
  CHECK(std::abs(v1.to_double() - v2.to_double()) <= 5 * dd + 1e-12);
}
