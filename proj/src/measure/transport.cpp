#include "equistate/measure/transport.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "equistate/error.hpp"
#include "equistate/kernels/kernels.hpp"
#include "equistate/measure/network_simplex.hpp"

namespace equistate {

namespace {

constexpr int kKernelShift = kernels::kCostShift;

// |computed double distance - true distance| for the floating-point cost paths
const Dyadic& float_distance_error() {
  static const Dyadic e = Dyadic::pow2(-47);
  return e;
}

template <typename Flow>
Flow to_flow(const BigInt& v);

template <>
std::int64_t to_flow<std::int64_t>(const BigInt& v) {
  return v.get_si();
}

template <>
BigInt to_flow<BigInt>(const BigInt& v) {
  return v;
}

BigInt from_flow(std::int64_t v) {
  BigInt r;
  mpz_set_si(r.get_mpz_t(), v);
  return r;
}
BigInt from_flow(const BigInt& v) { return v; }

BigInt big(std::int64_t v) { return from_flow(v); }

template <typename Flow>
TransportSolution run_simplex(std::size_t n, std::size_t m, const std::vector<std::int64_t>& costs,
                              const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  std::vector<Flow> fa, fb;
  for (auto& x : a) fa.push_back(to_flow<Flow>(x));
  for (auto& x : b) fb.push_back(to_flow<Flow>(x));
  TransportSimplex<Flow> ns(static_cast<int>(n), static_cast<int>(m), costs.data(), fa, fb);
  ns.run();
  TransportSolution sol;
  sol.pivots = ns.pivots();
  sol.cost = 0;
  for (auto& arc : ns.basis()) {
    BigInt f = from_flow(arc.flow);
    if (f == 0) continue;
    sol.cost += big(costs[static_cast<std::size_t>(arc.i) * m + static_cast<std::size_t>(arc.j)]) * f;
    sol.plan.push_back({static_cast<std::size_t>(arc.i), static_cast<std::size_t>(arc.j), Rational(f)});
  }
  sol.alpha.resize(n);
  sol.beta.resize(m);
  for (std::size_t i = 0; i < n; ++i) sol.alpha[i] = ns.alpha(static_cast<int>(i));
  for (std::size_t j = 0; j < m; ++j) sol.beta[j] = ns.beta(static_cast<int>(j));
  bool feasible = true;
  for (std::size_t i = 0; i < n && feasible; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (costs[i * m + j] - sol.alpha[i] - sol.beta[j] < 0) {
        feasible = false;
        break;
      }
  BigInt dual = 0;
  for (std::size_t i = 0; i < n; ++i) dual += a[i] * big(sol.alpha[i]);
  for (std::size_t j = 0; j < m; ++j) dual += b[j] * big(sol.beta[j]);
  sol.certified = feasible && dual == sol.cost;
  return sol;
}

BigInt lcm_of_denominators(const FiniteMeasure& mu, const FiniteMeasure& nu) {
  BigInt d = 1;
  for (auto* m : {&mu, &nu})
    for (auto& a : m->atoms()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), a.weight.get_den_mpz_t());
  return d;
}

kernels::Embedded embed_sphere(const FiniteMeasure& mu) {
  kernels::Embedded e;
  for (auto& a : mu.atoms()) {
    auto v = embed(std::get<SpherePoint>(a.point));
    e.push(v[0], v[1], v[2]);
  }
  return e;
}

}  // namespace

TransportSolution solve_transport(std::size_t n, std::size_t m, const std::vector<std::int64_t>& costs,
                                  const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  if (n == 0 || m == 0 || a.size() != n || b.size() != m || costs.size() != n * m)
    throw Error(ErrorKind::InvalidArgument, "inconsistent transport problem sizes");
  BigInt total_a = 0, total_b = 0;
  for (auto& x : a) {
    if (x <= 0) throw Error(ErrorKind::InvalidArgument, "supplies must be positive");
    total_a += x;
  }
  for (auto& x : b) {
    if (x <= 0) throw Error(ErrorKind::InvalidArgument, "demands must be positive");
    total_b += x;
  }
  if (total_a != total_b) throw Error(ErrorKind::InvalidArgument, "unbalanced transport problem");
  for (auto c : costs)
    if (c < 0 || c > (std::int64_t(1) << 60)) throw Error(ErrorKind::InvalidArgument, "cost out of range");
  BigInt limit = BigInt(1) << 60;
  if (total_a < limit) return run_simplex<std::int64_t>(n, m, costs, a, b);
  return run_simplex<BigInt>(n, m, costs, a, b);
}

WassersteinResult wasserstein_full(const FiniteMeasure& mu, const FiniteMeasure& nu, std::int64_t prec) {
  if (mu.space() != nu.space()) throw Error(ErrorKind::SpaceMismatch, "Wasserstein distance across spaces");
  if (mu.mass() != FiniteMeasure::Mass::Probability || nu.mass() != FiniteMeasure::Mass::Probability)
    throw Error(ErrorKind::InvalidArgument, "Wasserstein distance needs probability measures");
  const std::size_t n = mu.size(), m = nu.size();
  WassersteinResult res;
  std::vector<std::int64_t> costs(n * m);

  if (prec <= kKernelShift) {
    res.cost_shift = kKernelShift;
    res.cost_error = float_distance_error() + Dyadic::pow2(-kKernelShift - 1);
    if (mu.space() == Space::RiemannSphere) {
      kernels::cost_matrix(embed_sphere(mu), embed_sphere(nu), costs.data());
      res.cost_path = std::string(kernels::isa_name(kernels::active_isa()));
    } else {
      const double scale = std::ldexp(1.0, kKernelShift);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
          costs[i * m + j] = std::llround(
              tri_distance_double(std::get<TilePoint>(mu.atoms()[i].point), std::get<TilePoint>(nu.atoms()[j].point)) *
              scale);
      res.cost_path = "scalar";
    }
  } else {
    int node_bits = static_cast<int>(std::bit_width(n + m + 1));
    res.cost_shift = static_cast<int>(std::min<std::int64_t>(prec + 2, 58 - node_bits));
    Dyadic err;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        BallReal d = distance(mu.atoms()[i].point, nu.atoms()[j].point, res.cost_shift + 2);
        Dyadic c = round_abs(d.mid, res.cost_shift, Round::Nearest);
        err = max(err, (c - d.mid).abs() + d.rad);
        Rational q = c.to_rational();
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(res.cost_shift));
        costs[i * m + j] = q.get_num().get_si();
      }
    res.cost_error = err;
    res.cost_path = "exact";
  }

  BigInt D = lcm_of_denominators(mu, nu);
  std::vector<BigInt> a(n), b(m);
  for (std::size_t i = 0; i < n; ++i) a[i] = mu.atoms()[i].weight.get_num() * (D / mu.atoms()[i].weight.get_den());
  for (std::size_t j = 0; j < m; ++j) b[j] = nu.atoms()[j].weight.get_num() * (D / nu.atoms()[j].weight.get_den());
  TransportSolution sol = solve_transport(n, m, costs, a, b);

  Rational scale(D);
  mpq_mul_2exp(scale.get_mpq_t(), scale.get_mpq_t(), static_cast<mp_bitcnt_t>(res.cost_shift));
  res.pinned_value = Rational(sol.cost) / scale;
  res.pinned_value.canonicalize();
  for (auto& e : sol.plan) {
    Rational w = e.mass / Rational(D);
    w.canonicalize();
    res.plan.push_back({e.i, e.j, w});
  }
  res.certified = sol.certified;
  BallReal v = BallReal::from_rational(res.pinned_value, std::max<std::int64_t>(prec, 48) + 8);
  res.value = ball_widen(ball_widen(ball_widen(v, res.cost_error), mu.displacement()), nu.displacement());
  return res;
}

BallReal wasserstein(const FiniteMeasure& mu, const FiniteMeasure& nu, std::int64_t prec) {
  return wasserstein_full(mu, nu, prec).value;
}

BallReal atom_mesh(const FiniteMeasure& mu) {
  if (mu.size() < 2) return BallReal();
  std::vector<std::int64_t> nn(mu.size());
  if (mu.space() == Space::RiemannSphere) {
    kernels::Embedded e = embed_sphere(mu);
    kernels::row_min(e, e, true, nn.data());
  } else {
    const double scale = std::ldexp(1.0, kKernelShift);
    for (std::size_t i = 0; i < mu.size(); ++i) {
      double best = 1e300;
      for (std::size_t j = 0; j < mu.size(); ++j)
        if (i != j)
          best = std::min(best, tri_distance_double(std::get<TilePoint>(mu.atoms()[i].point),
                                                    std::get<TilePoint>(mu.atoms()[j].point)));
      nn[i] = std::llround(best * scale);
    }
  }
  std::int64_t worst = 0;
  for (auto v : nn) worst = std::max(worst, v);
  BallReal b(Dyadic(BigInt(static_cast<long>(worst)), -kKernelShift));
  return ball_widen(b, float_distance_error() + Dyadic::pow2(-kKernelShift - 1));
}

}  // namespace equistate
