#pragma once

#include <string>
#include <vector>

#include "equistate/measure/measure.hpp"

namespace equistate {

struct PlanEntry {
  std::size_t i;
  std::size_t j;
  Rational mass;
};

/// Exact optimum of an integer transportation problem.
struct TransportSolution {
  BigInt cost;                   // sum c_ij f_ij
  std::vector<PlanEntry> plan;   // nonzero flows, mass = flow (integer)
  std::vector<std::int64_t> alpha, beta;
  bool certified = false;        // dual feasible and dual objective == cost
  std::int64_t pivots = 0;
};

/// Solves min sum c_ij f_ij with row sums a and column sums b (positive integers,
/// equal totals). costs is row-major n x m.
TransportSolution solve_transport(std::size_t n, std::size_t m, const std::vector<std::int64_t>& costs,
                                  const std::vector<BigInt>& a, const std::vector<BigInt>& b);

struct WassersteinResult {
  BallReal value;
  Rational pinned_value;   // optimum for the pinned costs, in distance units
  int cost_shift = 0;      // costs pinned to multiples of 2^-cost_shift
  Dyadic cost_error;       // max |pinned cost - true cost|
  std::vector<PlanEntry> plan;
  bool certified = false;
  std::string cost_path;   // kernel variant or "exact"
};

/// W(mu, nu) as an optimal transport problem with pinned integer costs. The ball
/// accounts for the cost pinning and for both measures' displacement bounds.
/// prec <= 40 uses the floating-point cost kernels; larger prec pins exact balls.
WassersteinResult wasserstein_full(const FiniteMeasure& mu, const FiniteMeasure& nu, std::int64_t prec = 40);
BallReal wasserstein(const FiniteMeasure& mu, const FiniteMeasure& nu, std::int64_t prec = 40);

/// Largest nearest-neighbour distance among the atoms (upper bound), 0 for one atom.
BallReal atom_mesh(const FiniteMeasure& mu);

}  // namespace equistate
