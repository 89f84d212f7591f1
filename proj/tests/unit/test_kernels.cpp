#include <doctest.h>

#include <random>

#include "equistate/kernels/kernels.hpp"
#include "equistate/sphere/sphere_point.hpp"

using namespace equistate;
namespace k = equistate::kernels;

namespace {

std::vector<SpherePoint> random_points(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> num(-3000, 3000);
  std::uniform_int_distribution<long> den(1, 997);
  std::vector<SpherePoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 37 == 5) pts.push_back(SpherePoint::infinity());
    else if (i % 11 == 3 && i > 0) pts.push_back(pts[i - 1]);  // coincident pair
    else pts.emplace_back(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
  }
  return pts;
}

k::Embedded embed_all(const std::vector<SpherePoint>& pts) {
  k::Embedded e;
  for (auto& p : pts) {
    auto v = embed(p);
    e.push(v[0], v[1], v[2]);
  }
  return e;
}

}  // namespace

TEST_CASE("pinned costs agree with exact chordal distances") {
  std::mt19937_64 rng(21);
  auto a = random_points(rng, 23);
  auto b = random_points(rng, 19);
  std::vector<std::int64_t> c(a.size() * b.size());
  k::scalar::cost_matrix(embed_all(a), embed_all(b), c.data());
  Rational bound = Dyadic::pow2(-48).to_rational() + Dyadic::pow2(-41).to_rational();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      BallReal s = chordal(a[i], b[j], 80);
      Rational pinned = Dyadic(BigInt(static_cast<long>(c[i * b.size() + j])), -k::kCostShift).to_rational();
      CHECK(abs(pinned - s.mid.to_rational()) <= bound + s.rad.to_rational());
    }
}

TEST_CASE("SIMD variants are bit-identical to the scalar reference") {
  std::mt19937_64 rng(4);
  for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 131u}) {
    auto a = embed_all(random_points(rng, n));
    auto b = embed_all(random_points(rng, n + 2));
    std::vector<std::int64_t> ref(a.size() * b.size()), got(ref.size());
    k::scalar::cost_matrix(a, b, ref.data());
    std::vector<std::int64_t> rref(a.size()), rgot(a.size());
    k::scalar::row_min(a, a, true, rref.data());
    for (k::Isa isa : {k::Isa::Avx2, k::Isa::Neon}) {
      if (!k::isa_available(isa)) continue;
      k::set_isa_override(isa);
      CHECK(k::active_isa() == isa);
      k::cost_matrix(a, b, got.data());
      CHECK(got == ref);
      k::row_min(a, a, true, rgot.data());
      CHECK(rgot == rref);
    }
    k::set_isa_override(k::Isa::Scalar);
    k::cost_matrix(a, b, got.data());
    CHECK(got == ref);
    k::set_isa_override(std::nullopt);
  }
}
