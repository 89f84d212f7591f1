#include <immintrin.h>

#include <bit>
#include <cmath>
#include <limits>

#include "equistate/kernels/kernels.hpp"

namespace equistate::kernels::avx2 {

namespace {

constexpr double kMagic = 6755399441055744.0;
constexpr double kScale = 1099511627776.0;

inline std::int64_t pinned1(double ax, double ay, double az, double bx, double by, double bz) {
  double dx = ax - bx;
  double dy = ay - by;
  double dz = az - bz;
  double s = dx * dx + dy * dy;
  s = s + dz * dz;
  double t = std::sqrt(s) * kScale + kMagic;
  return std::bit_cast<std::int64_t>(t) - std::bit_cast<std::int64_t>(kMagic);
}

// Four pinned costs from a_i against b[j..j+3]; same operation order as the scalar kernel.
inline __m256i pinned4(__m256d ax, __m256d ay, __m256d az, const double* bx, const double* by,
                       const double* bz) {
  __m256d dx = _mm256_sub_pd(ax, _mm256_loadu_pd(bx));
  __m256d dy = _mm256_sub_pd(ay, _mm256_loadu_pd(by));
  __m256d dz = _mm256_sub_pd(az, _mm256_loadu_pd(bz));
  __m256d s = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
  s = _mm256_add_pd(s, _mm256_mul_pd(dz, dz));
  __m256d t = _mm256_add_pd(_mm256_mul_pd(_mm256_sqrt_pd(s), _mm256_set1_pd(kScale)), _mm256_set1_pd(kMagic));
  return _mm256_sub_epi64(_mm256_castpd_si256(t), _mm256_castpd_si256(_mm256_set1_pd(kMagic)));
}

}  // namespace

void cost_matrix(const Embedded& a, const Embedded& b, std::int64_t* out) {
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    __m256d ax = _mm256_set1_pd(a.x[i]);
    __m256d ay = _mm256_set1_pd(a.y[i]);
    __m256d az = _mm256_set1_pd(a.z[i]);
    std::int64_t* row = out + i * nb;
    std::size_t j = 0;
    for (; j + 4 <= nb; j += 4)
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(row + j), pinned4(ax, ay, az, &b.x[j], &b.y[j], &b.z[j]));
    for (; j < nb; ++j) row[j] = pinned1(a.x[i], a.y[i], a.z[i], b.x[j], b.y[j], b.z[j]);
  }
}

void row_min(const Embedded& a, const Embedded& b, bool skip_diagonal, std::int64_t* out) {
  const std::size_t nb = b.size();
  alignas(32) std::int64_t lane[4];
  for (std::size_t i = 0; i < a.size(); ++i) {
    __m256d ax = _mm256_set1_pd(a.x[i]);
    __m256d ay = _mm256_set1_pd(a.y[i]);
    __m256d az = _mm256_set1_pd(a.z[i]);
    std::int64_t m = std::numeric_limits<std::int64_t>::max();
    std::size_t j = 0;
    for (; j + 4 <= nb; j += 4) {
      _mm256_store_si256(reinterpret_cast<__m256i*>(lane), pinned4(ax, ay, az, &b.x[j], &b.y[j], &b.z[j]));
      for (std::size_t k = 0; k < 4; ++k) {
        if (skip_diagonal && j + k == i) continue;
        if (lane[k] < m) m = lane[k];
      }
    }
    for (; j < nb; ++j) {
      if (skip_diagonal && j == i) continue;
      std::int64_t c = pinned1(a.x[i], a.y[i], a.z[i], b.x[j], b.y[j], b.z[j]);
      if (c < m) m = c;
    }
    out[i] = m;
  }
}

}  // namespace equistate::kernels::avx2
