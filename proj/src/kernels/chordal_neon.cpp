#include <arm_neon.h>

#include <bit>
#include <cmath>
#include <limits>

#include "equistate/kernels/kernels.hpp"

namespace equistate::kernels::neon {

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

inline int64x2_t pinned2(float64x2_t ax, float64x2_t ay, float64x2_t az, const double* bx, const double* by,
                         const double* bz) {
  float64x2_t dx = vsubq_f64(ax, vld1q_f64(bx));
  float64x2_t dy = vsubq_f64(ay, vld1q_f64(by));
  float64x2_t dz = vsubq_f64(az, vld1q_f64(bz));
  float64x2_t s = vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy));
  s = vaddq_f64(s, vmulq_f64(dz, dz));
  float64x2_t t = vaddq_f64(vmulq_f64(vsqrtq_f64(s), vdupq_n_f64(kScale)), vdupq_n_f64(kMagic));
  return vsubq_s64(vreinterpretq_s64_f64(t), vreinterpretq_s64_f64(vdupq_n_f64(kMagic)));
}

}  // namespace

void cost_matrix(const Embedded& a, const Embedded& b, std::int64_t* out) {
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    float64x2_t ax = vdupq_n_f64(a.x[i]);
    float64x2_t ay = vdupq_n_f64(a.y[i]);
    float64x2_t az = vdupq_n_f64(a.z[i]);
    std::int64_t* row = out + i * nb;
    std::size_t j = 0;
    for (; j + 2 <= nb; j += 2) vst1q_s64(row + j, pinned2(ax, ay, az, &b.x[j], &b.y[j], &b.z[j]));
    for (; j < nb; ++j) row[j] = pinned1(a.x[i], a.y[i], a.z[i], b.x[j], b.y[j], b.z[j]);
  }
}

void row_min(const Embedded& a, const Embedded& b, bool skip_diagonal, std::int64_t* out) {
  const std::size_t nb = b.size();
  std::int64_t lane[2];
  for (std::size_t i = 0; i < a.size(); ++i) {
    float64x2_t ax = vdupq_n_f64(a.x[i]);
    float64x2_t ay = vdupq_n_f64(a.y[i]);
    float64x2_t az = vdupq_n_f64(a.z[i]);
    std::int64_t m = std::numeric_limits<std::int64_t>::max();
    std::size_t j = 0;
    for (; j + 2 <= nb; j += 2) {
      vst1q_s64(lane, pinned2(ax, ay, az, &b.x[j], &b.y[j], &b.z[j]));
      for (std::size_t k = 0; k < 2; ++k) {
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

}  // namespace equistate::kernels::neon
