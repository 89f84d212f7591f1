#include <bit>
#include <cmath>
#include <limits>

#include "equistate/kernels/kernels.hpp"

namespace equistate::kernels::scalar {

namespace {

// Adding 1.5 * 2^52 leaves round-to-nearest-even of t in the low mantissa bits.
constexpr double kMagic = 6755399441055744.0;
constexpr double kScale = 1099511627776.0;  // 2^40

inline std::int64_t pinned(double ax, double ay, double az, double bx, double by, double bz) {
  double dx = ax - bx;
  double dy = ay - by;
  double dz = az - bz;
  double s = dx * dx + dy * dy;
  s = s + dz * dz;
  double d = std::sqrt(s);
  double t = d * kScale + kMagic;
  return std::bit_cast<std::int64_t>(t) - std::bit_cast<std::int64_t>(kMagic);
}

}  // namespace

void cost_matrix(const Embedded& a, const Embedded& b, std::int64_t* out) {
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < nb; ++j)
      out[i * nb + j] = pinned(a.x[i], a.y[i], a.z[i], b.x[j], b.y[j], b.z[j]);
}

void row_min(const Embedded& a, const Embedded& b, bool skip_diagonal, std::int64_t* out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t m = std::numeric_limits<std::int64_t>::max();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (skip_diagonal && i == j) continue;
      std::int64_t c = pinned(a.x[i], a.y[i], a.z[i], b.x[j], b.y[j], b.z[j]);
      if (c < m) m = c;
    }
    out[i] = m;
  }
}

}  // namespace equistate::kernels::scalar
