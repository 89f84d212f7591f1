#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace equistate::kernels {

/// Chordal costs are pinned to integers c = round(d * 2^kCostShift).
inline constexpr int kCostShift = 40;

/// Points of the unit sphere in R^3, structure-of-arrays layout.
struct Embedded {
  std::vector<double> x, y, z;
  std::size_t size() const { return x.size(); }
  void push(double px, double py, double pz) {
    x.push_back(px);
    y.push_back(py);
    z.push_back(pz);
  }
};

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
/// Variant used by the dispatching entry points.
Isa active_isa();
/// Forces a variant (for tests and benchmarks); nullopt restores auto-detection.
void set_isa_override(std::optional<Isa> isa);

/// out[i * b.size() + j] = round(|a_i - b_j| * 2^40).
void cost_matrix(const Embedded& a, const Embedded& b, std::int64_t* out);
/// out[i] = min_j round(|a_i - b_j| * 2^40), skipping j == i when skip_diagonal.
void row_min(const Embedded& a, const Embedded& b, bool skip_diagonal, std::int64_t* out);

namespace scalar {
void cost_matrix(const Embedded& a, const Embedded& b, std::int64_t* out);
void row_min(const Embedded& a, const Embedded& b, bool skip_diagonal, std::int64_t* out);
}  // namespace scalar

namespace avx2 {
void cost_matrix(const Embedded& a, const Embedded& b, std::int64_t* out);
void row_min(const Embedded& a, const Embedded& b, bool skip_diagonal, std::int64_t* out);
}  // namespace avx2

namespace neon {
void cost_matrix(const Embedded& a, const Embedded& b, std::int64_t* out);
void row_min(const Embedded& a, const Embedded& b, bool skip_diagonal, std::int64_t* out);
}  // namespace neon

}  // namespace equistate::kernels
