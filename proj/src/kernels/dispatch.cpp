#include <atomic>

#include "equistate/kernels/kernels.hpp"

namespace equistate::kernels {

namespace {

std::atomic<int> g_override{-1};

Isa detect() {
#if defined(EQUISTATE_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
#if defined(EQUISTATE_HAVE_NEON)
  return Isa::Neon;
#endif
  return Isa::Scalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(EQUISTATE_HAVE_AVX2)
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(EQUISTATE_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  static const Isa detected = detect();
  int o = g_override.load(std::memory_order_relaxed);
  if (o >= 0 && isa_available(static_cast<Isa>(o))) return static_cast<Isa>(o);
  return detected;
}

void set_isa_override(std::optional<Isa> isa) {
  g_override.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void cost_matrix(const Embedded& a, const Embedded& b, std::int64_t* out) {
  switch (active_isa()) {
#if defined(EQUISTATE_HAVE_AVX2)
    case Isa::Avx2: return avx2::cost_matrix(a, b, out);
#endif
#if defined(EQUISTATE_HAVE_NEON)
    case Isa::Neon: return neon::cost_matrix(a, b, out);
#endif
    default: return scalar::cost_matrix(a, b, out);
  }
}

void row_min(const Embedded& a, const Embedded& b, bool skip_diagonal, std::int64_t* out) {
  switch (active_isa()) {
#if defined(EQUISTATE_HAVE_AVX2)
    case Isa::Avx2: return avx2::row_min(a, b, skip_diagonal, out);
#endif
#if defined(EQUISTATE_HAVE_NEON)
    case Isa::Neon: return neon::row_min(a, b, skip_diagonal, out);
#endif
    default: return scalar::row_min(a, b, skip_diagonal, out);
  }
}

}  // namespace equistate::kernels
