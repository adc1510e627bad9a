#include <atomic>

#include "rv14/kernels.hpp"

namespace rv14::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(RV14_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "scalar";
}

Isa detected_isa() {
  static const Isa isa = cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) isa = Isa::Scalar;
  active().store(isa, std::memory_order_relaxed);
}

void act_batch(const PermLut& lut, std::span<const Mask> in, std::span<Mask> out) {
#ifdef RV14_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::Avx2) return avx2::act_batch(lut, in, out);
#endif
  scalar::act_batch(lut, in, out);
}

std::int64_t masked_sum(std::span<const std::int32_t> coeffs, std::span<const std::uint64_t> bits) {
#ifdef RV14_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::Avx2) return avx2::masked_sum(coeffs, bits);
#endif
  return scalar::masked_sum(coeffs, bits);
}

}  // namespace rv14::kernels
