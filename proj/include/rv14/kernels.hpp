#pragma once

// Data-parallel inner loops. Every kernel has a portable scalar reference
// and, on x86-64, an AVX2 variant; the dispatching entry points pick the
// widest one the running CPU supports. Both variants are public so the
// tests can check them against each other.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace rv14 {
class Permutation;
}

namespace rv14::kernels {

using Mask = std::uint32_t;

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);
/// Best ISA available on this CPU (compile-time and run-time checks).
Isa detected_isa();
/// ISA used by the dispatching entry points.
Isa active_isa();
/// Pins the dispatcher; requesting an unavailable ISA falls back to scalar.
void set_active_isa(Isa isa);

/// Byte lookup tables for applying a point permutation to subset masks:
/// image(m) = OR over bytes b of table[b][byte b of m].
struct PermLut {
  std::array<std::array<Mask, 256>, 4> table{};
  std::size_t degree = 0;
};

/// Requires degree <= 32.
PermLut make_lut(const Permutation& p);

/// out[i] = image of in[i] under the permutation. Spans must have equal size.
void act_batch(const PermLut& lut, std::span<const Mask> in, std::span<Mask> out);

/// Sum of coeffs[i] over the set bits i of `bits` (bit i lives in word i/64).
/// Requires coeffs.size() == 64 * bits.size() and |sum| < 2^31.
std::int64_t masked_sum(std::span<const std::int32_t> coeffs, std::span<const std::uint64_t> bits);

namespace scalar {
void act_batch(const PermLut& lut, std::span<const Mask> in, std::span<Mask> out);
std::int64_t masked_sum(std::span<const std::int32_t> coeffs, std::span<const std::uint64_t> bits);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define RV14_HAVE_AVX2_KERNELS 1
namespace avx2 {
void act_batch(const PermLut& lut, std::span<const Mask> in, std::span<Mask> out);
std::int64_t masked_sum(std::span<const std::int32_t> coeffs, std::span<const std::uint64_t> bits);
}  // namespace avx2
#endif

}  // namespace rv14::kernels
