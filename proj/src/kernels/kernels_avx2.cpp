// Compiled with -mavx2; only reached after the dispatcher has confirmed
// AVX2 support at run time.
#include "rv14/kernels.hpp"

#ifdef RV14_HAVE_AVX2_KERNELS

#include <immintrin.h>

#include <cassert>

namespace rv14::kernels::avx2 {

void act_batch(const PermLut& lut, std::span<const Mask> in, std::span<Mask> out) {
  assert(in.size() == out.size());
  const __m256i byte_mask = _mm256_set1_epi32(0xff);
  const auto* t0 = reinterpret_cast<const int*>(lut.table[0].data());
  const auto* t1 = reinterpret_cast<const int*>(lut.table[1].data());
  const auto* t2 = reinterpret_cast<const int*>(lut.table[2].data());
  const auto* t3 = reinterpret_cast<const int*>(lut.table[3].data());

  std::size_t i = 0;
  for (; i + 8 <= in.size(); i += 8) {
    const __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in.data() + i));
    const __m256i b0 = _mm256_and_si256(m, byte_mask);
    const __m256i b1 = _mm256_and_si256(_mm256_srli_epi32(m, 8), byte_mask);
    const __m256i b2 = _mm256_and_si256(_mm256_srli_epi32(m, 16), byte_mask);
    const __m256i b3 = _mm256_srli_epi32(m, 24);
    __m256i r = _mm256_i32gather_epi32(t0, b0, 4);
    r = _mm256_or_si256(r, _mm256_i32gather_epi32(t1, b1, 4));
    r = _mm256_or_si256(r, _mm256_i32gather_epi32(t2, b2, 4));
    r = _mm256_or_si256(r, _mm256_i32gather_epi32(t3, b3, 4));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), r);
  }
  for (; i < in.size(); ++i) {
    const Mask m = in[i];
    out[i] = lut.table[0][m & 0xffu] | lut.table[1][(m >> 8) & 0xffu] |
             lut.table[2][(m >> 16) & 0xffu] | lut.table[3][m >> 24];
  }
}

std::int64_t masked_sum(std::span<const std::int32_t> coeffs, std::span<const std::uint64_t> bits) {
  assert(coeffs.size() == 64 * bits.size());
  // Lane j of each 8-wide block tests bit j of the current byte.
  const __m256i lane_bits = _mm256_setr_epi32(1, 2, 4, 8, 16, 32, 64, 128);
  __m256i acc = _mm256_setzero_si256();
  for (std::size_t w = 0; w < bits.size(); ++w) {
    const std::uint64_t word = bits[w];
    if (!word) continue;
    for (std::size_t byte = 0; byte < 8; ++byte) {
      const auto v = static_cast<int>((word >> (8 * byte)) & 0xffu);
      if (!v) continue;
      const __m256i sel = _mm256_cmpeq_epi32(
          _mm256_and_si256(_mm256_set1_epi32(v), lane_bits), lane_bits);
      const __m256i c = _mm256_loadu_si256(
          reinterpret_cast<const __m256i*>(coeffs.data() + w * 64 + byte * 8));
      acc = _mm256_add_epi32(acc, _mm256_and_si256(c, sel));
    }
  }
  const __m128i lo = _mm256_castsi256_si128(acc);
  const __m128i hi = _mm256_extracti128_si256(acc, 1);
  __m128i s = _mm_add_epi32(lo, hi);
  s = _mm_add_epi32(s, _mm_shuffle_epi32(s, _MM_SHUFFLE(1, 0, 3, 2)));
  s = _mm_add_epi32(s, _mm_shuffle_epi32(s, _MM_SHUFFLE(2, 3, 0, 1)));
  return _mm_cvtsi128_si32(s);
}

}  // namespace rv14::kernels::avx2

#endif
