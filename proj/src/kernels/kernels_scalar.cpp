#include <bit>
#include <cassert>

#include "rv14/kernels.hpp"
#include "rv14/perm.hpp"

namespace rv14::kernels {

PermLut make_lut(const Permutation& p) {
  assert(p.degree() <= 32);
  PermLut lut;
  lut.degree = p.degree();
  for (std::size_t byte = 0; byte < 4; ++byte) {
    for (std::size_t v = 0; v < 256; ++v) {
      Mask img = 0;
      for (std::size_t b = 0; b < 8; ++b) {
        const std::size_t point = byte * 8 + b;
        if ((v >> b) & 1u) {
          if (point >= p.degree()) {
            img = 0;
            break;
          }
          img |= Mask{1} << p(static_cast<Point>(point));
        }
      }
      lut.table[byte][v] = img;
    }
  }
  return lut;
}

namespace scalar {

void act_batch(const PermLut& lut, std::span<const Mask> in, std::span<Mask> out) {
  assert(in.size() == out.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    const Mask m = in[i];
    out[i] = lut.table[0][m & 0xffu] | lut.table[1][(m >> 8) & 0xffu] |
             lut.table[2][(m >> 16) & 0xffu] | lut.table[3][m >> 24];
  }
}

std::int64_t masked_sum(std::span<const std::int32_t> coeffs, std::span<const std::uint64_t> bits) {
  assert(coeffs.size() == 64 * bits.size());
  std::int64_t sum = 0;
  for (std::size_t w = 0; w < bits.size(); ++w) {
    std::uint64_t word = bits[w];
    while (word) {
      sum += coeffs[w * 64 + static_cast<std::size_t>(std::countr_zero(word))];
      word &= word - 1;
    }
  }
  return sum;
}

}  // namespace scalar
}  // namespace rv14::kernels
