#include "doctest.h"

#include <random>

#include "rv14/kernels.hpp"
#include "rv14/perm.hpp"

using namespace rv14;
namespace k = rv14::kernels;

namespace {

Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>(i);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

}  // namespace

TEST_CASE("act_batch scalar matches the definition") {
  std::mt19937_64 rng(3);
  const auto p = random_perm(14, rng);
  const auto lut = k::make_lut(p);
  std::vector<k::Mask> in(1u << 14), out(in.size());
  for (k::Mask m = 0; m < in.size(); ++m) in[m] = m;
  k::scalar::act_batch(lut, in, out);
  for (k::Mask m = 0; m < in.size(); ++m) {
    k::Mask want = 0;
    for (int i = 0; i < 14; ++i)
      if ((m >> i) & 1u) want |= k::Mask{1} << p(static_cast<Point>(i));
    REQUIRE(out[m] == want);
  }
}

#ifdef RV14_HAVE_AVX2_KERNELS
TEST_CASE("avx2 kernels agree with scalar") {
  if (k::detected_isa() != k::Isa::Avx2) {
    MESSAGE("AVX2 not available on this CPU; equivalence skipped");
    return;
  }
  std::mt19937_64 rng(5);
  for (std::size_t n : {1u, 7u, 14u, 20u, 32u}) {
    const auto lut = k::make_lut(random_perm(n, rng));
    for (std::size_t len : {0u, 1u, 7u, 8u, 9u, 63u, 1000u}) {
      std::vector<k::Mask> in(len), a(len), b(len);
      for (auto& x : in) x = static_cast<k::Mask>(rng()) & static_cast<k::Mask>((std::uint64_t{1} << n) - 1);
      k::scalar::act_batch(lut, in, a);
      k::avx2::act_batch(lut, in, b);
      CHECK(a == b);
    }
  }
  std::uniform_int_distribution<std::int32_t> coef(-100000, 100000);
  for (std::size_t words : {1u, 2u, 3u, 5u}) {
    for (int rep = 0; rep < 200; ++rep) {
      std::vector<std::int32_t> c(64 * words);
      for (auto& x : c) x = coef(rng);
      std::vector<std::uint64_t> bits(words);
      for (auto& w : bits) w = rng() & rng();
      CHECK(k::scalar::masked_sum(c, bits) == k::avx2::masked_sum(c, bits));
    }
  }
}
#endif

TEST_CASE("dispatcher can be pinned") {
  const auto before = k::active_isa();
  k::set_active_isa(k::Isa::Scalar);
  CHECK(k::active_isa() == k::Isa::Scalar);
  std::vector<std::int32_t> c(64, 1);
  std::vector<std::uint64_t> bits{0xffu};
  CHECK(k::masked_sum(c, bits) == 8);
  k::set_active_isa(before);
  CHECK(k::to_string(k::Isa::Avx2) == "avx2");
}
