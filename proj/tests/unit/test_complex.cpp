#include "doctest.h"

#include <bit>
#include <random>

#include "fixtures.hpp"
#include "rv14/error.hpp"

using namespace rv14;

namespace {

TypeAssignment sample(std::mt19937_64& rng) {
  const auto& ctx = fx::g6();
  return random_monotone(ctx.table, ctx.poset, rng);
}

std::int64_t chi_explicit_block_complex(const TypeAssignment& a, const PermGroup& h) {
  // Faces of the fixed-point complex straight from the definition.
  const auto blocks = point_orbits(h);
  std::int64_t chi = 0;
  for (std::uint32_t s = 1; s < (1u << blocks.size()); ++s) {
    Mask u = 0;
    for (std::size_t j = 0; j < blocks.size(); ++j)
      if ((s >> j) & 1u)
        for (Point p : blocks[j]) u |= Mask{1} << p;
    if (a.is_true(u)) chi += (std::popcount(s) % 2 == 1) ? 1 : -1;
  }
  return chi;
}

}  // namespace

TEST_CASE("simplex and boundary") {
  const auto& ctx = fx::g6();
  TypeAssignment all(ctx.table, ctx.poset);
  for (std::size_t o = 0; o < ctx.table.size(); ++o) all.set(o, OrbitState::True);
  CHECK(is_monotone(all));
  CHECK(euler(all) == 1);
  all.set(ctx.table.full_orbit(), OrbitState::False);
  CHECK(is_monotone(all));
  CHECK(euler(all) == 1 - (-1));  // sphere S^12: 1 + (-1)^12
  TypeAssignment point(ctx.table, ctx.poset);
  for (std::size_t o = 0; o < ctx.table.size(); ++o) point.set(o, o == 0 ? OrbitState::True : OrbitState::False);
  CHECK(euler(point) == 0);
  CHECK(r_vector(point)[0] == 1);
}

TEST_CASE("indeterminate faces") {
  const auto& ctx = fx::g6();
  TypeAssignment a(ctx.table, ctx.poset);
  CHECK_THROWS_AS(euler(a), IndeterminateFace);
  CHECK_THROWS_AS(link(a, 1), IndeterminateFace);
  CHECK_THROWS_AS(link_euler_fast(a, 1), IndeterminateFace);
  CHECK_THROWS_AS(fixed_point_complex(a, fx::subgroup("G6^10")), IndeterminateFace);
  CHECK(euler_of_trues(a) == 0);
  std::mt19937_64 rng(2);
  const auto b = sample(rng);
  CHECK_THROWS_AS(link(b, 0), DataError);
  CHECK_THROWS_AS(link(b, 15), DataError);
}

TEST_CASE("monotonicity violations are detected") {
  const auto& ctx = fx::g6();
  std::mt19937_64 rng(4);
  auto a = sample(rng);
  REQUIRE(is_monotone(a));
  a.set(ctx.table.flat({1, 0}), OrbitState::False);
  a.set(ctx.table.flat({2, 1}), OrbitState::True);
  CHECK_FALSE(is_monotone(a));
}

TEST_CASE("random monotone assignments are downward closed complexes") {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 100; ++rep) {
    const auto a = sample(rng);
    REQUIRE(a.fully_assigned());
    CHECK(is_monotone(a));
    CHECK(is_downward_closed(faces_of(a)));
    CHECK(euler(a) == euler(faces_of(a)));
    CHECK(r_vector(a) == r_vector(faces_of(a)));
  }
}

TEST_CASE("property: link r-vector identity") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 150; ++rep) {
    const auto a = sample(rng);
    const auto r = r_vector(a);
    for (int v : {1, 5, 14}) {
      const auto rl = r_vector(link(a, v));
      for (std::size_t k = 1; k <= 14; ++k) REQUIRE(14 * rl[k - 1] == k * r[k]);
    }
  }
}

TEST_CASE("property: link_euler_fast equals explicit link") {
  std::mt19937_64 rng(22);
  const auto& ctx = fx::g6();
  for (int rep = 0; rep < 150; ++rep) {
    const auto a = sample(rng);
    const std::int64_t fast = link_euler_fast(a, 1);
    for (int v = 1; v <= 14; ++v) REQUIRE(euler(link(a, v)) == fast);
    CHECK(profile_euler(ctx.link, a.trues()) == fast);
  }
}

TEST_CASE("deletion and link partition the faces") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    const auto a = sample(rng);
    const auto c = faces_of(a);
    const auto l = link(c, 3);
    const auto d = deletion(c, 3);
    CHECK(l.faces.size() + d.faces.size() == c.faces.size());
    CHECK(is_downward_closed(l));
    CHECK(is_downward_closed(d));
    // chi(D) = chi(Del) + chi(Star) - chi(Link) with a cone star (chi 1).
    if (!l.faces.empty()) CHECK(euler(c) == euler(d) + 1 - euler(l));
  }
}

TEST_CASE("fixed-point profiles agree with the explicit complex") {
  std::mt19937_64 rng(31);
  const auto& ctx = fx::g6();
  for (int rep = 0; rep < 100; ++rep) {
    const auto a = sample(rng);
    for (const auto& c : ctx.checks) {
      const auto fp = fixed_point_complex(a, c.group);
      REQUIRE(fp.euler == chi_explicit_block_complex(a, c.group));
      REQUIRE(profile_euler(c.profile, a.trues()) == fp.euler);
    }
  }
  // The identity subgroup recovers the complex itself.
  const auto& id = ctx.check("G6^1");
  const auto a = sample(rng);
  CHECK(profile_euler(id.profile, a.trues()) == euler(a));
  CHECK(id.profile.governed.count() == ctx.table.size() - 1);
}
