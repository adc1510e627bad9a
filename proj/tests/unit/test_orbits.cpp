#include "doctest.h"

#include <bit>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "rv14/error.hpp"

using namespace rv14;

namespace {

std::uint64_t binom(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// Burnside over all elements, with the cycle index giving per-level counts.
std::vector<std::uint64_t> burnside_levels(const PermGroup& g) {
  const std::size_t n = g.degree();
  std::vector<std::uint64_t> total(n + 1, 0);
  for (const auto& e : g.elements()) {
    std::vector<std::uint64_t> poly(n + 1, 0);
    poly[0] = 1;
    for (std::size_t len : e.cycle_type()) {
      std::vector<std::uint64_t> next(n + 1, 0);
      for (std::size_t k = 0; k <= n; ++k) {
        if (!poly[k]) continue;
        next[k] += poly[k];
        if (k + len <= n) next[k + len] += poly[k];
      }
      poly = next;
    }
    for (std::size_t k = 0; k <= n; ++k) total[k] += poly[k];
  }
  for (auto& t : total) t /= g.order();
  return total;
}

}  // namespace

TEST_CASE("mask helpers") {
  CHECK(mask_of({1, 3}) == 0b101u);
  CHECK(points_of(0b1010u) == std::vector<int>{2, 4});
  CHECK(mask_to_string(mask_of({2, 14})) == "{2,14}");
  CHECK_THROWS_AS(mask_of({0}), ParseError);
  CHECK(lex_less(mask_of({1, 5}), mask_of({2, 3})));
  CHECK_FALSE(lex_less(mask_of({2, 3}), mask_of({1, 5})));
  CHECK(lex_less(mask_of({1, 2, 9}), mask_of({1, 3, 4})));
  CHECK(OrbitId::parse("8.24") == OrbitId{8, 24});
  CHECK(OrbitId{4, 10}.str() == "4.10");
  CHECK_THROWS_AS(OrbitId::parse("8"), ParseError);
  CHECK_THROWS_AS(OrbitId::parse("8.x"), ParseError);
  CHECK_THROWS_AS(OrbitId::parse("-1.2"), ParseError);
}

TEST_CASE("G6 census") {
  const auto& t = fx::g6().table;
  CHECK(t.size() == 156);  // printed 158
  const std::vector<std::size_t> counts{1, 1, 2, 5, 12, 17, 25, 30, 25, 17, 12, 5, 2, 1, 1};
  for (int k = 0; k <= 14; ++k) {
    CAPTURE(k);
    CHECK(t.level_count(k) == counts[static_cast<std::size_t>(k)]);
    std::uint64_t sum = 0;
    for (std::size_t j = 0; j < t.level_count(k); ++j) sum += t.orbit_size(t.level_begin(k) + j);
    CHECK(sum == binom(14, k));
  }
  CHECK(t.orbit_size(t.level_begin(1)) == 14);
  CHECK(t.orbit_size(t.flat({2, 0})) == 84);
  CHECK(t.orbit_size(t.flat({2, 1})) == 7);
  CHECK(t.empty_orbit() == 0);
  CHECK(t.full_orbit() == 155);
  CHECK_THROWS_AS(t.flat({2, 2}), DataError);
  CHECK_THROWS_AS(t.flat({15, 0}), DataError);
}

TEST_CASE("orbit counts agree with Burnside") {
  for (const auto& s : fx::groups()) {
    if (s.name == "G5") continue;  // 1092 elements, covered by the table size alone
    CAPTURE(s.name);
    const auto g = build_group(s);
    const OrbitTable t(g);
    const auto want = burnside_levels(g);
    for (int k = 0; k <= static_cast<int>(g.degree()); ++k) CHECK(t.level_count(k) == want[static_cast<std::size_t>(k)]);
  }
  const auto g5 = fx::group("G5");
  const auto want = burnside_levels(g5);
  std::uint64_t total = 0;
  for (auto w : want) total += w;
  CHECK(OrbitTable(g5).size() == total);
}

TEST_CASE("orbits match brute-force images under every element") {
  const auto g = fx::group("G6");
  const auto& t = fx::g6().table;
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Mask> pick(0, (Mask{1} << 14) - 1);
  for (int rep = 0; rep < 200; ++rep) {
    const Mask m = pick(rng);
    std::set<Mask> orbit;
    for (const auto& e : g.elements()) orbit.insert(act(e, m));
    const auto members = t.members(t.orbit_of(m));
    REQUIRE(std::set<Mask>(members.begin(), members.end()) == orbit);
    Mask best = *orbit.begin();
    for (Mask x : orbit)
      if (lex_less(x, best)) best = x;
    CHECK(t.representative(t.orbit_of(m)) == best);
    CHECK(t.containing_first(t.orbit_of(m)) ==
          static_cast<std::size_t>(std::count_if(orbit.begin(), orbit.end(), [](Mask x) { return x & 1u; })));
  }
}

TEST_CASE("numbering is lexicographic by representative within a level") {
  const auto& t = fx::g6().table;
  for (int k = 0; k <= 14; ++k)
    for (std::size_t j = 1; j < t.level_count(k); ++j)
      CHECK(lex_less(t.representative(t.level_begin(k) + j - 1), t.representative(t.level_begin(k) + j)));
  CHECK(t.id_of(mask_of({1, 2, 3, 6, 8, 9, 10, 12})) == OrbitId{8, 20});
}

TEST_CASE("poset agrees with brute-force containment") {
  const auto& ctx = fx::g6();
  const auto& t = ctx.table;
  std::vector<OrbitSet> lower(t.size(), OrbitSet(t.size()));
  // a <= b iff some submask of the representative of b lies in a.
  for (std::size_t b = 0; b < t.size(); ++b) {
    const Mask r = t.representative(b);
    for (Mask s = r;; s = (s - 1) & r) {
      lower[b].set(t.orbit_of(s));
      if (s == 0) break;
    }
  }
  for (std::size_t b = 0; b < t.size(); ++b) {
    REQUIRE(ctx.poset.lower(b) == lower[b]);
    lower[b].for_each([&](std::size_t a) { CHECK(ctx.poset.upper(a).test(b)); });
  }
  CHECK(ctx.poset.cover_edges().size() == 684);
  for (auto [a, b] : ctx.poset.cover_edges()) CHECK(t.level(a) + 1 == t.level(b));
}

TEST_CASE("degree limits") {
  CHECK_THROWS_AS(OrbitTable(PermGroup::generate({}, 21)), DataError);
  const OrbitTable t(PermGroup::generate({}, 4));
  CHECK(t.size() == 16);
  CHECK_FALSE(t.transitive());
}
