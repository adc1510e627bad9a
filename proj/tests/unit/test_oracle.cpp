#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "rv14/error.hpp"
#include "rv14/oracle.hpp"

using namespace rv14;

namespace {

BooleanFunction from_predicate(std::size_t n, auto pred) {
  std::vector<std::uint8_t> t(std::size_t{1} << n);
  for (Mask x = 0; x < t.size(); ++x) t[x] = pred(x) ? 1 : 0;
  return BooleanFunction(n, std::move(t));
}

}  // namespace

TEST_CASE("known depths") {
  for (std::size_t n = 1; n <= 6; ++n) {
    CAPTURE(n);
    const auto none = from_predicate(n, [](Mask x) { return x == 0; });
    CHECK(decision_tree_depth(none) == static_cast<int>(n));
    const auto all = from_predicate(n, [](Mask) { return true; });
    CHECK(decision_tree_depth(all) == 0);
    CHECK(all.is_constant());
    const auto dictator = from_predicate(n, [](Mask x) { return !(x & 1u); });
    CHECK(decision_tree_depth(dictator) == 1);
    if (n > 1) CHECK_FALSE(is_elusive(dictator));
  }
  // Star on 4 vertices: faces are subsets of {1,2},{1,3},{1,4}; a cone, so not elusive.
  const auto star = from_predicate(4, [](Mask x) { return (x & ~1u) == 0 || std::popcount(x & ~1u) == 1; });
  CHECK(star.check_monotone_non_increasing());
  CHECK(decision_tree_depth(star) < 4);
  CHECK_THROWS_AS(BooleanFunction(3, std::vector<std::uint8_t>(7)), DataError);
}

TEST_CASE("constancy tests agree") {
  std::mt19937_64 rng(51);
  for (const auto& f : all_monotone_functions(4)) {
    for (int rep = 0; rep < 10; ++rep) {
      Restriction r;
      r.assigned = static_cast<Mask>(rng() & 0xf);
      r.values = static_cast<Mask>(rng()) & r.assigned;
      REQUIRE(is_constant_scan(f, r) == is_constant_monotone(f, r));
    }
  }
}

TEST_CASE("memoized depth matches plain recursion") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& f : all_monotone_functions(n)) REQUIRE(decision_tree_depth(f) == depth_unmemoized(f));
  std::mt19937_64 rng(52);
  const auto all5 = all_monotone_functions(5);
  std::uniform_int_distribution<std::size_t> pick(0, all5.size() - 1);
  for (int rep = 0; rep < 100; ++rep) {
    const auto& f = all5[pick(rng)];
    REQUIRE(decision_tree_depth(f) == depth_unmemoized(f));
  }
}

TEST_CASE("property: depth of the negation") {
  std::size_t cases = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& f : all_monotone_functions(n)) {
      REQUIRE(decision_tree_depth(f) == decision_tree_depth(f.negated()));
      ++cases;
    }
  CHECK(cases == 3 + 6 + 20 + 168);
}

TEST_CASE("restrictions") {
  const auto f = from_predicate(3, [](Mask x) { return std::popcount(x) <= 1; });
  const auto g = f.restricted(1, true);
  CHECK(g(0b000) == f(0b001));
  CHECK(g(0b001) == f(0b001));
  CHECK(g(0b110) == f(0b111));
  CHECK(f.restricted(2, false)(0b010) == f(0b000));
}

TEST_CASE("adversary path reaches full depth on an elusive function") {
  const auto f = from_predicate(5, [](Mask x) { return std::popcount(x) <= 2; });
  DepthOracle o(f);
  CHECK(o.depth() == 5);
  CHECK(o.adversary_path().size() == 5);
  CHECK(o.states_evaluated() > 0);
  CHECK_THROWS_AS(DepthOracle(from_predicate(15, [](Mask) { return true; })), DataError);
}

TEST_CASE("Dedekind counts and weakly symmetric census") {
  const std::vector<std::size_t> mono{3, 6, 20, 168, 7581};
  const std::vector<std::size_t> weak{1, 2, 3, 10, 29};
  for (std::size_t n = 1; n <= 5; ++n) {
    CAPTURE(n);
    const auto r = exhaustive_conjecture_check(n);
    CHECK(r.monotone_functions == mono[n - 1]);
    CHECK(r.weakly_symmetric == weak[n - 1]);
    CHECK(r.elusive_weakly_symmetric == r.weakly_symmetric);
    CHECK(r.passed());
  }
  CHECK(exhaustive_conjecture_check(5).non_elusive == 1467);
  CHECK_THROWS_AS(exhaustive_conjecture_check(6), DataError);
}

TEST_CASE("invariance group") {
  const auto f = from_predicate(4, [](Mask x) { return std::popcount(x) <= 1; });
  CHECK(invariance_group(f).order() == 24);
  const auto d = from_predicate(4, [](Mask x) { return !(x & 1u); });
  CHECK(invariance_group(d).order() == 6);
  CHECK_FALSE(is_transitive(invariance_group(d)));
}

TEST_CASE("G6-invariant samples are elusive") {
  const auto& ctx = fx::g6();
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 3; ++rep) {
    const auto a = random_monotone(ctx.table, ctx.poset, rng);
    const auto f = BooleanFunction::from_assignment(a);
    CHECK(f.check_monotone_non_increasing());
    CHECK(decision_tree_depth(f) == 14);
  }
}

TEST_CASE("restriction lemma on a cyclic group") {
  const auto c6 = PermGroup::generate({parse_cycles("(1,2,3,4,5,6)", 6)}, 6);
  const auto r = restriction_lemma_check(c6, 50, 7);
  CHECK(r.samples == 50);
  CHECK(r.applicable == 38);
  CHECK(r.passed());
  CHECK_THROWS_AS(restriction_lemma_check(fx::group("G6"), 1, 1), DataError);
}
