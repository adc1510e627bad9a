#include "doctest.h"

#include "fixtures.hpp"
#include "rv14/campaign.hpp"
#include "rv14/error.hpp"

using namespace rv14;

TEST_CASE("verify14 verdicts") {
  const auto r = verify14();
  CHECK(r.verdict);
  REQUIRE(r.groups.size() == 6);
  const std::vector<std::string> methods{"cyclic", "psi_p", "psi_p", "psi_pq", "sylow_lemma", "search"};
  for (std::size_t i = 0; i < 6; ++i) {
    CAPTURE(r.groups[i].name);
    CHECK(r.groups[i].method == methods[i]);
    CHECK(r.groups[i].verified);
    CHECK(r.groups[i].transitive);
  }
  CHECK(r.groups[3].order_computed == 196);
  CHECK_FALSE(r.groups[3].discrepancies.empty());
  CHECK(r.groups[5].classification.kind == ClassKind::Unresolved);
  REQUIRE(r.searches.size() == 1);
  CHECK(r.searches[0].verified());
  CHECK(r.digests.at("groups") == "57f46da359851e8d");
}

TEST_CASE("verify14 is deterministic and schedule independent") {
  CampaignOptions o;
  o.seed_independent = true;
  o.jobs = 2;
  const auto a = verify14(o);
  const auto b = verify14(o);
  CHECK(a.verdict);
  REQUIRE(a.searches.size() == 2);
  CHECK(a.searches[0].schedule != a.searches[1].schedule);
  CHECK(emit(a, Format::Json) == emit(b, Format::Json));
}

TEST_CASE("verify14 without Sylow or search fails for G5") {
  CampaignOptions o;
  o.use_sylow = false;
  o.use_witness_search = false;
  const auto r = verify14(o);
  CHECK_FALSE(r.verdict);
  CHECK_FALSE(r.groups[4].verified);
  CHECK(r.groups[4].method == "unresolved");
}

TEST_CASE("verify14 rejects malformed data") {
  CampaignOptions o;
  o.groups_text = "{";
  CHECK_THROWS_AS(verify14(o), ParseError);
  o.groups_text = R"j({"groups":[{"name":"G1","degree":14,"generators":["(1,2)(2,3)"]}]})j";
  CHECK_THROWS_AS(verify14(o), ParseError);
}

TEST_CASE("formats") {
  CHECK(parse_format("json") == Format::Json);
  CHECK(parse_format("text") == Format::Text);
  CHECK_THROWS_AS(parse_format("yaml"), ParseError);
}

TEST_CASE("assignment json round trip") {
  const auto& ctx = fx::g6();
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = random_monotone(ctx.table, ctx.poset, rng);
    const auto j = assignment_to_json(a);
    CHECK(assignment_from_json(nlohmann::json::parse(j.dump()), ctx.table, ctx.poset) == a);
  }
  const auto d = assignment_from_json(nlohmann::json::parse(R"j({"states":[{"orbit":"14.0","state":"F"}],"default":"T"})j"),
                                      ctx.table, ctx.poset);
  CHECK(d.fully_assigned());
  CHECK(euler(d) == 2);
  CHECK_THROWS_AS(assignment_from_json(nlohmann::json::parse(R"j([{"orbit":"99.0","state":"T"}])j"), ctx.table, ctx.poset),
                  Error);
  CHECK_THROWS_AS(assignment_from_json(nlohmann::json::parse(R"j([{"orbit":"1.0","state":"X"}])j"), ctx.table, ctx.poset),
                  ParseError);
  CHECK_THROWS_AS(assignment_from_json(nlohmann::json::parse("3"), ctx.table, ctx.poset), ParseError);
}

TEST_CASE("replay json carries the anchors") {
  const auto r = replay_appendix(fx::g6());
  const auto j = to_json(r);
  CHECK(j.contains("anchors"));
  CHECK(emit(r, Format::Text).find("Step") != std::string::npos);
}
