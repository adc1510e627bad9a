#include "rv14/replay.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"
#include "rv14/error.hpp"

namespace rv14 {

using nlohmann::json;

bool FinalStep::all_fail_link() const {
  return std::all_of(cases.begin(), cases.end(), [](const ResidualCase& c) { return c.chi_link != 1; });
}

const TraceStep* ReplayReport::printed_step(int step) const {
  for (const auto& s : steps)
    if (s.step == step) return &s;
  return nullptr;
}

std::vector<std::string> expand_orbit_ranges(const std::vector<std::string>& ids) {
  std::vector<std::string> out;
  for (const auto& id : ids) {
    const auto tilde = id.find('~');
    if (tilde == std::string::npos) {
      out.push_back(id);
      continue;
    }
    const OrbitId a = OrbitId::parse(id.substr(0, tilde));
    const OrbitId b = OrbitId::parse(id.substr(tilde + 1));
    if (a.level != b.level || a.index > b.index) throw ParseError("bad orbit range '" + id + "'");
    for (int j = a.index; j <= b.index; ++j) out.push_back(OrbitId{a.level, j}.str());
  }
  return out;
}

namespace {

std::vector<std::string> ids_of(const OrbitTable& t, const OrbitSet& s, bool skip_empty) {
  std::vector<std::string> out;
  s.for_each([&](std::size_t o) {
    if (!(skip_empty && t.level(o) == 0)) out.push_back(t.id(o).str());
  });
  return out;
}

OrbitSetDiff diff(const std::vector<std::string>& computed, const std::vector<std::string>& printed) {
  const std::set<std::string> c(computed.begin(), computed.end());
  const std::set<std::string> p(printed.begin(), printed.end());
  OrbitSetDiff d;
  for (const auto& x : p)
    if (!c.count(x)) d.missing.push_back(x);
  for (const auto& x : computed)
    if (!p.count(x)) d.extra.push_back(x);
  return d;
}

Mask union_mask(const std::vector<std::vector<Point>>& blocks, std::uint32_t subset) {
  Mask m = 0;
  for (std::size_t j = 0; j < blocks.size(); ++j)
    if ((subset >> j) & 1u)
      for (Point p : blocks[j]) m |= Mask{1} << p;
  return m;
}

const PrintedBlock& printed_block(const std::vector<GroupSpec>& subs, const std::string& group,
                                  const std::string& label) {
  for (const auto& b : find_spec(subs, group).blocks_printed)
    if (b.label == label) return b;
  throw DataError("block " + label + " not printed for " + group);
}

std::vector<std::pair<std::string, int>> sorted_counts(const std::map<std::string, int>& m) {
  std::vector<std::pair<std::string, int>> v(m.begin(), m.end());
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return OrbitId::parse(a.first) < OrbitId::parse(b.first); });
  return v;
}

bool satisfies(const OrbitTable& t, const TypeAssignment& a, const json& follow, std::string& problem) {
  for (const char* key : {"true", "false"}) {
    const OrbitState want = std::string(key) == "true" ? OrbitState::True : OrbitState::False;
    for (const auto& id : follow.at(key)) {
      std::size_t o = 0;
      try {
        o = t.flat(OrbitId::parse(id.get<std::string>()));
      } catch (const Error& e) {
        problem = e.what();
        return false;
      }
      if (a.state(o) != want) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<std::size_t> block_local_cases(const SearchContext& ctx, const SearchState& s,
                                             const SubgroupCheck& check, std::size_t max_free) {
  const auto& t = ctx.table;
  const auto& blocks = check.profile.blocks;
  const std::vector<std::size_t> free = (check.profile.governed & s.assignment.frees()).to_vector();
  if (free.size() > max_free || blocks.size() > 16) return std::nullopt;
  const std::uint32_t n_sets = std::uint32_t{1} << blocks.size();
  std::vector<std::size_t> orbit(n_sets, 0);
  for (std::uint32_t b = 1; b < n_sets; ++b) orbit[b] = t.orbit_of(union_mask(blocks, b));
  std::size_t count = 0;
  std::vector<char> face(n_sets, 0);
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << free.size()); ++pick) {
    auto is_true = [&](std::size_t o) {
      const auto it = std::find(free.begin(), free.end(), o);
      if (it != free.end()) return ((pick >> (it - free.begin())) & 1u) != 0;
      return s.assignment.state(o) == OrbitState::True;
    };
    std::int64_t chi = 0;
    bool closed = true;
    face[0] = 1;
    for (std::uint32_t b = 1; b < n_sets && closed; ++b) {
      face[b] = is_true(orbit[b]);
      if (!face[b]) continue;
      for (std::uint32_t rest = b; rest; rest &= rest - 1)
        if (!face[b & ~(rest & (~rest + 1))]) closed = false;
      chi += (std::popcount(b) % 2 == 1) ? 1 : -1;
    }
    if (closed && check.condition.holds(chi)) ++count;
  }
  return count;
}

ReplayReport replay_appendix(const SearchContext& ctx) {
  const auto& t = ctx.table;
  ReplayReport rep;
  const json app = json::parse(bundled_appendix_text());
  const auto subs = parse_group_file(bundled_subgroups_text());

  for (const auto& a : app.at("tuple_anchors")) {
    const auto pts = a.at("points").get<std::vector<int>>();
    rep.anchors.push_back({"tuple " + mask_to_string(mask_of(pts)), a.at("orbit").get<std::string>(),
                           t.id_of(mask_of(pts)).str()});
  }
  for (const auto& spec : subs) {
    for (const auto& b : spec.blocks_printed)
      rep.anchors.push_back({spec.name + " " + b.label, b.orbit, t.id_of(mask_of(b.points)).str()});
  }
  for (const auto& a : app.at("union_anchors")) {
    const auto group = a.at("subgroup").get<std::string>();
    Mask m = 0;
    std::string what = group;
    for (const auto& label : a.at("blocks")) {
      m |= mask_of(printed_block(subs, group, label.get<std::string>()).points);
      what += " " + label.get<std::string>();
    }
    rep.anchors.push_back({what, a.at("orbit").get<std::string>(), t.id_of(m).str()});
  }

  {
    const auto& ct = app.at("combination_table");
    const auto& check = ctx.check(ct.at("subgroup").get<std::string>());
    const auto& blocks = check.profile.blocks;
    for (const auto& row : ct.at("rows")) {
      CombinationRow r;
      r.k = row.at("k").get<int>();
      std::map<std::string, int> got;
      for (std::uint32_t s = 1; s < (std::uint32_t{1} << blocks.size()); ++s)
        if (std::popcount(s) == r.k) got[t.id_of(union_mask(blocks, s)).str()]++;
      r.computed = sorted_counts(got);
      r.printed = sorted_counts(row.at("orbits").get<std::map<std::string, int>>());
      rep.combinations.push_back(std::move(r));
    }
  }

  std::map<std::string, const json*> printed_steps;
  for (const auto& s : app.at("steps")) printed_steps[s.at("subgroup").get<std::string>()] = &s;

  const Schedule schedule = make_schedule(ctx, "fewest-blocks");
  SearchState state = initial_state(ctx);
  SearchCounters counters;
  bool lost = false;
  for (std::size_t idx = 0; idx + 1 < schedule.order.size() && !lost; ++idx) {
    const auto& check = ctx.checks[schedule.order[idx]];
    TraceStep ts;
    ts.subgroup = check.name;
    ts.blocks = check.blocks();
    ts.condition = check.condition.str();
    const OrbitSet governed = check.profile.governed & state.assignment.frees();
    const auto cases = enumerate_cases(ctx, state, check, counters);
    for (const auto& c : cases) {
      CaseSummary cs;
      governed.for_each([&](std::size_t o) {
        (c.assignment.state(o) == OrbitState::True ? cs.trues : cs.falses).push_back(t.id(o).str());
      });
      cs.chi = profile_euler(check.profile, c.assignment.trues());
      ts.cases.push_back(std::move(cs));
    }

    const auto it = printed_steps.find(check.name);
    if (it != printed_steps.end()) {
      const json& ps = *it->second;
      ts.step = ps.at("step").get<int>();
      ts.cases_printed = ps.at("cases_printed").get<std::size_t>();
      std::vector<std::size_t> matching;
      for (std::size_t i = 0; i < cases.size(); ++i) {
        std::string problem;
        if (satisfies(t, cases[i].assignment, ps.at("follow"), problem)) matching.push_back(i);
        if (!problem.empty()) ts.notes.push_back(problem);
      }
      if (matching.size() != 1)
        ts.notes.push_back(std::to_string(matching.size()) + " cases match the printed choice");
      if (!matching.empty()) ts.followed = matching.front();
      if (ps.contains("case_label_printed"))
        ts.notes.push_back("printed case label " + ps.at("case_label_printed").get<std::string>());
    } else if (cases.size() == 1) {
      ts.followed = 0;
    } else {
      ts.notes.push_back("unprinted step with " + std::to_string(cases.size()) + " cases; not applied");
      rep.steps.push_back(std::move(ts));
      continue;
    }
    ts.block_local_cases = block_local_cases(ctx, state, check);

    if (!ts.followed) {
      lost = true;
      rep.notes.push_back("replay stopped at " + check.name);
    } else {
      state = cases[*ts.followed];
      ts.theta_true = ids_of(t, state.assignment.trues(), true);
      ts.theta_false = ids_of(t, state.assignment.falses(), false);
      if (it != printed_steps.end()) {
        const json& ps = *it->second;
        ts.true_diff = diff(ts.theta_true, expand_orbit_ranges(ps.at("theta_true").get<std::vector<std::string>>()));
        ts.false_diff =
            diff(ts.theta_false, expand_orbit_ranges(ps.at("theta_false").get<std::vector<std::string>>()));
      }
    }
    rep.steps.push_back(std::move(ts));
  }
  if (lost) return rep;

  FinalStep fs;
  fs.chi = state.chi;
  fs.chi_link = state.chi_link;
  const OrbitSet frees = state.assignment.frees();
  frees.for_each([&](std::size_t o) {
    fs.free_orbits.push_back(t.id(o).str());
    fs.free_sizes.push_back(t.id(o).str() + " " + std::to_string(t.orbit_size(o)) + "/" +
                            std::to_string(t.containing_first(o)));
  });
  state.assignment.trues().for_each([&](std::size_t o) {
    const int k = t.level(o);
    if (k >= 2) fs.chi_link_printed_rule += (k % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(t.orbit_size(o));
  });
  const auto& fin = app.at("final");
  fs.free_diff = diff(fs.free_orbits, fin.at("free_printed").get<std::vector<std::string>>());
  const auto& identity = ctx.checks[schedule.order.back()];
  for (const auto& c : enumerate_cases(ctx, state, identity, counters)) {
    ResidualCase rc;
    frees.for_each([&](std::size_t o) {
      (c.assignment.state(o) == OrbitState::True ? rc.trues : rc.falses).push_back(t.id(o).str());
    });
    rc.chi = c.chi;
    rc.chi_link = c.chi_link;
    fs.cases.push_back(std::move(rc));
  }
  rep.final_step = std::move(fs);
  return rep;
}

}  // namespace rv14
