#include "rv14/search.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>
#include <thread>

#include "rv14/error.hpp"

namespace rv14 {

bool ChiCondition::holds(std::int64_t chi) const {
  if (kind == Kind::Exact) return chi == value;
  const std::int64_t r = ((chi - value) % modulus + modulus) % modulus;
  return r == 0;
}

std::string ChiCondition::str() const {
  if (kind == Kind::Exact) return "=" + std::to_string(value);
  return "=" + std::to_string(value) + " mod " + std::to_string(modulus);
}

ChiCondition condition_for(const Classification& c) {
  switch (c.kind) {
    case ClassKind::Cyclic:
    case ClassKind::PsiP:
    case ClassKind::SylowLemma: return ChiCondition::exact(1);
    case ClassKind::PsiPQ: return ChiCondition::mod(c.q);
    case ClassKind::Unresolved: break;
  }
  throw DataError("no chi condition for an unresolved group");
}

SearchCounters& SearchCounters::operator+=(const SearchCounters& o) {
  nodes += o.nodes;
  cases += o.cases;
  conflicts += o.conflicts;
  chi_prunes += o.chi_prunes;
  link_failures += o.link_failures;
  return *this;
}

const SubgroupCheck& SearchContext::check(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw DataError("no subgroup check named '" + std::string(name) + "'");
}

namespace {

bool type_agrees(const std::string& printed, const Classification& c, std::size_t order) {
  if (printed.empty()) return order == 1;
  if (printed == "cyclic") return c.kind == ClassKind::Cyclic;
  if (printed.rfind("psi_", 0) == 0) {
    const auto caret = printed.find('^');
    const unsigned p = static_cast<unsigned>(std::stoul(printed.substr(4, caret - 4)));
    if (caret == std::string::npos) return c.kind == ClassKind::PsiP && c.p == p;
    const unsigned q = static_cast<unsigned>(std::stoul(printed.substr(caret + 1)));
    return c.kind == ClassKind::PsiPQ && c.p == p && c.q == q;
  }
  return false;
}

std::int64_t face_coefficient(const OrbitTable& t, std::size_t o) {
  const int k = t.level(o);
  if (k == 0) return 0;
  return (k % 2 == 1 ? 1 : -1) * static_cast<std::int64_t>(t.orbit_size(o));
}

}  // namespace

std::unique_ptr<SearchContext> make_context(const PermGroup& group, const std::vector<GroupSpec>& subgroups) {
  auto ctx = std::make_unique<SearchContext>();
  ctx->group = group;
  ctx->table = OrbitTable(ctx->group);
  ctx->poset = OrbitPoset(ctx->table);
  if (ctx->table.transitive()) ctx->link = link_profile(ctx->table);
  for (const auto& spec : subgroups) {
    SubgroupCheck c;
    c.name = spec.name;
    c.group = build_group(spec);
    if (c.group.degree() != group.degree() || !group.contains(c.group))
      throw DataError("subgroup " + spec.name + " is not contained in the parent group");
    c.classification = classify(c.group, build_witness(spec), ClassifyOptions{.use_sylow = false, .use_search = true});
    if (c.classification.kind == ClassKind::Unresolved)
      throw DataError("subgroup " + spec.name + " could not be classified");
    c.condition = condition_for(c.classification);
    c.type_printed = spec.type_printed;
    c.type_matches = type_agrees(spec.type_printed, c.classification, c.group.order());
    c.profile = fixed_point_profile(ctx->table, c.group);
    ctx->checks.push_back(std::move(c));
  }
  return ctx;
}

std::unique_ptr<SearchContext> make_g6_context() {
  const auto groups = parse_group_file(bundled_groups_text());
  const auto subs = parse_group_file(bundled_subgroups_text());
  return make_context(build_group(find_spec(groups, "G6")), subs);
}

std::vector<std::string> schedule_names() { return {"fewest-blocks", "most-blocks", "table-order"}; }

Schedule make_schedule(const SearchContext& ctx, std::string_view name) {
  Schedule s;
  s.name = std::string(name);
  std::vector<std::size_t> rest;
  std::optional<std::size_t> identity;
  for (std::size_t i = 0; i < ctx.checks.size(); ++i) {
    if (ctx.checks[i].group.order() == 1)
      identity = i;
    else
      rest.push_back(i);
  }
  if (!identity) throw DataError("schedule needs the identity subgroup");
  auto blocks = [&](std::size_t i) { return ctx.checks[i].blocks(); };
  if (name == "fewest-blocks") {
    std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
      return blocks(a) != blocks(b) ? blocks(a) < blocks(b) : a > b;
    });
  } else if (name == "most-blocks") {
    std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
      return blocks(a) != blocks(b) ? blocks(a) > blocks(b) : a < b;
    });
  } else if (name != "table-order") {
    throw ParseError("unknown schedule '" + std::string(name) + "'");
  }
  s.order = std::move(rest);
  s.order.push_back(*identity);
  return s;
}

SearchState initial_state(const SearchContext& ctx) {
  SearchState s;
  s.assignment = TypeAssignment(ctx.table, ctx.poset);
  auto a = propagate(ctx, s, ctx.table.empty_orbit(), OrbitState::True);
  auto b = a ? propagate(ctx, *a, ctx.table.full_orbit(), OrbitState::False) : std::nullopt;
  if (!b) throw DataError("nontriviality constraints conflict");
  return *b;
}

std::optional<SearchState> propagate(const SearchContext& ctx, const SearchState& s, std::size_t orbit,
                                     OrbitState value) {
  SearchState out = s;
  auto& a = out.assignment;
  if (value == OrbitState::True) {
    const OrbitSet& low = ctx.poset.lower(orbit);
    if (low.intersects(a.falses())) return std::nullopt;
    OrbitSet fresh = low;
    fresh.subtract(a.trues());
    fresh.for_each([&](std::size_t o) {
      out.chi += face_coefficient(ctx.table, o);
      if (!ctx.link.coefficient.empty()) out.chi_link += ctx.link.coefficient[o];
    });
    a.add_trues(low);
  } else if (value == OrbitState::False) {
    const OrbitSet& up = ctx.poset.upper(orbit);
    if (up.intersects(a.trues())) return std::nullopt;
    a.add_falses(up);
  } else {
    throw Error("propagate: value must be TRUE or FALSE");
  }
  return out;
}

namespace {

struct Enumerator {
  const SearchContext& ctx;
  const SubgroupCheck& check;
  SearchCounters& counters;
  const EnumerateOptions& opts;
  std::vector<std::size_t> governed;
  std::uint64_t leaves = 0;
  std::vector<SearchState> out;

  void dfs(const SearchState& s, std::size_t pos) {
    counters.nodes++;
    while (pos < governed.size() && s.assignment.state(governed[pos]) != OrbitState::Free) ++pos;
    const auto& cond = check.condition;
    if (pos == governed.size()) {
      if (++leaves > opts.cap)
        throw CapExceeded(check.name + ": more than " + std::to_string(opts.cap) + " cases");
      if (cond.holds(profile_euler(check.profile, s.assignment.trues()))) {
        counters.cases++;
        out.push_back(s);
      } else {
        counters.chi_prunes++;
      }
      return;
    }
    if (opts.bound_pruning && cond.kind == ChiCondition::Kind::Exact) {
      std::int64_t lo = profile_euler(check.profile, s.assignment.trues());
      std::int64_t hi = lo;
      for (std::size_t i = pos; i < governed.size(); ++i) {
        if (s.assignment.state(governed[i]) != OrbitState::Free) continue;
        const std::int64_t c = check.profile.coefficient[governed[i]];
        (c > 0 ? hi : lo) += c;
      }
      if (cond.value < lo || cond.value > hi) {
        counters.chi_prunes++;
        return;
      }
    }
    for (OrbitState v : {OrbitState::True, OrbitState::False}) {
      auto child = propagate(ctx, s, governed[pos], v);
      if (child)
        dfs(*child, pos + 1);
      else
        counters.conflicts++;
    }
  }
};

}  // namespace

std::vector<SearchState> enumerate_cases(const SearchContext& ctx, const SearchState& s,
                                         const SubgroupCheck& check, SearchCounters& counters,
                                         const EnumerateOptions& opts) {
  Enumerator e{ctx, check, counters, opts, (check.profile.governed & s.assignment.frees()).to_vector(), 0, {}};
  e.dfs(s, 0);
  return std::move(e.out);
}

namespace {

struct Walker {
  const SearchContext& ctx;
  const Schedule& schedule;
  const SearchOptions& opts;
  SearchReport report;

  void descend(const SearchState& s, std::size_t idx) {
    if (opts.on_node) opts.on_node(s);
    if (idx == schedule.order.size()) {
      if (!s.assignment.fully_assigned()) throw Error("schedule ended with FREE orbits");
      if (opts.link_check && s.chi_link != 1) {
        report.counters.link_failures++;
        return;
      }
      report.survivor_count++;
      if (report.feasible_functions.size() < opts.keep_survivors) report.feasible_functions.push_back(s.assignment);
      return;
    }
    auto cases = enumerate_cases(ctx, s, ctx.checks[schedule.order[idx]], report.counters, {.cap = opts.cap});
    report.cases_per_depth[idx] += cases.size();
    for (auto& c : cases) {
      c.depth = idx + 1;
      descend(c, idx + 1);
    }
  }
};

}  // namespace

SearchReport run_search_from(const SearchContext& ctx, const Schedule& schedule, const SearchState& start,
                             const SearchOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t depth = schedule.order.size();
  Walker root{ctx, schedule, opts, {}};
  root.report.schedule = schedule.name;
  root.report.cases_per_depth.assign(depth, 0);

  if (opts.jobs <= 1 || depth == 0) {
    root.descend(start, 0);
  } else {
    if (opts.on_node) opts.on_node(start);
    auto top = enumerate_cases(ctx, start, ctx.checks[schedule.order[0]], root.report.counters, {.cap = opts.cap});
    root.report.cases_per_depth[0] = top.size();
    std::vector<SearchReport> parts(top.size());
    std::vector<std::exception_ptr> errors(top.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < top.size(); i = next++) {
        Walker w{ctx, schedule, opts, {}};
        w.report.cases_per_depth.assign(depth, 0);
        try {
          top[i].depth = 1;
          w.descend(top[i], 1);
        } catch (...) {
          errors[i] = std::current_exception();
        }
        parts[i] = std::move(w.report);
      }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(opts.jobs, static_cast<unsigned>(top.size()));
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    auto& r = root.report;
    for (auto& p : parts) {
      r.counters += p.counters;
      r.survivor_count += p.survivor_count;
      for (std::size_t d = 0; d < depth; ++d) r.cases_per_depth[d] += p.cases_per_depth[d];
      for (auto& f : p.feasible_functions)
        if (r.feasible_functions.size() < opts.keep_survivors) r.feasible_functions.push_back(std::move(f));
    }
  }
  root.report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return std::move(root.report);
}

SearchReport run_search(const SearchContext& ctx, const Schedule& schedule, const SearchOptions& opts) {
  return run_search_from(ctx, schedule, initial_state(ctx), opts);
}

}  // namespace rv14
