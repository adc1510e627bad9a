// One line per acceptance criterion. Exit status is 0 iff every outcome
// equals its pinned expectation below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rv14/campaign.hpp"
#include "rv14/oracle.hpp"
#include "rv14/replay.hpp"
#include "rv14/search.hpp"

using namespace rv14;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " !" << what;
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  bool expect_pass;
  std::function<void(Outcome&)> run;
};

const SearchContext& g6() {
  static const auto ctx = make_g6_context();
  return *ctx;
}

const std::vector<GroupSpec>& specs() {
  static const auto s = parse_group_file(bundled_groups_text());
  return s;
}

void group_orders(Outcome& o) {
  const auto t0 = Clock::now();
  const std::vector<std::pair<const char*, std::size_t>> want{
      {"G1", 14}, {"G2", 14}, {"G3", 56}, {"G5", 1092}, {"G6", 168}};
  for (auto [name, order] : want) {
    const auto got = build_group(find_spec(specs(), name)).order();
    o.detail << ' ' << name << '=' << got;
    o.require(got == order, std::string(name) + " order");
  }
  const auto& s4 = find_spec(specs(), "G4");
  const auto g4 = build_group(s4);
  o.detail << " G4=" << g4.order() << " (printed " << s4.order_printed.value_or(0) << ", flagged)";
  o.require(g4.order() == 196, "G4 order");
  o.require(s4.order_printed && *s4.order_printed != g4.order(), "G4 discrepancy flag");
  const auto w = build_witness(s4);
  o.require(w && verify_psi_pq(g4, *w), "G4 witness chain");
  if (w) {
    const auto p = PermGroup::generate(w->p_generators, 14);
    const auto h = PermGroup::generate(*w->h_generators, 14);
    o.require(p.order() == 49, "|P|=49");
    o.require(g4.order() == 2 * h.order(), "[G:H]=2");
    o.require(quotient_certificate(h, p).cyclic(), "H/P cyclic");
  }
  const double dt = seconds_since(t0);
  o.detail << "; G3 and G5 use corrected generators; " << dt << " s";
  o.require(dt < 1.0, "runtime < 1 s");
}

void classifications(Outcome& o) {
  const auto t0 = Clock::now();
  struct Want {
    const char* name;
    ClassKind kind;
    unsigned p, q;
  };
  const std::vector<Want> want{{"G1", ClassKind::Cyclic, 0, 0},    {"G2", ClassKind::PsiP, 7, 0},
                               {"G3", ClassKind::PsiP, 2, 0},      {"G4", ClassKind::PsiPQ, 7, 2},
                               {"G5", ClassKind::SylowLemma, 13, 0}, {"G6", ClassKind::Unresolved, 0, 0}};
  for (const auto& w : want) {
    const auto& s = find_spec(specs(), w.name);
    const auto c = classify(build_group(s), build_witness(s));
    o.detail << ' ' << w.name << '=' << to_string(c.kind);
    if (c.p) o.detail << '(' << c.p << (c.q ? "," + std::to_string(c.q) : "") << ')';
    o.require(c.kind == w.kind && (w.p == 0 || c.p == w.p) && (w.q == 0 || c.q == w.q), w.name);
  }
  const double dt = seconds_since(t0);
  o.detail << "; " << dt << " s";
  o.require(dt < 5.0, "runtime < 5 s");
}

std::uint64_t binom(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

void census(Outcome& o) {
  const auto t0 = Clock::now();
  const OrbitTable t(build_group(find_spec(specs(), "G6")));
  o.require(t.level_count(1) == 1 && t.orbit_size(t.level_begin(1)) == 14, "one 1-orbit of size 14");
  o.require(t.level_count(2) == 2, "two 2-orbits");
  if (t.level_count(2) == 2) {
    const auto a = t.orbit_size(t.level_begin(2)), b = t.orbit_size(t.level_begin(2) + 1);
    o.require(std::min(a, b) == 7 && std::max(a, b) == 84, "2-orbit sizes {84,7}");
  }
  for (int k = 0; k <= 14; ++k) {
    std::uint64_t sum = 0;
    for (std::size_t j = 0; j < t.level_count(k); ++j) sum += t.orbit_size(t.level_begin(k) + j);
    o.require(sum == binom(14, k), "level " + std::to_string(k) + " partitions C(14,k)");
  }
  const double dt = seconds_since(t0);
  o.detail << " total " << t.size() << " orbits (" << t.size() - 1
           << " nonempty) vs printed 158: differs, matches Burnside count; " << dt << " s";
  o.require(dt < 5.0, "runtime < 5 s");
}

void search(Outcome& o) {
  const auto t0 = Clock::now();
  const auto& ctx = g6();
  for (const char* name : {"fewest-blocks", "most-blocks"}) {
    const auto sched = make_schedule(ctx, name);
    const auto a = run_search(ctx, sched);
    const auto b = run_search(ctx, sched);
    o.detail << ' ' << name << ": feasible " << a.survivor_count << " nodes " << a.counters.nodes;
    o.require(a.survivor_count == 0, std::string(name) + " zero feasible");
    o.require(a.counters.nodes == b.counters.nodes && a.counters.cases == b.counters.cases &&
                  a.cases_per_depth == b.cases_per_depth,
              std::string(name) + " deterministic");
  }
  const double dt = seconds_since(t0);
  o.detail << "; " << dt << " s single-threaded";
  o.require(dt < 600.0, "runtime < 10 min");
}

void replay(Outcome& o) {
  const auto r = replay_appendix(g6());
  auto step_cases = [&](int k, std::size_t want) {
    const auto* s = r.printed_step(k);
    const std::size_t got = s ? s->cases.size() : 0;
    o.detail << " step" << k << '=' << got << "(want " << want << ')';
    o.require(got == want, "step " + std::to_string(k));
  };
  step_cases(1, 2);
  step_cases(4, 4);
  step_cases(6, 2);
  if (!r.final_step) {
    o.require(false, "final step missing");
    return;
  }
  const auto& f = *r.final_step;
  o.detail << " chi=" << f.chi << " chi_link=" << f.chi_link << " free=" << f.free_orbits.size()
           << "(want 6) residual=" << f.cases.size() << "(want 2)";
  o.require(f.chi == 1, "chi 1");
  o.require(f.chi_link == 7, "chi link 7");
  o.require(f.free_orbits.size() == 6, "6 free orbits");
  o.require(f.cases.size() == 2, "2 residual cases");
  o.require(f.all_fail_link(), "residual cases fail link");
  std::size_t anchored = 0;
  for (const auto& a : r.anchors) anchored += a.match();
  o.detail << "; anchors " << anchored << '/' << r.anchors.size();
}

void oracle(Outcome& o) {
  const auto& ctx = g6();
  std::mt19937_64 rng(20261019);
  for (int i = 0; i < 5; ++i) {
    const auto a = random_monotone(ctx.table, ctx.poset, rng);
    const auto t0 = Clock::now();
    const int d = decision_tree_depth(BooleanFunction::from_assignment(a));
    const double dt = seconds_since(t0);
    o.detail << " D=" << d << " (" << a.trues().count() << " T orbits, " << dt << " s)";
    o.require(d == 14, "sample " + std::to_string(i) + " elusive");
    o.require(dt < 300.0, "sample " + std::to_string(i) + " < 5 min");
  }
}

void conjecture(Outcome& o) {
  const auto t0 = Clock::now();
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto r = exhaustive_conjecture_check(n);
    o.detail << " n=" << n << ":" << r.weakly_symmetric << "/" << r.monotone_functions;
    o.require(r.counterexamples == 0, "n=" + std::to_string(n) + " counterexamples");
    o.require(r.non_elusive_chi_violations == 0, "n=" + std::to_string(n) + " chi of non-elusive");
  }
  const double dt = seconds_since(t0);
  o.detail << " (weakly symmetric/monotone), 0 counterexamples; " << dt << " s";
  o.require(dt < 120.0, "runtime < 2 min");
}

bool closure_matches(const SearchContext& ctx, const TypeAssignment& a) {
  const auto& t = ctx.table;
  for (std::size_t o = 0; o < t.size(); ++o) {
    const Mask r = t.representative(o);
    if (a.state(o) == OrbitState::True)
      for (Mask s = r;; s = (s - 1) & r) {
        if (a.state(t.orbit_of(s)) != OrbitState::True) return false;
        if (s == 0) break;
      }
    if (a.state(o) == OrbitState::False)
      for (int p = 0; p < 14; ++p)
        if (!((r >> p) & 1u) && a.state(t.orbit_of(r | (Mask{1} << p))) != OrbitState::False) return false;
  }
  return true;
}

void properties(Outcome& o) {
  const auto& ctx = g6();
  std::mt19937_64 rng(8);
  auto suite = [&](const char* name, std::size_t cases, std::size_t failures) {
    o.detail << ' ' << name << ' ' << cases - failures << '/' << cases;
    o.require(cases >= 100 && failures == 0, name);
  };

  std::size_t n = 0, bad = 0;
  for (; n < 200; ++n) {
    const auto a = random_monotone(ctx.table, ctx.poset, rng);
    const auto r = r_vector(a);
    const auto rl = r_vector(link(a, 1));
    for (std::size_t k = 1; k <= 14; ++k)
      if (14 * rl[k - 1] != k * r[k]) {
        ++bad;
        break;
      }
  }
  suite("link-r-vector", n, bad);

  n = bad = 0;
  for (; n < 200; ++n) {
    const auto a = random_monotone(ctx.table, ctx.poset, rng);
    const int v = 1 + static_cast<int>(rng() % 14);
    if (link_euler_fast(a, v) != euler(link(a, v))) ++bad;
  }
  suite("link-euler-fast", n, bad);

  n = bad = 0;
  std::uniform_int_distribution<std::size_t> pick(1, ctx.table.size() - 2);
  while (n < 300) {
    auto s = initial_state(ctx);
    for (int step = 0; step < 5; ++step) {
      auto next = propagate(ctx, s, pick(rng), (rng() & 1u) ? OrbitState::True : OrbitState::False);
      if (!next) break;
      ++n;
      if (!closure_matches(ctx, next->assignment)) ++bad;
      s = std::move(*next);
    }
  }
  suite("propagate-closure", n, bad);

  n = bad = 0;
  std::size_t seen = 0;
  SearchOptions opts;
  opts.on_node = [&](const SearchState& s) {
    if (seen++ % 23 != 0) return;
    ++n;
    if (s.chi != euler_of_trues(s.assignment) || s.chi_link != profile_euler(ctx.link, s.assignment.trues())) ++bad;
  };
  run_search(ctx, make_schedule(ctx, "fewest-blocks"), opts);
  suite("incremental-chi", n, bad);

  n = bad = 0;
  for (std::size_t arity = 1; arity <= 4; ++arity)
    for (const auto& f : all_monotone_functions(arity)) {
      ++n;
      if (decision_tree_depth(f) != decision_tree_depth(f.negated())) ++bad;
    }
  suite("depth-negation", n, bad);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "group orders", true, group_orders},
      {2, "classification verdicts", true, classifications},
      {3, "G6 orbit census", true, census},
      {4, "search finds no feasible function", true, search},
      {5, "worked-branch replay", false, replay},
      {6, "oracle depth on G6 samples", true, oracle},
      {7, "exhaustive check n<=5", true, conjecture},
      {8, "property suites", true, properties},
  };
  int unexpected = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const bool as_expected = o.pass == c.expect_pass;
    if (!as_expected) ++unexpected;
    std::printf("%s %d %s:%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.str().c_str(),
                as_expected ? (o.pass ? "" : " [expected]") : " [UNEXPECTED]");
  }
  return unexpected == 0 ? 0 : 1;
}
