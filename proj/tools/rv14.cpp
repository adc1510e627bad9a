// Command-line front end; see README.md for the command list.
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rv14/campaign.hpp"
#include "rv14/error.hpp"

using namespace rv14;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { kVerified = 0, kFailed = 1, kInputError = 2 };

struct Globals {
  std::string format = "text";
  std::string group_file;
  std::string group_name;
  unsigned jobs = 1;
  std::string schedule = "fewest-blocks";
  std::uint64_t cap = std::uint64_t{1} << 20;
};

std::vector<GroupSpec> load_specs(const std::string& path) {
  if (path.empty()) return parse_group_file(bundled_groups_text());
  return parse_group_file(read_text_file(path));
}

/// The group named by --group, else G6 when present, else the only group.
const GroupSpec& pick(const std::vector<GroupSpec>& specs, const std::string& name) {
  if (!name.empty()) return find_spec(specs, name);
  if (specs.size() == 1) return specs.front();
  for (const auto& s : specs)
    if (s.name == "G6") return s;
  throw DataError("group file holds several groups; choose one with --group");
}

void print(const Globals& g, const ojson& j, const std::string& text) {
  if (parse_format(g.format) == Format::Json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

ojson points_json(Mask m) { return ojson(points_of(m)); }

int cmd_group(const Globals& g, const std::string& path, bool classify_mode) {
  const auto specs = load_specs(path.empty() ? g.group_file : path);
  ojson arr = ojson::array();
  std::ostringstream text;
  bool all = true;
  for (const auto& s : specs) {
    if (!g.group_name.empty() && s.name != g.group_name) continue;
    const auto grp = build_group(s, g.cap);
    ojson j;
    j["name"] = s.name;
    j["degree"] = grp.degree();
    j["order"] = grp.order();
    if (s.order_printed) j["order_printed"] = *s.order_printed;
    j["transitive"] = is_transitive(grp);
    text << s.name << "  degree " << grp.degree() << "  order " << grp.order()
         << (is_transitive(grp) ? "  transitive" : "  intransitive");
    if (s.order_printed && *s.order_printed != grp.order()) text << "  (printed " << *s.order_printed << ")";
    if (classify_mode) {
      const auto c = classify(grp, build_witness(s));
      j["classification"] = to_json(c);
      text << "  " << to_string(c.kind);
      if (c.p) text << " p=" << c.p;
      if (c.q) text << " q=" << c.q;
      text << " [" << c.source << "]";
      all = all && c.kind != ClassKind::Unresolved;
    }
    text << "\n";
    arr.push_back(j);
  }
  print(g, arr, text.str());
  return all ? kVerified : kFailed;
}

int cmd_orbits(const Globals& g, const std::string& path, bool poset_mode) {
  const auto specs = load_specs(path.empty() ? g.group_file : path);
  const auto& spec = pick(specs, g.group_name);
  const auto grp = build_group(spec, g.cap);
  const OrbitTable t(grp);
  std::ostringstream text;
  if (!poset_mode) {
    ojson census = ojson::array();
    for (std::size_t o = 0; o < t.size(); ++o) {
      ojson e;
      e["level"] = t.level(o);
      e["index"] = t.id(o).index;
      e["size"] = t.orbit_size(o);
      e["representative"] = points_json(t.representative(o));
      e["containing_x1"] = t.containing_first(o);
      census.push_back(e);
      text << t.id(o).str() << "  size " << t.orbit_size(o) << "  through x1 " << t.containing_first(o) << "  rep "
           << mask_to_string(t.representative(o)) << "\n";
    }
    ojson per_level = ojson::array();
    text << "orbits per level:";
    for (int k = 0; k <= static_cast<int>(t.degree()); ++k) {
      per_level.push_back(t.level_count(k));
      text << " " << t.level_count(k);
    }
    text << "\ntotal " << t.size() << " (nonempty subsets: " << t.size() - 1 << ")\n";
    ojson j;
    j["group"] = spec.name;
    j["order"] = grp.order();
    j["transitive"] = t.transitive();
    j["total_orbits"] = t.size();
    j["nonempty_orbits"] = t.size() - 1;
    j["orbits_per_level"] = per_level;
    j["census"] = census;
    print(g, j, text.str());
  } else {
    const OrbitPoset p(t);
    ojson edges = ojson::array();
    for (const auto& [a, b] : p.cover_edges()) {
      edges.push_back({t.id(a).str(), t.id(b).str()});
      text << t.id(a).str() << " < " << t.id(b).str() << "\n";
    }
    ojson j;
    j["group"] = spec.name;
    j["edges"] = edges;
    print(g, j, text.str());
  }
  return kVerified;
}

struct Loaded {
  PermGroup group;
  std::unique_ptr<OrbitTable> table;
  std::unique_ptr<OrbitPoset> poset;
};

Loaded load_group(const Globals& g, const std::string& path) {
  const auto specs = load_specs(path.empty() ? g.group_file : path);
  Loaded l;
  l.group = build_group(pick(specs, g.group_name), g.cap);
  l.table = std::make_unique<OrbitTable>(l.group);
  l.poset = std::make_unique<OrbitPoset>(*l.table);
  return l;
}

TypeAssignment load_assignment(const std::string& path, const Loaded& l) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("assignment file: ") + e.what());
  }
  auto a = assignment_from_json(j, *l.table, *l.poset);
  if (!is_monotone(a)) throw DataError("assignment is not monotone");
  return a;
}

int cmd_euler(const Globals& g, const std::string& gpath, const std::string& apath) {
  const auto l = load_group(g, gpath);
  const auto a = load_assignment(apath, l);
  const auto r = r_vector(a);
  const auto chi = euler(a);
  const auto lk = link(a, 1);
  ojson j;
  j["chi"] = chi;
  j["r_vector"] = r;
  j["chi_link_x1"] = euler(lk);
  if (l.table->transitive()) j["chi_link_x1_fast"] = link_euler_fast(a, 1);
  j["chi_deletion_x1"] = euler(deletion(a, 1));
  std::ostringstream text;
  text << "chi " << chi << "\nr";
  for (auto x : r) text << " " << x;
  text << "\nchi(link x1) " << euler(lk) << "\nchi(deletion x1) " << euler(deletion(a, 1)) << "\n";
  print(g, j, text.str());
  return kVerified;
}

int cmd_fixedpoint(const Globals& g, const std::string& gpath, const std::string& spath, const std::string& apath,
                   const std::string& sub_name) {
  const auto l = load_group(g, gpath);
  const auto a = load_assignment(apath, l);
  const auto subs = parse_group_file(spath.empty() ? std::string(bundled_subgroups_text()) : read_text_file(spath));
  ojson arr = ojson::array();
  std::ostringstream text;
  for (const auto& s : subs) {
    if (!sub_name.empty() && s.name != sub_name) continue;
    const auto sub = build_group(s, g.cap);
    if (!l.group.contains(sub)) throw DataError("subgroup " + s.name + " is not contained in the group");
    const auto fp = fixed_point_complex(a, sub);
    ojson blocks = ojson::array();
    for (const auto& b : fp.blocks) {
      std::vector<int> pts;
      for (Point p : b) pts.push_back(p + 1);
      blocks.push_back(pts);
    }
    ojson faces = ojson::array();
    for (auto f : fp.faces) {
      std::vector<int> idx;
      for (std::size_t j = 0; j < fp.blocks.size(); ++j)
        if ((f >> j) & 1u) idx.push_back(static_cast<int>(j) + 1);
      faces.push_back(idx);
    }
    arr.push_back({{"subgroup", s.name}, {"blocks", blocks}, {"faces", faces}, {"chi", fp.euler}});
    text << s.name << "  blocks " << fp.blocks.size() << "  faces " << fp.faces.size() << "  chi " << fp.euler
         << "\n";
  }
  print(g, arr, text.str());
  return kVerified;
}

int cmd_dtree(const Globals& g, const std::string& gpath, const std::string& apath) {
  const auto l = load_group(g, gpath);
  const auto a = load_assignment(apath, l);
  if (!a.fully_assigned()) throw DataError("dtree needs a fully assigned function");
  const auto f = BooleanFunction::from_assignment(a);
  DepthOracle o(f);
  const int d = o.depth();
  const auto path = o.adversary_path();
  Mask input = 0;
  ojson qs = ojson::array();
  std::ostringstream text;
  text << "D(f) " << d << "  " << (d == static_cast<int>(f.arity()) ? "elusive" : "not elusive") << "\nadversary:";
  for (const auto& q : path) {
    if (q.answer) input |= Mask{1} << (q.variable - 1);
    qs.push_back({{"variable", q.variable}, {"answer", q.answer ? 1 : 0}});
    text << " x" << q.variable << "=" << (q.answer ? 1 : 0);
  }
  text << "\nworst-case input " << mask_to_string(input) << " f=" << f(input) << "\n";
  ojson j;
  j["depth"] = d;
  j["arity"] = f.arity();
  j["elusive"] = d == static_cast<int>(f.arity());
  j["adversary_path"] = qs;
  j["worst_case_input"] = points_json(input);
  j["states_evaluated"] = o.states_evaluated();
  print(g, j, text.str());
  return kVerified;
}

int cmd_conjecture(const Globals& g, std::size_t n) {
  const auto r = exhaustive_conjecture_check(n);
  std::ostringstream text;
  text << "n " << r.n << "  monotone " << r.monotone_functions << "  weakly symmetric nontrivial "
       << r.weakly_symmetric << "  elusive " << r.elusive_weakly_symmetric << "  counterexamples "
       << r.counterexamples << "\nnon-elusive " << r.non_elusive << "  with chi != 1 "
       << r.non_elusive_chi_violations << "  D(f) != D(1-f) " << r.negation_mismatches << "\n";
  print(g, to_json(r), text.str());
  return r.passed() ? kVerified : kFailed;
}

int cmd_verify14(const Globals& g, bool seed_independent, bool no_sylow, bool no_search) {
  CampaignOptions o;
  o.schedule = g.schedule;
  o.jobs = g.jobs;
  o.cap = g.cap;
  o.seed_independent = seed_independent;
  o.use_sylow = !no_sylow;
  o.use_witness_search = !no_search;
  if (!g.group_file.empty()) o.groups_text = read_text_file(g.group_file);
  const auto r = verify14(o);
  std::cout << emit(r, parse_format(g.format));
  return r.verdict ? kVerified : kFailed;
}

int cmd_replay(const Globals& g) {
  const auto ctx = make_g6_context();
  const auto r = replay_appendix(*ctx);
  std::cout << emit(r, parse_format(g.format));
  bool ok = r.final_step.has_value();
  for (const auto& s : r.steps)
    if (s.cases_printed && *s.cases_printed != s.cases.size()) ok = false;
  return ok ? kVerified : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elusiveness verifier for weakly symmetric monotone boolean functions of 14 variables"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--group-file", g.group_file, "Group file replacing the bundled groups");
  app.add_option("--group", g.group_name, "Group name inside a multi-group file");
  app.add_option("--jobs", g.jobs, "Worker threads for the search")->check(CLI::PositiveNumber);
  app.add_option("--schedule", g.schedule, "Subgroup schedule")
      ->check(CLI::IsMember({"fewest-blocks", "most-blocks", "table-order"}));
  app.add_option("--cap", g.cap, "Group closure / residual case cap")->check(CLI::PositiveNumber);

  int rc = kVerified;
  std::string path, path2, path3, sub_name;

  auto* group = app.add_subcommand("group", "Group orders and classifications");
  group->require_subcommand(1);
  auto* g_order = group->add_subcommand("order", "Closure order and transitivity");
  g_order->add_option("file", path, "Group file (default: bundled)");
  g_order->callback([&] { rc = cmd_group(g, path, false); });
  auto* g_class = group->add_subcommand("classify", "Cyclic / Oliver / Sylow classification");
  g_class->add_option("file", path, "Group file (default: bundled)");
  g_class->callback([&] { rc = cmd_group(g, path, true); });

  auto* orbits = app.add_subcommand("orbits", "Subset orbits");
  orbits->require_subcommand(1);
  auto* o_comp = orbits->add_subcommand("compute", "Orbit census");
  o_comp->add_option("groupfile", path, "Group file (default: bundled G6)");
  o_comp->callback([&] { rc = cmd_orbits(g, path, false); });
  auto* o_poset = orbits->add_subcommand("poset", "One-step inclusion edges between orbits");
  o_poset->add_option("groupfile", path, "Group file (default: bundled G6)");
  o_poset->callback([&] { rc = cmd_orbits(g, path, true); });

  auto* eul = app.add_subcommand("euler", "Euler characteristic of an assignment");
  eul->add_option("groupfile", path, "Group file")->required();
  eul->add_option("assignment", path2, "Assignment file")->required();
  eul->callback([&] { rc = cmd_euler(g, path, path2); });

  auto* fp = app.add_subcommand("fixedpoint", "Fixed-point complexes of subgroups");
  fp->add_option("groupfile", path, "Group file")->required();
  fp->add_option("subgroupfile", path2, "Subgroup file")->required();
  fp->add_option("assignment", path3, "Assignment file")->required();
  fp->add_option("--subgroup", sub_name, "Only this subgroup");
  fp->callback([&] { rc = cmd_fixedpoint(g, path, path2, path3, sub_name); });

  auto* dt = app.add_subcommand("dtree", "Exact decision-tree depth");
  dt->add_option("groupfile", path, "Group file")->required();
  dt->add_option("assignment", path2, "Assignment file")->required();
  dt->callback([&] { rc = cmd_dtree(g, path, path2); });

  std::size_t n = 4;
  auto* cc = app.add_subcommand("conjecture-check", "Exhaustive sweep over monotone functions");
  cc->add_option("--n", n, "Number of variables (1..5)")->required()->check(CLI::Range(1, 5));
  cc->callback([&] { rc = cmd_conjecture(g, n); });

  bool seed_independent = false, no_sylow = false, no_search = false;
  auto* v14 = app.add_subcommand("verify14", "Full verification campaign");
  v14->add_flag("--seed-independent", seed_independent, "Repeat the search under a second schedule");
  v14->add_flag("--no-sylow", no_sylow, "Disable the Sylow-lemma test");
  v14->add_flag("--no-witness-search", no_search, "Disable the heuristic witness search");
  v14->callback([&] { rc = cmd_verify14(g, seed_independent, no_sylow, no_search); });

  auto* rp = app.add_subcommand("replay-appendix", "Replay the worked branch of the G6 case analysis");
  rp->callback([&] { rc = cmd_replay(g); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return rc;
}
