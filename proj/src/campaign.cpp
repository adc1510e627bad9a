#include "rv14/campaign.hpp"

#include <sstream>

#include "rv14/error.hpp"

namespace rv14 {

using ojson = nlohmann::ordered_json;

Format parse_format(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "text") return Format::Text;
  throw ParseError("unknown format '" + std::string(s) + "'");
}

namespace {

ojson perm_list(const std::vector<Permutation>& v) {
  ojson a = ojson::array();
  for (const auto& p : v) a.push_back(p.to_cycles());
  return a;
}

}  // namespace

ojson to_json(const OliverWitness& w) {
  ojson j;
  j["p"] = w.p;
  if (w.q) j["q"] = *w.q;
  j["P"] = perm_list(w.p_generators);
  if (w.h_generators) j["H"] = perm_list(*w.h_generators);
  return j;
}

ojson to_json(const Classification& c) {
  ojson j;
  j["kind"] = std::string(to_string(c.kind));
  if (c.p) j["p"] = c.p;
  if (c.q) j["q"] = c.q;
  j["source"] = c.source;
  if (c.witness) j["witness"] = to_json(*c.witness);
  if (c.element) j["element"] = c.element->to_cycles();
  return j;
}

ojson to_json(const SearchReport& r) {
  ojson j;
  j["schedule"] = r.schedule;
  j["feasible_functions"] = r.survivor_count;
  j["verified"] = r.verified();
  j["nodes_explored"] = r.counters.nodes;
  j["cases_enumerated"] = r.counters.cases;
  j["prunes_by_conflict"] = r.counters.conflicts;
  j["prunes_by_chi"] = r.counters.chi_prunes;
  j["link_failures"] = r.counters.link_failures;
  j["cases_per_depth"] = r.cases_per_depth;
  return j;
}

ojson to_json(const SearchReport& r, const OrbitTable&) {
  ojson j = to_json(r);
  ojson f = ojson::array();
  for (const auto& a : r.feasible_functions) f.push_back(assignment_to_json(a));
  j["survivors"] = f;
  return j;
}

ojson to_json(const GroupVerdict& g) {
  ojson j;
  j["group"] = g.name;
  j["degree"] = g.degree;
  j["order_computed"] = g.order_computed;
  j["order_printed"] = g.order_printed ? ojson(*g.order_printed) : ojson(nullptr);
  if (g.order_in_proof) j["order_in_proof"] = *g.order_in_proof;
  j["transitive"] = g.transitive;
  j["classification"] = to_json(g.classification);
  j["method"] = g.method;
  j["verified"] = g.verified;
  j["discrepancies"] = g.discrepancies;
  j["witness_or_report"] = g.evidence;
  return j;
}

ojson to_json(const VerdictReport& r) {
  ojson j;
  j["tool_version"] = r.tool_version;
  j["data_digests"] = r.digests;
  ojson gs = ojson::array();
  for (const auto& g : r.groups) gs.push_back(to_json(g));
  j["groups"] = gs;
  ojson ss = ojson::array();
  for (const auto& s : r.searches) ss.push_back(to_json(s));
  j["searches"] = ss;
  j["verdict"] = r.verdict;
  return j;
}

ojson to_json(const ConjectureReport& r) {
  ojson j;
  j["n"] = r.n;
  j["monotone_functions"] = r.monotone_functions;
  j["weakly_symmetric_nontrivial"] = r.weakly_symmetric;
  j["elusive_weakly_symmetric"] = r.elusive_weakly_symmetric;
  j["counterexamples"] = r.counterexamples;
  j["non_elusive"] = r.non_elusive;
  j["non_elusive_chi_violations"] = r.non_elusive_chi_violations;
  j["negation_mismatches"] = r.negation_mismatches;
  j["passed"] = r.passed();
  return j;
}

ojson to_json(const RestrictionLemmaReport& r) {
  ojson j;
  j["samples"] = r.samples;
  j["applicable"] = r.applicable;
  j["violations"] = r.violations;
  j["remark_violations"] = r.remark_violations;
  j["subtree_violations"] = r.subtree_violations;
  j["passed"] = r.passed();
  return j;
}

namespace {

ojson diff_json(const OrbitSetDiff& d) {
  ojson j;
  j["missing"] = d.missing;
  j["extra"] = d.extra;
  return j;
}

}  // namespace

ojson to_json(const ReplayReport& r) {
  ojson j;
  ojson anchors = ojson::array();
  for (const auto& a : r.anchors)
    anchors.push_back({{"what", a.what}, {"printed", a.printed}, {"computed", a.computed}, {"match", a.match()}});
  j["anchors"] = anchors;
  ojson comb = ojson::array();
  for (const auto& c : r.combinations) {
    ojson row;
    row["k"] = c.k;
    row["computed"] = c.computed;
    row["printed"] = c.printed;
    row["match"] = c.match();
    comb.push_back(row);
  }
  j["combinations"] = comb;
  ojson steps = ojson::array();
  for (const auto& s : r.steps) {
    ojson st;
    st["step"] = s.step ? ojson(s.step) : ojson(nullptr);
    st["subgroup"] = s.subgroup;
    st["blocks"] = s.blocks;
    st["condition"] = s.condition;
    st["cases"] = s.cases.size();
    st["cases_printed"] = s.cases_printed ? ojson(*s.cases_printed) : ojson(nullptr);
    st["block_local_cases"] = s.block_local_cases ? ojson(*s.block_local_cases) : ojson(nullptr);
    ojson cs = ojson::array();
    for (const auto& c : s.cases) cs.push_back({{"true", c.trues}, {"false", c.falses}, {"chi", c.chi}});
    st["case_list"] = cs;
    st["followed"] = s.followed ? ojson(*s.followed) : ojson(nullptr);
    st["theta_true"] = s.theta_true;
    st["theta_false"] = s.theta_false;
    st["theta_true_diff"] = diff_json(s.true_diff);
    st["theta_false_diff"] = diff_json(s.false_diff);
    st["notes"] = s.notes;
    steps.push_back(st);
  }
  j["steps"] = steps;
  if (r.final_step) {
    const auto& f = *r.final_step;
    ojson fj;
    fj["chi"] = f.chi;
    fj["chi_link"] = f.chi_link;
    fj["chi_link_with_orbit_sizes"] = f.chi_link_printed_rule;
    fj["free_orbits"] = f.free_orbits;
    fj["free_orbit_sizes"] = f.free_sizes;
    fj["free_diff"] = diff_json(f.free_diff);
    ojson cs = ojson::array();
    for (const auto& c : f.cases)
      cs.push_back({{"true", c.trues}, {"false", c.falses}, {"chi", c.chi}, {"chi_link", c.chi_link}});
    fj["residual_cases"] = cs;
    fj["all_fail_link"] = f.all_fail_link();
    j["final"] = fj;
  }
  j["notes"] = r.notes;
  return j;
}

std::string emit(const VerdictReport& r, Format f) {
  if (f == Format::Json) return to_json(r).dump(2) + "\n";
  std::ostringstream os;
  for (const auto& g : r.groups) {
    os << g.name << "  order " << g.order_computed;
    if (g.order_printed && *g.order_printed != g.order_computed) os << " (printed " << *g.order_printed << ")";
    os << "  " << (g.transitive ? "transitive" : "intransitive") << "  method " << g.method << "  "
       << (g.verified ? "verified" : "NOT verified") << "\n";
    for (const auto& d : g.discrepancies) os << "    note: " << d << "\n";
  }
  for (const auto& s : r.searches)
    os << "search [" << s.schedule << "]  feasible " << s.survivor_count << "  nodes " << s.counters.nodes
       << "  cases " << s.counters.cases << "  chi prunes " << s.counters.chi_prunes << "  link failures "
       << s.counters.link_failures << "  " << s.wall_seconds << " s\n";
  os << "verdict: " << (r.verdict ? "all six groups verified" : "verification FAILED") << "\n";
  return os.str();
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : " ") + s;
  return out;
}

}  // namespace

std::string emit(const ReplayReport& r, Format f) {
  if (f == Format::Json) return to_json(r).dump(2) + "\n";
  std::ostringstream os;
  std::size_t matched = 0;
  for (const auto& a : r.anchors) matched += a.match();
  os << "anchors: " << matched << "/" << r.anchors.size() << " printed orbit indices reproduced\n";
  for (const auto& a : r.anchors)
    if (!a.match()) os << "  mismatch " << a.what << ": printed " << a.printed << ", computed " << a.computed << "\n";
  for (const auto& c : r.combinations)
    os << "combination row k=" << c.k << ": " << (c.match() ? "matches" : "differs") << "\n";
  for (const auto& s : r.steps) {
    os << (s.step ? "Step " + std::to_string(s.step) : std::string("(unprinted)")) << "  " << s.subgroup << "  blocks "
       << s.blocks << "  chi" << s.condition << "  cases " << s.cases.size();
    if (s.cases_printed) os << " (printed " << *s.cases_printed << ")";
    if (s.block_local_cases) os << "  block-local " << *s.block_local_cases;
    os << "\n";
    for (std::size_t i = 0; i < s.cases.size(); ++i)
      os << "    " << (s.followed && *s.followed == i ? "*" : " ") << " T[" << join(s.cases[i].trues) << "] F["
         << join(s.cases[i].falses) << "]\n";
    if (!s.true_diff.empty())
      os << "    theta_T differs: missing [" << join(s.true_diff.missing) << "] extra [" << join(s.true_diff.extra)
         << "]\n";
    if (!s.false_diff.empty())
      os << "    theta_F differs: missing [" << join(s.false_diff.missing) << "] extra ["
         << join(s.false_diff.extra) << "]\n";
    for (const auto& n : s.notes) os << "    note: " << n << "\n";
  }
  if (r.final_step) {
    const auto& fs = *r.final_step;
    os << "Step 7  chi " << fs.chi << "  chi(link x1) " << fs.chi_link << "  free " << fs.free_orbits.size() << " ["
       << join(fs.free_sizes) << "]\n";
    os << "    residual cases with chi 1: " << fs.cases.size() << ", " << (fs.all_fail_link() ? "all" : "not all")
       << " fail chi(link) = 1\n";
    for (const auto& c : fs.cases) os << "      T[" << join(c.trues) << "] chi(link) " << c.chi_link << "\n";
  }
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

ojson assignment_to_json(const TypeAssignment& a) {
  ojson arr = ojson::array();
  a.trues().for_each([&](std::size_t o) { arr.push_back({{"orbit", a.table().id(o).str()}, {"state", "T"}}); });
  a.falses().for_each([&](std::size_t o) { arr.push_back({{"orbit", a.table().id(o).str()}, {"state", "F"}}); });
  return arr;
}

TypeAssignment assignment_from_json(const nlohmann::json& j, const OrbitTable& t, const OrbitPoset& p) {
  TypeAssignment a(t, p);
  try {
    const nlohmann::json& states = j.is_array() ? j : j.at("states");
    std::optional<OrbitState> fallback;
    if (j.is_object() && j.contains("default")) {
      const auto d = j.at("default").get<std::string>();
      if (d != "T" && d != "F") throw ParseError("assignment default must be T or F");
      fallback = d == "T" ? OrbitState::True : OrbitState::False;
    }
    std::vector<char> seen(t.size(), 0);
    for (const auto& e : states) {
      const std::size_t o = t.flat(OrbitId::parse(e.at("orbit").get<std::string>()));
      const auto s = e.at("state").get<std::string>();
      if (s != "T" && s != "F") throw ParseError("orbit state must be T or F");
      if (seen[o]) throw ParseError("orbit " + t.id(o).str() + " listed twice");
      seen[o] = 1;
      a.set(o, s == "T" ? OrbitState::True : OrbitState::False);
    }
    if (fallback)
      for (std::size_t o = 0; o < t.size(); ++o)
        if (!seen[o]) a.set(o, *fallback);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("assignment: ") + e.what());
  } catch (const DataError& e) {
    throw ParseError(std::string("assignment: ") + e.what());
  }
  return a;
}

VerdictReport verify14(const CampaignOptions& opts) {
  VerdictReport rep;
  const std::string_view groups_text = opts.groups_text ? std::string_view(*opts.groups_text) : bundled_groups_text();
  rep.digests["groups"] = digest_hex(groups_text);
  rep.digests["subgroups"] = digest_hex(bundled_subgroups_text());
  rep.digests["appendix"] = digest_hex(bundled_appendix_text());

  const auto specs = parse_group_file(groups_text);
  std::vector<PermGroup> groups;
  for (const auto& s : specs) groups.push_back(build_group(s));
  std::vector<std::optional<OliverWitness>> witnesses;
  for (const auto& s : specs) witnesses.push_back(build_witness(s));

  const auto subgroup_specs = parse_group_file(bundled_subgroups_text());
  const std::string search_parent = "G6";

  rep.verdict = !specs.empty();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& spec = specs[i];
    const auto& g = groups[i];
    GroupVerdict v;
    v.name = spec.name;
    v.degree = g.degree();
    v.order_computed = g.order();
    v.order_printed = spec.order_printed;
    v.order_in_proof = spec.order_in_proof;
    v.transitive = is_transitive(g);
    if (spec.order_printed && *spec.order_printed != g.order())
      v.discrepancies.push_back("printed order " + std::to_string(*spec.order_printed) + ", computed " +
                                std::to_string(g.order()));
    if (spec.order_in_proof && *spec.order_in_proof != g.order())
      v.discrepancies.push_back("order stated in the proof " + std::to_string(*spec.order_in_proof) +
                                ", computed " + std::to_string(g.order()));
    for (const auto& e : spec.errata) v.discrepancies.push_back("erratum: " + e);
    if (!spec.printed_generators.empty()) {
      try {
        GroupSpec printed = spec;
        printed.generators = spec.printed_generators;
        const auto pg = build_group(printed);
        v.discrepancies.push_back("printed generators give order " + std::to_string(pg.order()) +
                                  (is_transitive(pg) ? ", transitive" : ", intransitive"));
      } catch (const Error& e) {
        v.discrepancies.push_back(std::string("printed generators rejected: ") + e.what());
      }
    }

    ClassifyOptions co;
    co.use_sylow = opts.use_sylow;
    co.use_search = opts.use_witness_search;
    try {
      v.classification = classify(g, witnesses[i], co);
    } catch (const WitnessError& e) {
      v.discrepancies.push_back(std::string("bundled witness invalid: ") + e.what());
      v.classification = classify(g, std::nullopt, co);
    }
    if (witnesses[i] && v.classification.source != "bundled-witness")
      v.discrepancies.push_back("bundled witness did not verify");
    v.method = std::string(to_string(v.classification.kind));
    v.verified = v.transitive && v.classification.kind != ClassKind::Unresolved;

    const auto& c = v.classification;
    if (c.witness) {
      ojson ev = to_json(*c.witness);
      const auto p = PermGroup::generate(c.witness->p_generators, g.degree());
      ev["P_order"] = p.order();
      if (c.witness->h_generators) {
        const auto h = PermGroup::generate(*c.witness->h_generators, g.degree());
        ev["H_order"] = h.order();
        ev["H_index"] = g.order() / h.order();
        ev["H_over_P_cyclic"] = quotient_certificate(h, p).cyclic();
      } else {
        ev["quotient_order"] = g.order() / p.order();
        ev["quotient_cyclic"] = quotient_certificate(g, p).cyclic();
      }
      v.evidence = ev;
    } else if (c.element) {
      v.evidence = {{"element", c.element->to_cycles()}, {"element_order", c.element->order()},
                    {"fixed_points", c.element->fixed_points()}};
    }

    if (c.kind == ClassKind::Unresolved && spec.name == search_parent && v.transitive) {
      auto ctx = make_context(g, subgroup_specs);
      std::vector<std::string> names{opts.schedule};
      if (opts.seed_independent)
        for (const auto& n : schedule_names())
          if (n != opts.schedule) {
            names.push_back(n);
            break;
          }
      SearchOptions so;
      so.jobs = opts.jobs;
      so.cap = opts.cap;
      bool ok = true;
      ojson runs = ojson::array();
      for (const auto& n : names) {
        auto r = run_search(*ctx, make_schedule(*ctx, n), so);
        ok = ok && r.verified();
        runs.push_back(to_json(r, ctx->table));
        rep.searches.push_back(std::move(r));
      }
      for (const auto& chk : ctx->checks)
        if (!chk.type_matches)
          v.discrepancies.push_back(chk.name + ": printed type " + chk.type_printed + ", classified " +
                                    std::string(to_string(chk.classification.kind)) + " p=" +
                                    std::to_string(chk.classification.p));
      v.method = "search";
      v.verified = ok;
      v.evidence = {{"orbits", ctx->table.size()}, {"searches", runs}};
    }
    rep.verdict = rep.verdict && v.verified;
    rep.groups.push_back(std::move(v));
  }
  return rep;
}

}  // namespace rv14
