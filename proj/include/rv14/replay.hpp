#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rv14/search.hpp"

namespace rv14 {

/// A printed orbit index checked against the one recomputed from its points.
struct AnchorCheck {
  std::string what;
  std::string printed;
  std::string computed;
  bool match() const { return printed == computed; }
};

struct OrbitSetDiff {
  std::vector<std::string> missing;  // printed, not computed
  std::vector<std::string> extra;    // computed, not printed
  bool empty() const { return missing.empty() && extra.empty(); }
};

struct CaseSummary {
  std::vector<std::string> trues;   // governed orbits set TRUE by the case
  std::vector<std::string> falses;  // governed orbits set FALSE by the case
  std::int64_t chi = 0;             // chi of the fixed-point complex
};

struct TraceStep {
  int step = 0;  // 0 when the step is not printed
  std::string subgroup;
  std::size_t blocks = 0;
  std::string condition;
  std::vector<CaseSummary> cases;
  std::optional<std::size_t> cases_printed;
  std::optional<std::size_t> followed;
  /// Cases counted on the block lattice alone, ignoring inclusions between
  /// orbits that are not block unions.
  std::optional<std::size_t> block_local_cases;
  std::vector<std::string> theta_true;
  std::vector<std::string> theta_false;
  OrbitSetDiff true_diff;
  OrbitSetDiff false_diff;
  std::vector<std::string> notes;
};

struct ResidualCase {
  std::vector<std::string> trues;
  std::vector<std::string> falses;
  std::int64_t chi = 0;
  std::int64_t chi_link = 0;
};

struct FinalStep {
  std::int64_t chi = 0;       // TRUE orbits only, before the residual enumeration
  std::int64_t chi_link = 0;  // same, link at x1
  std::int64_t chi_link_printed_rule = 0;  // with |O| in place of members through x1
  std::vector<std::string> free_orbits;
  /// Per free orbit: "id a/b" with a = size, b = members containing x1.
  std::vector<std::string> free_sizes;
  std::vector<ResidualCase> cases;  // residual completions with chi = 1
  OrbitSetDiff free_diff;
  bool all_fail_link() const;
};

struct CombinationRow {
  int k = 0;
  std::vector<std::pair<std::string, int>> computed;
  std::vector<std::pair<std::string, int>> printed;
  bool match() const { return computed == printed; }
};

struct ReplayReport {
  std::vector<AnchorCheck> anchors;
  std::vector<CombinationRow> combinations;
  std::vector<TraceStep> steps;
  std::optional<FinalStep> final_step;
  std::vector<std::string> notes;

  const TraceStep* printed_step(int step) const;
};

/// Expands "a.b~a.c" ranges into individual ids.
std::vector<std::string> expand_orbit_ranges(const std::vector<std::string>& ids);

/// Assignments of the FREE governed orbits whose fixed-point family is
/// closed under taking sub-block-sets and meets the chi condition, without
/// propagating through the orbit poset. Empty when more than `max_free`
/// orbits are free.
std::optional<std::size_t> block_local_cases(const SearchContext& ctx, const SearchState& s,
                                             const SubgroupCheck& check, std::size_t max_free = 20);

/// Follows the printed branch of the G6 case analysis through the default
/// schedule. Unprinted checks are applied only when they leave a single
/// case; the final step is evaluated on the resulting state. Throws DataError if `ctx` lacks the bundled subgroups.
ReplayReport replay_appendix(const SearchContext& ctx);

}  // namespace rv14
