#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rv14/complex.hpp"
#include "rv14/data.hpp"
#include "rv14/orbits.hpp"
#include "rv14/perm.hpp"

namespace rv14 {

/// Required value of chi(Delta^H): exactly `value`, or `value` mod `modulus`.
struct ChiCondition {
  enum class Kind { Exact, Mod };
  Kind kind = Kind::Exact;
  std::int64_t value = 1;
  std::int64_t modulus = 0;

  static ChiCondition exact(std::int64_t v) { return {Kind::Exact, v, 0}; }
  static ChiCondition mod(std::int64_t q, std::int64_t v = 1) { return {Kind::Mod, v, q}; }

  bool holds(std::int64_t chi) const;
  /// "=1" or "=1 mod q"
  std::string str() const;
};

/// Exact(1) for cyclic, Psi_p and Sylow-lemma groups; Mod(q) for Psi_p^q.
/// Throws DataError for Unresolved.
ChiCondition condition_for(const Classification& c);

struct SubgroupCheck {
  std::string name;
  PermGroup group;
  FixedPointProfile profile;
  Classification classification;
  ChiCondition condition;
  std::string type_printed;
  /// Our classification agrees with the printed type column.
  bool type_matches = true;
  std::size_t blocks() const { return profile.blocks.size(); }
};

/// Everything the search reads. Immutable once built.
struct SearchContext {
  PermGroup group;
  OrbitTable table;
  OrbitPoset poset;
  std::vector<SubgroupCheck> checks;
  FixedPointProfile link;

  SearchContext() = default;
  SearchContext(const SearchContext&) = delete;
  SearchContext& operator=(const SearchContext&) = delete;

  const SubgroupCheck& check(std::string_view name) const;
};

/// Classifies each subgroup (bundled witness first, then witness search)
/// and builds its fixed-point profile. Throws DataError if a subgroup is
/// not contained in `group` or cannot be classified.
std::unique_ptr<SearchContext> make_context(const PermGroup& group, const std::vector<GroupSpec>& subgroups);
/// G6 with its eleven bundled subgroups.
std::unique_ptr<SearchContext> make_g6_context();

/// An ordered list of indices into SearchContext::checks.
struct Schedule {
  std::string name;
  std::vector<std::size_t> order;
};

/// "fewest-blocks" (default), "most-blocks" or "table-order". The identity
/// subgroup always comes last. Throws ParseError for an unknown name.
Schedule make_schedule(const SearchContext& ctx, std::string_view name);
std::vector<std::string> schedule_names();

struct SearchState {
  TypeAssignment assignment;
  std::size_t depth = 0;
  std::int64_t chi = 0;       // alternating face count over TRUE orbits
  std::int64_t chi_link = 0;  // chi of the link at x1 over TRUE orbits
};

/// All FREE, then the nontriviality constraints: empty set TRUE, full set FALSE.
SearchState initial_state(const SearchContext& ctx);

/// Sets `orbit` to `value` and closes Lower (TRUE) or Upper (FALSE).
/// Returns nullopt on conflict.
std::optional<SearchState> propagate(const SearchContext& ctx, const SearchState& s, std::size_t orbit,
                                     OrbitState value);

struct SearchCounters {
  std::uint64_t nodes = 0;
  std::uint64_t cases = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t chi_prunes = 0;
  std::uint64_t link_failures = 0;
  SearchCounters& operator+=(const SearchCounters& o);
};

struct EnumerateOptions {
  std::uint64_t cap = std::uint64_t{1} << 20;  // leaves per call
  bool bound_pruning = true;
};

/// All completions of the FREE orbits governed by `check` that survive
/// propagation and satisfy its chi condition, in depth-first order over
/// canonical orbit index with TRUE tried first. Throws CapExceeded.
std::vector<SearchState> enumerate_cases(const SearchContext& ctx, const SearchState& s,
                                         const SubgroupCheck& check, SearchCounters& counters,
                                         const EnumerateOptions& opts = {});

struct SearchOptions {
  bool link_check = true;
  std::uint64_t cap = std::uint64_t{1} << 20;
  unsigned jobs = 1;
  /// Survivors kept in the report; the count is always exact.
  std::size_t keep_survivors = 64;
  /// Called on every node reached after a schedule entry; for sampling.
  std::function<void(const SearchState&)> on_node;
};

struct SearchReport {
  std::string schedule;
  std::uint64_t survivor_count = 0;
  std::vector<TypeAssignment> feasible_functions;  // first keep_survivors
  SearchCounters counters;
  std::vector<std::uint64_t> cases_per_depth;
  double wall_seconds = 0.0;
  bool verified() const { return survivor_count == 0; }
};

SearchReport run_search(const SearchContext& ctx, const Schedule& schedule, const SearchOptions& opts = {});
/// Same, starting from a given state (for forced or partial runs).
SearchReport run_search_from(const SearchContext& ctx, const Schedule& schedule, const SearchState& start,
                             const SearchOptions& opts = {});

}  // namespace rv14
