#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "rv14/complex.hpp"
#include "rv14/orbits.hpp"
#include "rv14/perm.hpp"

namespace rv14 {

/// A subcube: variables in `assigned` are fixed, to 1 where `values` has a bit.
struct Restriction {
  Mask assigned = 0;
  Mask values = 0;  // subset of assigned
};

enum class Monotonicity { None, NonIncreasing, NonDecreasing };

/// Explicit truth table over subsets of {x1..xn}; bit i-1 of the input is x_i.
class BooleanFunction {
 public:
  static constexpr std::size_t kMaxArity = 20;

  BooleanFunction() = default;
  /// `table` has 2^n entries. Throws DataError on a size mismatch.
  BooleanFunction(std::size_t n, std::vector<std::uint8_t> table, Monotonicity m = Monotonicity::None);

  /// f(x) = 1 iff x is a face, i.e. lies in a TRUE orbit.
  static BooleanFunction from_assignment(const TypeAssignment& a);
  static BooleanFunction from_complex(const ExplicitComplex& c);

  std::size_t arity() const { return n_; }
  Monotonicity monotonicity() const { return mono_; }
  bool operator()(Mask x) const { return table_[x] != 0; }
  std::span<const std::uint8_t> table() const { return table_; }

  /// The opposite function 1 - f.
  BooleanFunction negated() const;
  /// f with x_v fixed to `value` (1-based v), as a function of the same n
  /// variables that ignores x_v.
  BooleanFunction restricted(int v, bool value) const;
  bool is_constant() const;

  /// Scans the whole table.
  bool check_monotone_non_increasing() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> table_;
  Monotonicity mono_ = Monotonicity::None;
};

/// Constancy on a subcube by full scan.
bool is_constant_scan(const BooleanFunction& f, const Restriction& r);
/// Constancy from the two extreme completions; requires a monotone f.
bool is_constant_monotone(const BooleanFunction& f, const Restriction& r);

struct Query {
  int variable = 0;  // 1-based
  bool answer = false;
};

/// Exact decision-tree depth by minimax over restrictions, memoized in a
/// table of 3^n entries. Owns its memo; not thread-safe.
class DepthOracle {
 public:
  static constexpr std::size_t kMaxArity = 14;

  /// Throws DataError when the arity exceeds kMaxArity.
  explicit DepthOracle(const BooleanFunction& f);

  int depth() { return depth(Restriction{}); }
  int depth(const Restriction& r);
  /// Optimal queries against answers that keep the remaining depth maximal,
  /// followed until the function is constant.
  std::vector<Query> adversary_path();
  std::size_t states_evaluated() const { return evaluated_; }

 private:
  int solve(Mask assigned, Mask values, std::uint32_t index);
  bool constant(Mask assigned, Mask values) const;

  const BooleanFunction& f_;
  std::size_t n_;
  Mask full_;
  std::vector<std::uint32_t> pow3_;
  std::vector<std::int8_t> memo_;
  std::size_t evaluated_ = 0;
};

int decision_tree_depth(const BooleanFunction& f);
bool is_elusive(const BooleanFunction& f);
/// Plain recursion with scan-based constancy; exponential, for cross-checks.
int depth_unmemoized(const BooleanFunction& f, const Restriction& r = {});

struct ConjectureReport {
  std::size_t n = 0;
  std::size_t monotone_functions = 0;
  std::size_t weakly_symmetric = 0;  // nontrivial, transitive invariance group
  std::size_t elusive_weakly_symmetric = 0;
  std::size_t counterexamples = 0;  // weakly symmetric with D(f) < n
  std::size_t non_elusive = 0;      // all monotone f with D(f) < n
  std::size_t non_elusive_chi_violations = 0;  // f(empty) = 1, D(f) < n, chi != 1
  std::size_t negation_mismatches = 0;         // D(f) != D(1 - f)
  bool passed() const {
    return counterexamples == 0 && non_elusive_chi_violations == 0 && negation_mismatches == 0;
  }
};

/// Every monotone non-increasing f on n <= 5 variables. Throws DataError for larger n.
ConjectureReport exhaustive_conjecture_check(std::size_t n);
/// Down-sets of the subset lattice on n <= 5 points, as truth tables.
std::vector<BooleanFunction> all_monotone_functions(std::size_t n);
/// All sigma with f(sigma(x)) = f(x); scans n! permutations.
PermGroup invariance_group(const BooleanFunction& f);

struct RestrictionLemmaReport {
  std::size_t samples = 0;
  std::size_t applicable = 0;          // some f_{x_a=1} elusive
  std::size_t violations = 0;          // f_{x_a=1} elusive but f not
  std::size_t remark_violations = 0;   // elusive for some a but not all
  std::size_t subtree_violations = 0;  // D(f) < 1 + D(f_{x_a=1}) for non-constant f
  bool passed() const { return violations == 0 && remark_violations == 0 && subtree_violations == 0; }
};

/// Samples G-invariant monotone functions (degree <= 8) and checks the
/// restriction lemma on each.
RestrictionLemmaReport restriction_lemma_check(const PermGroup& g, std::size_t samples, std::uint64_t seed);

}  // namespace rv14
