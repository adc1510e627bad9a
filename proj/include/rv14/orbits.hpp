#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rv14/orbit_set.hpp"
#include "rv14/perm.hpp"

namespace rv14 {

/// Subset of variables x1..xn; bit i-1 is set iff x_i is in the subset.
using Mask = std::uint32_t;

/// Builds a mask from 1-based points.
Mask mask_of(std::initializer_list<int> points);
Mask mask_of(std::span<const int> points);
/// Sorted 1-based points of a mask.
std::vector<int> points_of(Mask m);
std::string mask_to_string(Mask m);

/// Image of the subset under the permutation.
Mask act(const Permutation& p, Mask m);

/// True iff a's sorted point tuple precedes b's lexicographically.
/// Only meaningful for masks of equal size.
bool lex_less(Mask a, Mask b);

/// Orbit coordinate: subset size and position within that level.
struct OrbitId {
  int level = 0;
  int index = 0;
  friend auto operator<=>(const OrbitId&, const OrbitId&) = default;
  /// "k.j"
  std::string str() const;
  /// Parses "k.j"; throws ParseError.
  static OrbitId parse(std::string_view text);
};

/// Orbits of all subsets of {x1..xn} under a permutation group.
///
/// Orbits are numbered by a flat index: levels in increasing subset size,
/// and within a level by the lexicographically smallest sorted point tuple
/// among the members. Flat index 0 is the orbit of the empty set.
class OrbitTable {
 public:
  static constexpr std::size_t kMaxDegree = 20;

  OrbitTable() = default;
  /// Throws DataError for degree above kMaxDegree.
  explicit OrbitTable(const PermGroup& g);

  std::size_t degree() const { return degree_; }
  std::size_t group_order() const { return group_order_; }
  bool transitive() const { return transitive_; }

  std::size_t size() const { return orbit_level_.size(); }
  std::size_t level_begin(int k) const { return level_offset_[static_cast<std::size_t>(k)]; }
  std::size_t level_count(int k) const {
    return level_offset_[static_cast<std::size_t>(k) + 1] - level_offset_[static_cast<std::size_t>(k)];
  }

  int level(std::size_t flat) const { return orbit_level_[flat]; }
  OrbitId id(std::size_t flat) const;
  /// Throws DataError for an id outside the table.
  std::size_t flat(OrbitId id) const;
  std::size_t orbit_of(Mask m) const { return orbit_of_[m]; }
  OrbitId id_of(Mask m) const { return id(orbit_of(m)); }

  /// Members in increasing mask order.
  std::span<const Mask> members(std::size_t flat) const;
  std::size_t orbit_size(std::size_t flat) const { return members(flat).size(); }
  /// Lexicographically smallest member.
  Mask representative(std::size_t flat) const { return representative_[flat]; }
  /// Members containing x1.
  std::size_t containing_first(std::size_t flat) const { return containing_first_[flat]; }

  std::size_t empty_orbit() const { return 0; }
  std::size_t full_orbit() const { return size() - 1; }

 private:
  std::size_t degree_ = 0;
  std::size_t group_order_ = 0;
  bool transitive_ = false;
  std::vector<std::uint32_t> orbit_of_;  // indexed by mask
  std::vector<int> orbit_level_;
  std::vector<std::size_t> level_offset_;
  std::vector<std::size_t> member_offset_;
  std::vector<Mask> member_list_;
  std::vector<Mask> representative_;
  std::vector<std::size_t> containing_first_;
};

/// Inclusion order between orbits: A <= B iff some member of B contains some
/// member of A.
class OrbitPoset {
 public:
  OrbitPoset() = default;
  explicit OrbitPoset(const OrbitTable& t);

  std::size_t size() const { return lower_.size(); }
  /// Orbits below or equal to o.
  const OrbitSet& lower(std::size_t o) const { return lower_[o]; }
  /// Orbits above or equal to o.
  const OrbitSet& upper(std::size_t o) const { return upper_[o]; }
  bool leq(std::size_t a, std::size_t b) const { return lower_[b].test(a); }
  /// One-step incidences (a, b): some member of b minus one point lies in a.
  std::span<const std::pair<std::size_t, std::size_t>> cover_edges() const { return edges_; }

 private:
  std::vector<OrbitSet> lower_;
  std::vector<OrbitSet> upper_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

}  // namespace rv14
