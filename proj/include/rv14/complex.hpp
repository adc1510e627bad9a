#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "rv14/orbit_set.hpp"
#include "rv14/orbits.hpp"
#include "rv14/perm.hpp"

namespace rv14 {

enum class OrbitState : std::uint8_t { Free, True, False };

/// Per-orbit TRUE/FALSE/FREE states of a (partial) monotone non-increasing
/// G-invariant boolean function. TRUE orbits are faces of the complex.
/// Holds non-owning pointers to its table and poset, which must outlive it.
class TypeAssignment {
 public:
  TypeAssignment() = default;
  TypeAssignment(const OrbitTable& table, const OrbitPoset& poset);

  const OrbitTable& table() const { return *table_; }
  const OrbitPoset& poset() const { return *poset_; }

  OrbitState state(std::size_t orbit) const;
  /// Sets one orbit without closing over the poset.
  void set(std::size_t orbit, OrbitState s);

  const OrbitSet& trues() const { return true_; }
  const OrbitSet& falses() const { return false_; }
  OrbitSet frees() const;

  /// Marks every orbit in `orbits` TRUE (resp. FALSE). Returns false when
  /// that contradicts an existing state; the assignment is then unusable.
  bool add_trues(const OrbitSet& orbits);
  bool add_falses(const OrbitSet& orbits);

  bool fully_assigned() const { return true_.count() + false_.count() == table_->size(); }
  bool is_true(Mask m) const { return true_.test(table_->orbit_of(m)); }

  friend bool operator==(const TypeAssignment& a, const TypeAssignment& b) {
    return a.true_ == b.true_ && a.false_ == b.false_;
  }

 private:
  const OrbitTable* table_ = nullptr;
  const OrbitPoset* poset_ = nullptr;
  OrbitSet true_;
  OrbitSet false_;
};

/// No TRUE orbit has a FALSE orbit below it (equivalently no FALSE orbit has
/// a TRUE orbit above it) and no orbit is both.
bool is_monotone(const TypeAssignment& a);

/// Counts of faces per size: r[k] for k = 0..n. r[0] is 1 when the empty
/// face is present.
using RVector = std::vector<std::uint64_t>;

/// Faces are TRUE orbits; FREE orbits are counted as absent.
RVector r_vector(const TypeAssignment& a);

/// Alternating sum over nonempty faces. Throws IndeterminateFace if any
/// orbit is FREE.
std::int64_t euler(const TypeAssignment& a);
/// Same sum, treating FREE orbits as absent.
std::int64_t euler_of_trues(const TypeAssignment& a);

/// A complex given by its face list (masks, sorted, empty face included when
/// present) over n vertices.
struct ExplicitComplex {
  std::size_t degree = 0;
  std::vector<Mask> faces;
};

ExplicitComplex faces_of(const TypeAssignment& a);
RVector r_vector(const ExplicitComplex& c);
std::int64_t euler(const ExplicitComplex& c);
bool is_downward_closed(const ExplicitComplex& c);

/// Faces containing x_v, with x_v removed. `v` is 1-based. The result lives
/// on the same vertex set; x_v itself never occurs in it.
ExplicitComplex link(const TypeAssignment& a, int v);
ExplicitComplex link(const ExplicitComplex& c, int v);
/// Faces avoiding x_v. `v` is 1-based.
ExplicitComplex deletion(const TypeAssignment& a, int v);
ExplicitComplex deletion(const ExplicitComplex& c, int v);

/// Euler characteristic of the link at x_v without building it: for a
/// transitive group a TRUE level-k orbit O contributes (-1)^k * k|O|/n.
/// Throws IndeterminateFace on FREE orbits, DataError for intransitive
/// groups.
std::int64_t link_euler_fast(const TypeAssignment& a, int v);

/// Delta^H: faces are sets of H's variable-orbits (blocks) whose union is a
/// face of Delta. Face bit j refers to blocks[j].
struct FixedPointComplex {
  std::vector<std::vector<Point>> blocks;
  std::vector<std::uint32_t> faces;  // nonempty block sets, ascending
  std::int64_t euler = 0;
};

/// Throws IndeterminateFace if any block union lies in a FREE orbit.
FixedPointComplex fixed_point_complex(const TypeAssignment& a, const PermGroup& sub);

/// Linear form for chi(Delta^H) on a fixed orbit table: chi = sum of
/// coefficient[o] over TRUE orbits o. `governed` lists the orbits that
/// contain some nonempty union of blocks.
struct FixedPointProfile {
  std::vector<std::vector<Point>> blocks;
  std::vector<std::int32_t> coefficient;  // padded to a multiple of 64
  OrbitSet governed;
};

/// Requires sub to have at most 24 blocks.
FixedPointProfile fixed_point_profile(const OrbitTable& t, const PermGroup& sub);
/// Profile of chi(Link(Delta, x1)), built from members containing x1.
FixedPointProfile link_profile(const OrbitTable& t);
/// Dispatches to the masked-sum kernel. `trues` must come from the same table.
std::int64_t profile_euler(const FixedPointProfile& p, const OrbitSet& trues);

/// A random fully assigned monotone assignment. With `nontrivial`, the empty
/// orbit is TRUE and the full orbit FALSE.
TypeAssignment random_monotone(const OrbitTable& t, const OrbitPoset& poset, std::mt19937_64& rng,
                               bool nontrivial = true);

}  // namespace rv14
