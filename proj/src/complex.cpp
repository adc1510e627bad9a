#include "rv14/complex.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "rv14/error.hpp"
#include "rv14/kernels.hpp"

namespace rv14 {

namespace {

std::int64_t sign_for_size(int k) { return (k % 2 == 1) ? 1 : -1; }  // (-1)^(k+1)

std::size_t padded(std::size_t n) { return (n + 63) / 64 * 64; }

void check_vertex(std::size_t degree, int v) {
  if (v < 1 || static_cast<std::size_t>(v) > degree)
    throw DataError("vertex x" + std::to_string(v) + " outside 1.." + std::to_string(degree));
}

}  // namespace

TypeAssignment::TypeAssignment(const OrbitTable& table, const OrbitPoset& poset)
    : table_(&table), poset_(&poset), true_(table.size()), false_(table.size()) {}

OrbitState TypeAssignment::state(std::size_t orbit) const {
  if (true_.test(orbit)) return OrbitState::True;
  if (false_.test(orbit)) return OrbitState::False;
  return OrbitState::Free;
}

void TypeAssignment::set(std::size_t orbit, OrbitState s) {
  true_.reset(orbit);
  false_.reset(orbit);
  if (s == OrbitState::True) true_.set(orbit);
  if (s == OrbitState::False) false_.set(orbit);
}

bool TypeAssignment::add_trues(const OrbitSet& orbits) {
  true_ |= orbits;
  return !true_.intersects(false_);
}

bool TypeAssignment::add_falses(const OrbitSet& orbits) {
  false_ |= orbits;
  return !true_.intersects(false_);
}

OrbitSet TypeAssignment::frees() const {
  OrbitSet f(table_->size());
  for (std::size_t o = 0; o < table_->size(); ++o)
    if (!true_.test(o) && !false_.test(o)) f.set(o);
  return f;
}

bool is_monotone(const TypeAssignment& a) {
  if (a.trues().intersects(a.falses())) return false;
  bool ok = true;
  a.trues().for_each([&](std::size_t o) {
    if (a.poset().lower(o).intersects(a.falses())) ok = false;
  });
  a.falses().for_each([&](std::size_t o) {
    if (a.poset().upper(o).intersects(a.trues())) ok = false;
  });
  return ok;
}

RVector r_vector(const TypeAssignment& a) {
  const auto& t = a.table();
  RVector r(t.degree() + 1, 0);
  a.trues().for_each([&](std::size_t o) { r[static_cast<std::size_t>(t.level(o))] += t.orbit_size(o); });
  return r;
}

std::int64_t euler_of_trues(const TypeAssignment& a) {
  const RVector r = r_vector(a);
  std::int64_t chi = 0;
  for (std::size_t k = 1; k < r.size(); ++k) chi += sign_for_size(static_cast<int>(k)) * static_cast<std::int64_t>(r[k]);
  return chi;
}

std::int64_t euler(const TypeAssignment& a) {
  if (!a.fully_assigned()) throw IndeterminateFace("euler: assignment has FREE orbits");
  return euler_of_trues(a);
}

ExplicitComplex faces_of(const TypeAssignment& a) {
  ExplicitComplex c;
  c.degree = a.table().degree();
  a.trues().for_each([&](std::size_t o) {
    const auto m = a.table().members(o);
    c.faces.insert(c.faces.end(), m.begin(), m.end());
  });
  std::sort(c.faces.begin(), c.faces.end());
  return c;
}

RVector r_vector(const ExplicitComplex& c) {
  RVector r(c.degree + 1, 0);
  for (Mask f : c.faces) r[static_cast<std::size_t>(std::popcount(f))]++;
  return r;
}

std::int64_t euler(const ExplicitComplex& c) {
  std::int64_t chi = 0;
  for (Mask f : c.faces)
    if (f) chi += sign_for_size(std::popcount(f));
  return chi;
}

bool is_downward_closed(const ExplicitComplex& c) {
  for (Mask f : c.faces) {
    Mask rest = f;
    while (rest) {
      const Mask bit = rest & (~rest + 1);
      if (!std::binary_search(c.faces.begin(), c.faces.end(), f & ~bit)) return false;
      rest &= rest - 1;
    }
  }
  return true;
}

ExplicitComplex link(const ExplicitComplex& c, int v) {
  check_vertex(c.degree, v);
  const Mask bit = Mask{1} << (v - 1);
  ExplicitComplex out;
  out.degree = c.degree;
  for (Mask f : c.faces)
    if (f & bit) out.faces.push_back(f & ~bit);
  std::sort(out.faces.begin(), out.faces.end());
  return out;
}

ExplicitComplex deletion(const ExplicitComplex& c, int v) {
  check_vertex(c.degree, v);
  const Mask bit = Mask{1} << (v - 1);
  ExplicitComplex out;
  out.degree = c.degree;
  for (Mask f : c.faces)
    if (!(f & bit)) out.faces.push_back(f);
  return out;
}

ExplicitComplex link(const TypeAssignment& a, int v) {
  if (!a.fully_assigned()) throw IndeterminateFace("link: assignment has FREE orbits");
  return link(faces_of(a), v);
}

ExplicitComplex deletion(const TypeAssignment& a, int v) {
  if (!a.fully_assigned()) throw IndeterminateFace("deletion: assignment has FREE orbits");
  return deletion(faces_of(a), v);
}

std::int64_t link_euler_fast(const TypeAssignment& a, int v) {
  const auto& t = a.table();
  check_vertex(t.degree(), v);
  if (!t.transitive()) throw DataError("link_euler_fast needs a transitive group");
  if (!a.fully_assigned()) throw IndeterminateFace("link_euler_fast: assignment has FREE orbits");
  const auto n = static_cast<std::int64_t>(t.degree());
  std::int64_t chi = 0;
  a.trues().for_each([&](std::size_t o) {
    const int k = t.level(o);
    if (k < 2) return;
    // Faces of size k through x_v, i.e. link faces of size k-1.
    const std::int64_t through = k * static_cast<std::int64_t>(t.orbit_size(o)) / n;
    chi += (k % 2 == 0 ? 1 : -1) * through;
  });
  return chi;
}

FixedPointComplex fixed_point_complex(const TypeAssignment& a, const PermGroup& sub) {
  const auto& t = a.table();
  if (sub.degree() != t.degree()) throw DataError("subgroup degree does not match the orbit table");
  FixedPointComplex fp;
  fp.blocks = point_orbits(sub);
  const std::size_t m = fp.blocks.size();
  if (m > 24) throw DataError("fixed-point complex limited to 24 blocks");
  std::vector<Mask> block_mask(m, 0);
  for (std::size_t j = 0; j < m; ++j)
    for (Point p : fp.blocks[j]) block_mask[j] |= Mask{1} << p;

  for (std::uint32_t s = 1; s < (std::uint32_t{1} << m); ++s) {
    Mask u = 0;
    for (std::size_t j = 0; j < m; ++j)
      if ((s >> j) & 1u) u |= block_mask[j];
    switch (a.state(t.orbit_of(u))) {
      case OrbitState::Free:
        throw IndeterminateFace("block union " + mask_to_string(u) + " lies in free orbit " +
                                t.id_of(u).str());
      case OrbitState::True:
        fp.faces.push_back(s);
        fp.euler += sign_for_size(std::popcount(s));
        break;
      case OrbitState::False: break;
    }
  }
  return fp;
}

FixedPointProfile fixed_point_profile(const OrbitTable& t, const PermGroup& sub) {
  if (sub.degree() != t.degree()) throw DataError("subgroup degree does not match the orbit table");
  FixedPointProfile p;
  p.blocks = point_orbits(sub);
  const std::size_t m = p.blocks.size();
  if (m > 24) throw DataError("fixed-point profile limited to 24 blocks");
  p.coefficient.assign(padded(t.size()), 0);
  p.governed = OrbitSet(t.size());

  std::vector<Mask> block_mask(m, 0);
  for (std::size_t j = 0; j < m; ++j)
    for (Point q : p.blocks[j]) block_mask[j] |= Mask{1} << q;
  // Gray-code walk over nonempty block sets.
  Mask u = 0;
  for (std::uint32_t i = 1; i < (std::uint32_t{1} << m); ++i) {
    const auto flip = static_cast<std::size_t>(std::countr_zero(i));
    u ^= block_mask[flip];
    const std::uint32_t gray = i ^ (i >> 1);
    const std::size_t o = t.orbit_of(u);
    p.coefficient[o] += static_cast<std::int32_t>(sign_for_size(std::popcount(gray)));
    p.governed.set(o);
  }
  return p;
}

FixedPointProfile link_profile(const OrbitTable& t) {
  FixedPointProfile p;
  p.coefficient.assign(padded(t.size()), 0);
  p.governed = OrbitSet(t.size());
  for (std::size_t o = 0; o < t.size(); ++o) {
    const int k = t.level(o);
    if (t.containing_first(o) == 0) continue;
    p.governed.set(o);
    if (k >= 2)
      p.coefficient[o] = static_cast<std::int32_t>((k % 2 == 0 ? 1 : -1) *
                                                   static_cast<std::int64_t>(t.containing_first(o)));
  }
  return p;
}

std::int64_t profile_euler(const FixedPointProfile& p, const OrbitSet& trues) {
  return kernels::masked_sum(p.coefficient, trues.words());
}

TypeAssignment random_monotone(const OrbitTable& t, const OrbitPoset& poset, std::mt19937_64& rng,
                               bool nontrivial) {
  TypeAssignment a(t, poset);
  auto make_true = [&](std::size_t o) { poset.lower(o).for_each([&](std::size_t x) { a.set(x, OrbitState::True); }); };
  auto make_false = [&](std::size_t o) { poset.upper(o).for_each([&](std::size_t x) { a.set(x, OrbitState::False); }); };
  if (nontrivial) {
    make_true(t.empty_orbit());
    make_false(t.full_orbit());
  }
  std::vector<std::size_t> order(t.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double p_true = 0.2 + 0.6 * unit(rng);
  for (auto o : order) {
    if (a.state(o) != OrbitState::Free) continue;
    if (unit(rng) < p_true)
      make_true(o);
    else
      make_false(o);
  }
  return a;
}

}  // namespace rv14
