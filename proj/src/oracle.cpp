#include "rv14/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "rv14/error.hpp"

namespace rv14 {

BooleanFunction::BooleanFunction(std::size_t n, std::vector<std::uint8_t> table, Monotonicity m)
    : n_(n), table_(std::move(table)), mono_(m) {
  if (n > kMaxArity) throw DataError("boolean functions limited to " + std::to_string(kMaxArity) + " variables");
  if (table_.size() != (std::size_t{1} << n)) throw DataError("truth table size does not match arity");
}

BooleanFunction BooleanFunction::from_assignment(const TypeAssignment& a) {
  if (!a.fully_assigned()) throw IndeterminateFace("boolean function needs a fully assigned type assignment");
  const auto& t = a.table();
  std::vector<std::uint8_t> tab(std::size_t{1} << t.degree());
  for (Mask m = 0; m < tab.size(); ++m) tab[m] = a.is_true(m) ? 1 : 0;
  return BooleanFunction(t.degree(), std::move(tab), Monotonicity::NonIncreasing);
}

BooleanFunction BooleanFunction::from_complex(const ExplicitComplex& c) {
  std::vector<std::uint8_t> tab(std::size_t{1} << c.degree, 0);
  for (Mask f : c.faces) tab[f] = 1;
  return BooleanFunction(c.degree, std::move(tab),
                         is_downward_closed(c) ? Monotonicity::NonIncreasing : Monotonicity::None);
}

BooleanFunction BooleanFunction::negated() const {
  std::vector<std::uint8_t> tab(table_.size());
  for (std::size_t i = 0; i < tab.size(); ++i) tab[i] = table_[i] ? 0 : 1;
  Monotonicity m = Monotonicity::None;
  if (mono_ == Monotonicity::NonIncreasing) m = Monotonicity::NonDecreasing;
  if (mono_ == Monotonicity::NonDecreasing) m = Monotonicity::NonIncreasing;
  return BooleanFunction(n_, std::move(tab), m);
}

BooleanFunction BooleanFunction::restricted(int v, bool value) const {
  if (v < 1 || static_cast<std::size_t>(v) > n_) throw DataError("variable out of range");
  const Mask bit = Mask{1} << (v - 1);
  std::vector<std::uint8_t> tab(table_.size());
  for (Mask m = 0; m < tab.size(); ++m) tab[m] = table_[value ? (m | bit) : (m & ~bit)];
  return BooleanFunction(n_, std::move(tab), mono_);
}

bool BooleanFunction::is_constant() const {
  return std::all_of(table_.begin(), table_.end(), [&](std::uint8_t x) { return x == table_[0]; });
}

bool BooleanFunction::check_monotone_non_increasing() const {
  for (Mask m = 0; m < table_.size(); ++m) {
    if (!table_[m]) continue;
    for (Mask rest = m; rest; rest &= rest - 1)
      if (!table_[m & ~(rest & (~rest + 1))]) return false;
  }
  return true;
}

bool is_constant_scan(const BooleanFunction& f, const Restriction& r) {
  const Mask full = static_cast<Mask>((std::uint64_t{1} << f.arity()) - 1);
  const Mask free = full & ~r.assigned;
  const bool first = f(r.values);
  // Enumerate sub-masks of the free variables.
  for (Mask s = free;; s = (s - 1) & free) {
    if (f(r.values | s) != first) return false;
    if (s == 0) break;
  }
  return true;
}

bool is_constant_monotone(const BooleanFunction& f, const Restriction& r) {
  const Mask full = static_cast<Mask>((std::uint64_t{1} << f.arity()) - 1);
  return f(r.values) == f(r.values | (full & ~r.assigned));
}

DepthOracle::DepthOracle(const BooleanFunction& f) : f_(f), n_(f.arity()) {
  if (n_ > kMaxArity) throw DataError("decision-tree depth limited to " + std::to_string(kMaxArity) + " variables");
  full_ = static_cast<Mask>((std::uint64_t{1} << n_) - 1);
  pow3_.resize(n_ + 1);
  pow3_[0] = 1;
  for (std::size_t i = 1; i <= n_; ++i) pow3_[i] = pow3_[i - 1] * 3;
  memo_.assign(pow3_[n_], -1);
}

bool DepthOracle::constant(Mask assigned, Mask values) const {
  const Restriction r{assigned, values};
  if (f_.monotonicity() == Monotonicity::None) return is_constant_scan(f_, r);
  return is_constant_monotone(f_, r);
}

int DepthOracle::solve(Mask assigned, Mask values, std::uint32_t index) {
  auto& slot = memo_[index];
  if (slot >= 0) return slot;
  ++evaluated_;
  if (constant(assigned, values)) return slot = 0;
  int best = static_cast<int>(n_);
  for (Mask rest = full_ & ~assigned; rest; rest &= rest - 1) {
    const int i = std::countr_zero(rest);
    const Mask bit = Mask{1} << i;
    const std::uint32_t base = index - 2 * pow3_[static_cast<std::size_t>(i)];
    const int d0 = solve(assigned | bit, values, base);
    if (d0 + 1 >= best) continue;
    const int d1 = solve(assigned | bit, values | bit, base + pow3_[static_cast<std::size_t>(i)]);
    best = std::min(best, 1 + std::max(d0, d1));
  }
  return slot = static_cast<std::int8_t>(best);
}

int DepthOracle::depth(const Restriction& r) {
  if ((r.values & ~r.assigned) != 0 || (r.assigned & ~full_) != 0) throw DataError("malformed restriction");
  std::uint32_t index = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    const Mask bit = Mask{1} << i;
    index += pow3_[i] * ((r.assigned & bit) ? ((r.values & bit) ? 1u : 0u) : 2u);
  }
  return solve(r.assigned, r.values, index);
}

std::vector<Query> DepthOracle::adversary_path() {
  std::vector<Query> path;
  Restriction r;
  int d = depth(r);
  while (d > 0) {
    // The first variable achieving the optimum; the answer keeps depth d - 1.
    bool moved = false;
    for (std::size_t i = 0; i < n_ && !moved; ++i) {
      const Mask bit = Mask{1} << i;
      if (r.assigned & bit) continue;
      const Restriction r0{r.assigned | bit, r.values};
      const Restriction r1{r.assigned | bit, r.values | bit};
      const int d0 = depth(r0);
      const int d1 = depth(r1);
      if (1 + std::max(d0, d1) != d) continue;
      const bool answer = d1 >= d0;
      path.push_back({static_cast<int>(i) + 1, answer});
      r = answer ? r1 : r0;
      d = std::max(d0, d1);
      moved = true;
    }
    if (!moved) throw Error("adversary path: no optimal query found");
  }
  return path;
}

int decision_tree_depth(const BooleanFunction& f) {
  DepthOracle o(f);
  return o.depth();
}

bool is_elusive(const BooleanFunction& f) { return decision_tree_depth(f) == static_cast<int>(f.arity()); }

int depth_unmemoized(const BooleanFunction& f, const Restriction& r) {
  if (is_constant_scan(f, r)) return 0;
  const Mask full = static_cast<Mask>((std::uint64_t{1} << f.arity()) - 1);
  int best = static_cast<int>(f.arity());
  for (Mask rest = full & ~r.assigned; rest; rest &= rest - 1) {
    const Mask bit = rest & (~rest + 1);
    const int d0 = depth_unmemoized(f, {r.assigned | bit, r.values});
    const int d1 = depth_unmemoized(f, {r.assigned | bit, r.values | bit});
    best = std::min(best, 1 + std::max(d0, d1));
  }
  return best;
}

std::vector<BooleanFunction> all_monotone_functions(std::size_t n) {
  if (n > 5) throw DataError("monotone enumeration limited to n <= 5");
  const std::size_t size = std::size_t{1} << n;
  std::vector<Mask> order(size);
  std::iota(order.begin(), order.end(), Mask{0});
  std::stable_sort(order.begin(), order.end(), [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });

  std::vector<BooleanFunction> out;
  std::vector<std::uint8_t> tab(size, 0);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == size) {
      out.emplace_back(n, tab, Monotonicity::NonIncreasing);
      return;
    }
    const Mask m = order[pos];
    bool allowed = true;
    for (Mask rest = m; rest && allowed; rest &= rest - 1)
      if (!tab[m & ~(rest & (~rest + 1))]) allowed = false;
    if (m == 0) allowed = true;
    tab[m] = 0;
    self(self, pos + 1);
    if (allowed) {
      tab[m] = 1;
      self(self, pos + 1);
      tab[m] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

PermGroup invariance_group(const BooleanFunction& f) {
  const std::size_t n = f.arity();
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<Permutation> keep;
  do {
    const Permutation p(img);
    bool ok = true;
    for (Mask m = 0; m < (Mask{1} << n) && ok; ++m)
      if (f(act(p, m)) != f(m)) ok = false;
    if (ok && !p.is_identity()) keep.push_back(p);
  } while (std::next_permutation(img.begin(), img.end()));
  return PermGroup::generate(std::move(keep), n);
}

ConjectureReport exhaustive_conjecture_check(std::size_t n) {
  if (n == 0 || n > 5) throw DataError("exhaustive check supports 1 <= n <= 5");
  ConjectureReport rep;
  rep.n = n;
  for (const auto& f : all_monotone_functions(n)) {
    rep.monotone_functions++;
    const int d = decision_tree_depth(f);
    if (decision_tree_depth(f.negated()) != d) rep.negation_mismatches++;
    const bool elusive = d == static_cast<int>(n);
    if (!elusive) {
      rep.non_elusive++;
      if (f(0)) {
        ExplicitComplex c;
        c.degree = n;
        for (Mask m = 0; m < (Mask{1} << n); ++m)
          if (f(m)) c.faces.push_back(m);
        if (euler(c) != 1) rep.non_elusive_chi_violations++;
      }
    }
    if (f.is_constant()) continue;
    if (!is_transitive(invariance_group(f))) continue;
    rep.weakly_symmetric++;
    if (elusive)
      rep.elusive_weakly_symmetric++;
    else
      rep.counterexamples++;
  }
  return rep;
}

RestrictionLemmaReport restriction_lemma_check(const PermGroup& g, std::size_t samples, std::uint64_t seed) {
  if (g.degree() > 8) throw DataError("restriction lemma check limited to degree 8");
  const OrbitTable table(g);
  const OrbitPoset poset(table);
  std::mt19937_64 rng(seed);
  const int n = static_cast<int>(g.degree());
  RestrictionLemmaReport rep;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto a = random_monotone(table, poset, rng, s % 10 != 0);
    const auto f = BooleanFunction::from_assignment(a);
    DepthOracle o(f);
    const int d = o.depth();
    rep.samples++;
    std::size_t elusive_links = 0;
    for (int v = 0; v < n; ++v) {
      const Mask bit = Mask{1} << v;
      const int dl = o.depth({bit, bit});
      if (dl == n - 1) elusive_links++;
      if (d > 0 && d < 1 + dl) rep.subtree_violations++;
    }
    if (elusive_links > 0) {
      rep.applicable++;
      if (d != n) rep.violations++;
      if (is_transitive(g) && elusive_links != static_cast<std::size_t>(n)) rep.remark_violations++;
    }
  }
  return rep;
}

}  // namespace rv14
