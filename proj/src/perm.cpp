#include "rv14/perm.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "rv14/error.hpp"

namespace rv14 {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) throw ParseError("permutation images are not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  Permutation p;
  p.images_ = std::move(img);
  return p;
}

Permutation Permutation::operator*(const Permutation& then) const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[i] = then.images_[images_[i]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
  return r;
}

Permutation Permutation::pow(long long e) const {
  const auto ord = static_cast<long long>(order());
  e %= ord;
  if (e < 0) e += ord;
  Permutation result = identity(degree());
  Permutation base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> lens;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

std::size_t Permutation::order() const {
  std::size_t ord = 1;
  for (auto len : cycle_type()) ord = std::lcm(ord, len);
  return ord;
}

std::size_t Permutation::fixed_points() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) c += images_[i] == i;
  return c;
}

std::vector<std::vector<Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    std::vector<Point> cyc;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      cyc.push_back(static_cast<Point>(j));
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::string Permutation::to_cycles() const {
  const auto cyc = cycles();
  if (cyc.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cyc) {
    os << '(';
    for (std::size_t k = 0; k < c.size(); ++k) os << (k ? "," : "") << c[k] + 1;
    os << ')';
  }
  return os.str();
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto v : p.images()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

Permutation parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<bool> used(degree, false);

  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) {
    throw ParseError("cycle notation '" + std::string(text) + "': " + what);
  };

  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    std::vector<Point> cyc;
    skip_ws();
    if (pos < text.size() && text[pos] == ')') {
      ++pos;
      skip_ws();
      continue;
    }
    while (true) {
      skip_ws();
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        fail("expected a point");
      std::size_t v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + static_cast<std::size_t>(text[pos] - '0');
        if (v > 1'000'000) fail("point out of range");
        ++pos;
      }
      if (v < 1 || v > degree) fail("point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
      if (used[v - 1]) fail("point " + std::to_string(v) + " repeated");
      used[v - 1] = true;
      cyc.push_back(static_cast<Point>(v - 1));
      skip_ws();
      if (pos >= text.size()) fail("unterminated cycle");
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      fail(std::string("unexpected character '") + text[pos] + "'");
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) img[cyc[k]] = cyc[(k + 1) % cyc.size()];
    skip_ws();
  }
  return Permutation(std::move(img));
}

PermGroup PermGroup::generate(std::vector<Permutation> generators, std::size_t degree,
                              std::size_t cap) {
  for (const auto& g : generators)
    if (g.degree() != degree) throw ParseError("generator degree mismatch");

  PermGroup grp;
  grp.degree_ = degree;
  grp.generators_ = std::move(generators);
  grp.elements_.push_back(Permutation::identity(degree));
  grp.index_.emplace(grp.elements_.back(), 0);

  for (std::size_t head = 0; head < grp.elements_.size(); ++head) {
    for (const auto& gen : grp.generators_) {
      Permutation y = grp.elements_[head] * gen;
      if (grp.index_.contains(y)) continue;
      if (grp.elements_.size() >= cap)
        throw CapExceeded("group closure exceeded " + std::to_string(cap) + " elements");
      grp.index_.emplace(y, grp.elements_.size());
      grp.elements_.push_back(std::move(y));
    }
  }
  return grp;
}

PermGroup generate(std::vector<Permutation> generators, std::size_t degree, std::size_t cap) {
  return PermGroup::generate(std::move(generators), degree, cap);
}

std::optional<std::size_t> PermGroup::index_of(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool PermGroup::contains(const PermGroup& sub) const {
  if (sub.degree() != degree_) return false;
  for (const auto& g : sub.generators())
    if (!contains(g)) return false;
  return true;
}

std::vector<std::vector<Point>> point_orbits(const PermGroup& g) {
  const std::size_t n = g.degree();
  std::vector<int> orbit_of(n, -1);
  std::vector<std::vector<Point>> out;
  for (std::size_t start = 0; start < n; ++start) {
    if (orbit_of[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<Point> orb{static_cast<Point>(start)};
    orbit_of[start] = id;
    for (std::size_t head = 0; head < orb.size(); ++head) {
      for (const auto& gen : g.generators()) {
        const Point y = gen(orb[head]);
        if (orbit_of[y] < 0) {
          orbit_of[y] = id;
          orb.push_back(y);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

bool is_transitive(const PermGroup& g) {
  return g.degree() > 0 && point_orbits(g).front().size() == g.degree();
}

bool is_cyclic(const PermGroup& g) {
  for (const auto& e : g.elements())
    if (e.order() == g.order()) return true;
  return false;
}

bool is_normal_in(const PermGroup& sub, const PermGroup& g) {
  for (const auto& h : g.generators()) {
    const Permutation h_inv = h.inverse();
    for (const auto& s : sub.generators())
      if (!sub.contains(h_inv * s * h)) return false;
  }
  return true;
}

namespace {

/// Greedy generating set: keeps each element not already generated.
std::vector<Permutation> small_generating_set(const PermGroup& grp) {
  std::vector<Permutation> gens;
  PermGroup current = PermGroup::generate({}, grp.degree());
  for (const auto& e : grp.elements()) {
    if (current.contains(e)) continue;
    gens.push_back(e);
    current = PermGroup::generate(gens, grp.degree());
    if (current.order() == grp.order()) break;
  }
  return gens;
}

PermGroup subgroup_from(const std::vector<Permutation>& gens, std::size_t degree) {
  return PermGroup::generate(small_generating_set(PermGroup::generate(gens, degree)), degree);
}

}  // namespace

PermGroup normal_closure(const Permutation& x, const PermGroup& g) {
  std::set<Permutation> conj;
  for (const auto& e : g.elements()) conj.insert(e.inverse() * x * e);
  std::vector<Permutation> gens;
  for (const auto& c : conj)
    if (!c.is_identity()) gens.push_back(c);
  return subgroup_from(gens, g.degree());
}

CosetTable coset_table(const PermGroup& g, const PermGroup& normal_sub) {
  CosetTable t;
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  t.coset_of.assign(g.order(), kUnset);
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (t.coset_of[i] != kUnset) continue;
    std::vector<std::size_t> members;
    for (const auto& n : normal_sub.elements()) {
      const auto idx = g.index_of(g.element(i) * n);
      if (!idx) throw WitnessError("subgroup is not contained in the group");
      members.push_back(*idx);
      t.coset_of[*idx] = t.members.size();
    }
    std::sort(members.begin(), members.end());
    t.members.push_back(std::move(members));
  }
  t.quotient_order = t.members.size();
  return t;
}

QuotientCertificate quotient_certificate(const PermGroup& g, const PermGroup& normal_sub) {
  const CosetTable table = coset_table(g, normal_sub);
  QuotientCertificate cert;
  cert.quotient_order = table.quotient_order;
  cert.generator_rep = Permutation::identity(g.degree());
  cert.max_element_order = 1;
  for (const auto& coset : table.members) {
    const Permutation& rep = g.element(coset.front());
    std::size_t k = 1;
    Permutation y = rep;
    while (!normal_sub.contains(y)) {
      y = y * rep;
      ++k;
    }
    if (k > cert.max_element_order) {
      cert.max_element_order = k;
      cert.generator_rep = rep;
    }
  }
  return cert;
}

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

bool is_power_of(std::uint64_t v, std::uint64_t p) {
  if (v == 0 || p < 2) return false;
  while (v % p == 0) v /= p;
  return v == 1;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d) continue;
    out.push_back(d);
    while (v % d == 0) v /= d;
  }
  if (v > 1) out.push_back(v);
  return out;
}

namespace {

PermGroup checked_subgroup(const PermGroup& g, const std::vector<Permutation>& gens,
                           const char* what) {
  for (const auto& x : gens)
    if (x.degree() != g.degree() || !g.contains(x))
      throw WitnessError(std::string(what) + " generator " + x.to_cycles() + " is not in the group");
  return PermGroup::generate(gens, g.degree());
}

}  // namespace

bool verify_psi_p(const PermGroup& g, const OliverWitness& w) {
  if (w.q) throw WitnessError("Psi_p witness must not carry q");
  const PermGroup p_sub = checked_subgroup(g, w.p_generators, "P");
  if (!is_prime(w.p) || !is_power_of(p_sub.order(), w.p)) return false;
  if (!is_normal_in(p_sub, g)) return false;
  return quotient_certificate(g, p_sub).cyclic();
}

bool verify_psi_pq(const PermGroup& g, const OliverWitness& w) {
  if (!w.q || !w.h_generators) throw WitnessError("Psi_p^q witness needs q and H generators");
  const PermGroup p_sub = checked_subgroup(g, w.p_generators, "P");
  const PermGroup h_sub = checked_subgroup(g, *w.h_generators, "H");
  if (!h_sub.contains(p_sub)) throw WitnessError("P is not contained in H");
  if (!is_prime(w.p) || !is_prime(*w.q)) return false;
  if (!is_power_of(p_sub.order(), w.p)) return false;
  if (!is_power_of(g.order() / h_sub.order(), *w.q)) return false;
  if (!is_normal_in(h_sub, g) || !is_normal_in(p_sub, h_sub)) return false;
  return quotient_certificate(h_sub, p_sub).cyclic();
}

std::optional<Permutation> verify_sylow_lemma(const PermGroup& g) {
  const std::size_t n = g.degree();
  if (n < 3 || !is_transitive(g)) return std::nullopt;
  const std::size_t p = n - 1;
  if (!is_prime(p) || g.order() % p != 0 || g.order() % (p * p) == 0) return std::nullopt;
  for (const auto& e : g.elements())
    if (e.order() == p && e.fixed_points() == 1) return e;
  return std::nullopt;
}

namespace {

/// Trivial group, normal closures of prime-power-order elements, and the
/// group itself; deduplicated, ascending by order.
std::vector<PermGroup> candidate_normal_subgroups(const PermGroup& g) {
  std::vector<PermGroup> out;
  std::set<std::vector<std::size_t>> seen_sets;
  auto add = [&](PermGroup sub) {
    std::vector<std::size_t> key;
    for (const auto& e : sub.elements()) key.push_back(*g.index_of(e));
    std::sort(key.begin(), key.end());
    if (seen_sets.insert(std::move(key)).second) out.push_back(std::move(sub));
  };
  add(PermGroup::generate({}, g.degree()));
  std::vector<bool> covered(g.order(), false);
  for (std::size_t i = 1; i < g.order(); ++i) {
    if (covered[i]) continue;
    const Permutation& x = g.element(i);
    for (const auto& e : g.elements()) covered[*g.index_of(e.inverse() * x * e)] = true;
    if (prime_factors(x.order()).size() != 1) continue;
    add(normal_closure(x, g));
  }
  add(PermGroup::generate(small_generating_set(g), g.degree()));
  std::stable_sort(out.begin(), out.end(),
                   [](const PermGroup& a, const PermGroup& b) { return a.order() < b.order(); });
  return out;
}

std::optional<unsigned> prime_base(std::uint64_t v) {
  const auto f = prime_factors(v);
  if (f.size() != 1) return std::nullopt;
  return static_cast<unsigned>(f.front());
}

}  // namespace

std::optional<OliverWitness> find_psi_p_witness(const PermGroup& g, std::optional<unsigned> only_p) {
  for (const auto& cand : candidate_normal_subgroups(g)) {
    std::optional<unsigned> p;
    if (cand.order() == 1) {
      p = only_p ? only_p : std::optional<unsigned>(2u);
    } else {
      p = prime_base(cand.order());
    }
    if (!p || (only_p && *p != *only_p)) continue;
    if (!quotient_certificate(g, cand).cyclic()) continue;
    OliverWitness w;
    w.p = *p;
    w.p_generators = small_generating_set(cand);
    return w;
  }
  return std::nullopt;
}

std::optional<OliverWitness> find_psi_pq_witness(const PermGroup& g, std::optional<unsigned> only_p,
                                                 std::optional<unsigned> only_q) {
  for (const auto& h_sub : candidate_normal_subgroups(g)) {
    const std::size_t index = g.order() / h_sub.order();
    std::optional<unsigned> q = index == 1 ? only_q : prime_base(index);
    if (!q || (only_q && *q != *only_q)) continue;
    for (const auto& p_sub : candidate_normal_subgroups(h_sub)) {
      std::optional<unsigned> p =
          p_sub.order() == 1 ? (only_p ? only_p : std::optional<unsigned>(2u)) : prime_base(p_sub.order());
      if (!p || (only_p && *p != *only_p)) continue;
      if (!quotient_certificate(h_sub, p_sub).cyclic()) continue;
      OliverWitness w;
      w.p = *p;
      w.q = *q;
      w.p_generators = small_generating_set(p_sub);
      w.h_generators = small_generating_set(h_sub);
      return w;
    }
  }
  return std::nullopt;
}

std::string_view to_string(ClassKind k) {
  switch (k) {
    case ClassKind::Cyclic: return "cyclic";
    case ClassKind::PsiP: return "psi_p";
    case ClassKind::PsiPQ: return "psi_pq";
    case ClassKind::SylowLemma: return "sylow_lemma";
    case ClassKind::Unresolved: return "unresolved";
  }
  return "unresolved";
}

Classification classify(const PermGroup& g, const std::optional<OliverWitness>& bundled,
                        const ClassifyOptions& opts) {
  Classification c;
  for (const auto& e : g.elements()) {
    if (e.order() == g.order()) {
      c.kind = ClassKind::Cyclic;
      c.source = "direct";
      c.element = e;
      return c;
    }
  }

  if (bundled) {
    const bool ok = bundled->q ? verify_psi_pq(g, *bundled) : verify_psi_p(g, *bundled);
    if (ok) {
      c.kind = bundled->q ? ClassKind::PsiPQ : ClassKind::PsiP;
      c.p = bundled->p;
      c.q = bundled->q.value_or(0);
      c.source = "bundled-witness";
      c.witness = bundled;
      return c;
    }
  }

  if (opts.use_sylow) {
    if (auto x = verify_sylow_lemma(g)) {
      c.kind = ClassKind::SylowLemma;
      c.p = static_cast<unsigned>(g.degree() - 1);
      c.source = "direct";
      c.element = std::move(x);
      return c;
    }
  }

  if (opts.use_search) {
    if (auto w = find_psi_p_witness(g)) {
      c.kind = ClassKind::PsiP;
      c.p = w->p;
      c.source = "witness-search";
      c.witness = std::move(w);
      return c;
    }
    if (auto w = find_psi_pq_witness(g)) {
      c.kind = ClassKind::PsiPQ;
      c.p = w->p;
      c.q = *w->q;
      c.source = "witness-search";
      c.witness = std::move(w);
      return c;
    }
  }
  c.source = "none";
  return c;
}

}  // namespace rv14
