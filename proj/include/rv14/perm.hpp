#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rv14 {

/// Points are 0-based internally; everything parsed or printed is 1-based.
using Point = std::uint16_t;

/// A bijection on {0..n-1}. Products read left to right: (a * b)(i) = b(a(i)).
class Permutation {
 public:
  Permutation() = default;
  /// Throws ParseError unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point i) const { return images_[i]; }
  std::span<const Point> images() const { return images_; }

  Permutation operator*(const Permutation& then) const;
  Permutation inverse() const;
  Permutation pow(long long e) const;

  bool is_identity() const;
  /// lcm of the cycle lengths.
  std::size_t order() const;
  std::size_t fixed_points() const;
  /// Sorted cycle lengths, fixed points included as 1s.
  std::vector<std::size_t> cycle_type() const;
  /// Nontrivial cycles, each starting at its least point.
  std::vector<std::vector<Point>> cycles() const;
  /// 1-based cycle notation, "()" for the identity.
  std::string to_cycles() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/// Parses a product of disjoint cycles such as "(1,2,3)(4,5)" over points 1..n.
/// Empty text (or "()") is the identity.
Permutation parse_cycles(std::string_view text, std::size_t degree);

/// A finite permutation group with its full element list materialized.
/// Element 0 is always the identity; the rest follow breadth-first
/// multiplication order, so the listing is a deterministic function of the
/// generator sequence.
class PermGroup {
 public:
  static constexpr std::size_t kDefaultCap = 1'000'000;

  PermGroup() = default;

  /// Closes the generators under multiplication. Throws CapExceeded when
  /// more than `cap` elements appear.
  static PermGroup generate(std::vector<Permutation> generators, std::size_t degree,
                            std::size_t cap = kDefaultCap);

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  std::span<const Permutation> generators() const { return generators_; }
  std::span<const Permutation> elements() const { return elements_; }
  const Permutation& element(std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> index_of(const Permutation& p) const;
  bool contains(const Permutation& p) const { return index_of(p).has_value(); }
  bool contains(const PermGroup& sub) const;

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
};

PermGroup generate(std::vector<Permutation> generators, std::size_t degree,
                   std::size_t cap = PermGroup::kDefaultCap);

/// Orbits of the group on points, each sorted, listed by least point.
std::vector<std::vector<Point>> point_orbits(const PermGroup& g);
bool is_transitive(const PermGroup& g);
bool is_cyclic(const PermGroup& g);

/// True iff `sub` (a subgroup of g) is normalized by every generator of g.
bool is_normal_in(const PermGroup& sub, const PermGroup& g);
/// Smallest normal subgroup of g containing x.
PermGroup normal_closure(const Permutation& x, const PermGroup& g);

/// Left-coset table of a normal subgroup: coset id per element of g.
struct CosetTable {
  std::size_t quotient_order = 0;
  std::vector<std::size_t> coset_of;              // indexed like g.elements()
  std::vector<std::vector<std::size_t>> members;  // sorted element indices
};
CosetTable coset_table(const PermGroup& g, const PermGroup& normal_sub);

/// Largest order of an element in g / N, with the representative achieving
/// it. The quotient is cyclic iff that order equals |g| / |N|.
struct QuotientCertificate {
  std::size_t quotient_order = 0;
  std::size_t max_element_order = 0;
  Permutation generator_rep;
  bool cyclic() const { return max_element_order == quotient_order; }
};
QuotientCertificate quotient_certificate(const PermGroup& g, const PermGroup& normal_sub);

bool is_prime(std::uint64_t v);
/// True iff v is a power of p (p^0 = 1 included).
bool is_power_of(std::uint64_t v, std::uint64_t p);
std::vector<std::uint64_t> prime_factors(std::uint64_t v);

/// Certificate for membership in an Oliver class: Psi_p when `q` is empty,
/// Psi_p^q otherwise.
struct OliverWitness {
  unsigned p = 0;
  std::optional<unsigned> q;
  std::vector<Permutation> p_generators;
  std::optional<std::vector<Permutation>> h_generators;
};

/// P normal in G, |P| a p-power, G/P cyclic.
/// Throws WitnessError if a P generator lies outside G.
bool verify_psi_p(const PermGroup& g, const OliverWitness& w);
/// P normal in H normal in G, |P| a p-power, |G/H| a q-power, H/P cyclic.
/// Throws WitnessError for elements outside G or P not inside H.
bool verify_psi_pq(const PermGroup& g, const OliverWitness& w);

/// For a transitive group of degree p+1 with p prime and p exactly dividing
/// |G|: an element of order p fixing one point and cycling the rest.
std::optional<Permutation> verify_sylow_lemma(const PermGroup& g);

/// Bounded witness search over normal closures of prime-power elements.
std::optional<OliverWitness> find_psi_p_witness(const PermGroup& g,
                                                std::optional<unsigned> only_p = {});
std::optional<OliverWitness> find_psi_pq_witness(const PermGroup& g,
                                                 std::optional<unsigned> only_p = {},
                                                 std::optional<unsigned> only_q = {});

enum class ClassKind { Cyclic, PsiP, PsiPQ, SylowLemma, Unresolved };

std::string_view to_string(ClassKind k);

struct Classification {
  ClassKind kind = ClassKind::Unresolved;
  unsigned p = 0;
  unsigned q = 0;
  /// "direct", "bundled-witness" or "witness-search".
  std::string source;
  std::optional<OliverWitness> witness;
  /// Generator for Cyclic, the p-element for SylowLemma.
  std::optional<Permutation> element;
};

struct ClassifyOptions {
  bool use_sylow = true;
  bool use_search = true;
};

/// Tries, in order: cyclic test, the bundled witness, the Sylow lemma,
/// heuristic witness search.
Classification classify(const PermGroup& g, const std::optional<OliverWitness>& bundled,
                        const ClassifyOptions& opts = {});

}  // namespace rv14
