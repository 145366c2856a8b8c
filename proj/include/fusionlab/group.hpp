#pragma once

// Finite groups given by Cayley tables, their subgroups and homomorphisms.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fusionlab/error.hpp"

namespace fusionlab {

using Elem = std::uint16_t;
inline constexpr Elem kNoElem = 0xFFFF;

/// Images of the points 0..n-1.
using Permutation = std::vector<std::uint16_t>;

struct Limits {
  std::size_t order = 1000;        // lattice-dependent operations
  std::size_t automorphisms = 256;  // Aut(S) enumeration
  std::size_t perm_points = 64;     // permutation inputs
};

const Limits& limits();
void set_limits(const Limits& l);

/// Dynamic bitset over the element indices of one group.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const { return universe_; }
  bool test(Elem x) const { return (words_[x >> 6] >> (x & 63)) & 1U; }
  void set(Elem x) { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
  void reset(Elem x) { words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63)); }

  std::size_t count() const;
  bool subset_of(const ElementSet& other) const;
  std::vector<Elem> members() const;
  std::size_t hash() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  ElementSet operator&(const ElementSet& o) const;
  ElementSet operator|(const ElementSet& o) const;
  bool operator==(const ElementSet& o) const = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
 public:
  /// Validates the table: square, entries in range, element 0 is the identity,
  /// every row and column a permutation, and associativity (Light's test over
  /// a generating set, which is exact).
  static GroupPtr from_table(std::vector<Elem> table, std::size_t order, std::string name,
                             std::vector<Permutation> perm_generators = {},
                             std::size_t degree = 0);
  static GroupPtr from_table(const std::vector<std::vector<Elem>>& rows, std::string name);

  /// Breadth-first closure from the generators in input order; element i*g is
  /// discovered in queue order. The product a*b applies a first, then b.
  static GroupPtr from_permutations(std::size_t degree, const std::vector<Permutation>& generators,
                                    std::string name, bool check_point_cap = true);

  std::size_t order() const { return order_; }
  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const { return table_[std::size_t{a} * order_ + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  /// g x g^-1
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inverse_[g]); }
  Elem commutator(Elem x, Elem y) const { return mul(mul(inv(x), inv(y)), mul(x, y)); }
  Elem power(Elem x, long long k) const;
  unsigned elem_order(Elem x) const { return elem_orders_[x]; }
  const std::string& name() const { return name_; }
  const std::vector<Elem>& table() const { return table_; }

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& perm_generators() const { return perm_generators_; }
  /// Element indices of the input permutation generators (empty for table input).
  const std::vector<Elem>& generator_elements() const { return generator_elements_; }
  /// Permutation of element x when the group was built from permutations.
  std::optional<Permutation> permutation_of(Elem x) const;
  std::optional<Elem> element_of(const Permutation& perm) const;

  /// FNV-1a over the Cayley table.
  std::uint64_t content_hash() const;
  bool same_table(const FiniteGroup& other) const { return order_ == other.order_ && table_ == other.table_; }

  // Lattice cache (element sets in canonical order). Filled at most once.
  const std::vector<ElementSet>* cached_lattice() const;
  void store_lattice(std::vector<ElementSet> lattice) const;

 private:
  FiniteGroup() = default;
  void finish_construction();

  std::size_t order_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<unsigned> elem_orders_;
  std::string name_;
  std::size_t degree_ = 0;
  std::vector<Permutation> perm_generators_;
  std::vector<Elem> generator_elements_;
  std::vector<Permutation> element_perms_;

  mutable std::mutex lattice_mutex_;
  mutable std::shared_ptr<const std::vector<ElementSet>> lattice_;
};

/// A subgroup of a fixed parent group, stored both as a bitset and as the
/// sorted list of member indices.
class Subgroup {
 public:
  Subgroup() = default;
  /// Checks identity, closure and Lagrange; throws NotASubgroup otherwise.
  static Subgroup checked(GroupPtr parent, const ElementSet& members);
  /// Caller guarantees that `members` is a subgroup.
  Subgroup(GroupPtr parent, ElementSet members);

  const GroupPtr& parent() const { return parent_; }
  const FiniteGroup& group() const { return *parent_; }
  const ElementSet& bits() const { return bits_; }
  const std::vector<Elem>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(Elem x) const { return bits_.test(x); }
  bool is_trivial() const { return elements_.size() == 1; }
  bool is_whole() const { return elements_.size() == parent_->order(); }
  bool subset_of(const Subgroup& o) const { return bits_.subset_of(o.bits_); }
  bool same_parent(const Subgroup& o) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.bits_ == b.bits_; }

 private:
  GroupPtr parent_;
  ElementSet bits_;
  std::vector<Elem> elements_;
};

/// Sorted by order, then by the sorted member lists.
bool canonical_less(const Subgroup& a, const Subgroup& b);
bool canonical_less(const ElementSet& a, const ElementSet& b);

struct SubgroupHash {
  std::size_t operator()(const Subgroup& s) const { return s.bits().hash(); }
};

/// An injective homomorphism (or an arbitrary map while being validated)
/// stored as a table indexed by elements of the domain's parent group.
class GroupMorphism {
 public:
  GroupMorphism() = default;
  GroupMorphism(Subgroup domain, Subgroup codomain, std::vector<Elem> images);

  static GroupMorphism identity(const Subgroup& P);
  static GroupMorphism inclusion(const Subgroup& P, const Subgroup& R);
  /// x -> g x g^-1 on P; g and P live in the same parent.
  static GroupMorphism conjugation(const Subgroup& P, Elem g, const Subgroup& codomain);

  const Subgroup& domain() const { return domain_; }
  const Subgroup& codomain() const { return codomain_; }
  const std::vector<Elem>& table() const { return images_; }
  Elem operator()(Elem x) const { return images_[x]; }

  Subgroup image() const;
  Subgroup image_of(const Subgroup& P) const;
  GroupMorphism restrict_to(const Subgroup& P) const;
  GroupMorphism with_codomain(const Subgroup& R) const;
  /// Inverse of the induced isomorphism domain -> image, with codomain the original domain.
  GroupMorphism inverse() const;

  bool is_homomorphism() const;
  bool is_injective() const;
  bool is_identity_map() const;
  /// Same domain and the same images on it.
  bool same_map(const GroupMorphism& o) const;
  /// Canonical order: domain, then images listed in domain order.
  friend std::strong_ordering compare_maps(const GroupMorphism& a, const GroupMorphism& b);
  friend bool operator==(const GroupMorphism& a, const GroupMorphism& b) { return a.same_map(b); }

 private:
  Subgroup domain_;
  Subgroup codomain_;
  std::vector<Elem> images_;
};

/// outer ∘ inner; inner's image must lie in outer's domain.
GroupMorphism compose(const GroupMorphism& outer, const GroupMorphism& inner);
bool morphism_less(const GroupMorphism& a, const GroupMorphism& b);
/// Sort canonically and drop duplicate maps.
void canonicalize(std::vector<GroupMorphism>& maps);

// ---------------------------------------------------------------------------
// Subgroup construction and standard subgroups.

Subgroup whole_group(const GroupPtr& G);
Subgroup trivial_subgroup(const GroupPtr& G);
Subgroup generate(const GroupPtr& G, std::span<const Elem> gens);
Subgroup generate(const GroupPtr& G, std::initializer_list<Elem> gens);
/// ⟨A ∪ {extra}⟩ starting from A's elements.
Subgroup extend(const Subgroup& A, Elem extra);
Subgroup join(const Subgroup& A, const Subgroup& B);
Subgroup intersect(const Subgroup& A, const Subgroup& B);
Subgroup conjugate(const Subgroup& Q, Elem g);
/// Set of elements g with g Q g^-1 ≤ R, restricted to `within`.
std::vector<Elem> transporter(const Subgroup& Q, const Subgroup& R, const Subgroup& within);

Subgroup center(const Subgroup& H);
Subgroup centralizer(const Subgroup& within, const Subgroup& Q);
Subgroup normalizer(const Subgroup& within, const Subgroup& Q);
Subgroup derived_subgroup(const Subgroup& H);
Subgroup normal_closure(const Subgroup& within, const Subgroup& Q);
/// Largest normal p-subgroup of H.
Subgroup o_p(const Subgroup& H, unsigned p);
/// Largest normal subgroup of H of order prime to p.
Subgroup o_p_prime(const Subgroup& H, unsigned p);
/// ⟨x ∈ P : x^p = 1⟩; throws NotAPGroup unless P is a p-group.
Subgroup omega1(const Subgroup& P, unsigned p);

bool is_normal(const Subgroup& N, const Subgroup& H);
bool is_abelian(const Subgroup& H);
bool is_p_group(std::size_t order, unsigned p);
bool is_prime(unsigned n);
std::size_t p_part(std::size_t n, unsigned p);

enum class StandardKind { Center, Centralizer, Normalizer, Derived, Op, OpPrime, Omega1 };

/// Dispatch front end over the functions above. `within` defaults to G,
/// `q` is required for Centralizer/Normalizer, `p` for the p-local kinds.
Subgroup standard_subgroup(const GroupPtr& G, StandardKind kind,
                           const std::optional<Subgroup>& within = std::nullopt,
                           const std::optional<Subgroup>& q = std::nullopt, unsigned p = 0);

// ---------------------------------------------------------------------------
// Lattices, Sylow subgroups, quotients.

/// Every subgroup of G exactly once, canonical order. Cached per group.
std::vector<Subgroup> subgroup_lattice(const GroupPtr& G);
/// Subgroups of H (canonical order), computed by the same cyclic-extension method.
std::vector<Subgroup> subgroups_of(const Subgroup& H);
/// First Sylow p-subgroup of H in canonical lattice order.
Subgroup sylow(const Subgroup& H, unsigned p);
Subgroup sylow(const GroupPtr& G, unsigned p);

/// H as a standalone group; element i of the result is the i-th smallest member of H.
struct ExtractedGroup {
  GroupPtr group;
  GroupPtr parent;
  std::vector<Elem> to_parent;    // result index -> parent index
  std::vector<Elem> from_parent;  // parent index -> result index (kNoElem outside H)
  Subgroup lift(const Subgroup& K) const;   // subgroup of `group` -> subgroup of parent
  Subgroup lower(const Subgroup& K) const;  // subgroup of parent inside H -> subgroup of `group`
};
ExtractedGroup extract(const Subgroup& H, std::string name = {});

/// Cosets are numbered by their smallest member, in increasing order.
struct QuotientGroup {
  GroupPtr group;
  std::vector<Elem> projection;  // element of G -> coset index
  Subgroup kernel;
  Subgroup image_of(const Subgroup& K) const;
  Subgroup preimage(const Subgroup& K) const;
};
QuotientGroup quotient_group(const GroupPtr& G, const Subgroup& N);

// ---------------------------------------------------------------------------
// Isomorphism, automorphisms and sections.

/// Greedy generating set: repeatedly adjoin the first element of largest order
/// outside the current subgroup.
std::vector<Elem> small_generating_set(const Subgroup& H);

struct IsomorphismResult {
  bool isomorphic = false;
  std::optional<GroupMorphism> witness;  // whole G -> whole H
};
IsomorphismResult is_isomorphic(const GroupPtr& G, const GroupPtr& H);
/// Subgroup form: an isomorphism A -> B where A and B may live in different parents.
std::optional<GroupMorphism> find_isomorphism(const Subgroup& A, const Subgroup& B);

/// Aut(S) as explicit maps; throws OrderCapExceeded above limits().automorphisms.
std::vector<GroupMorphism> automorphisms(const GroupPtr& S);
std::vector<GroupMorphism> automorphisms(const Subgroup& S);

struct Section {
  Subgroup B;
  Subgroup A;
};
struct InvolvementResult {
  bool involved = false;
  std::optional<Section> witness;
};
/// True iff some A ⊴ B ≤ G has B/A ≅ H.
InvolvementResult is_involved(const GroupPtr& H, const GroupPtr& G);

/// A whole group from a set of permutations (closure), used for Aut groups.
GroupPtr group_from_permutations(std::size_t degree, const std::vector<Permutation>& gens,
                                 std::string name);

}  // namespace fusionlab
