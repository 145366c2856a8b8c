#include "fusionlab/group.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace fusionlab {

namespace {

Limits g_limits;
std::mutex g_limits_mutex;

struct PermHash {
  std::size_t operator()(const Permutation& p) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : p) h = (h ^ v) * 1099511628211ULL;
    return h;
  }
};

// a*b applies a first, then b.
Permutation perm_product(const Permutation& a, const Permutation& b) {
  Permutation r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

bool is_bijection(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  for (auto v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::NotAPGroup: return "NotAPGroup";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotSylow: return "NotSylow";
    case ErrorCode::ObjectOutsideS: return "ObjectOutsideS";
    case ErrorCode::MorphismNotInF: return "MorphismNotInF";
    case ErrorCode::NotGenerated: return "NotGenerated";
    case ErrorCode::NotCentric: return "NotCentric";
    case ErrorCode::ModelValidationFailed: return "ModelValidationFailed";
    case ErrorCode::NotNormalInF: return "NotNormalInF";
    case ErrorCode::CarrierMismatch: return "CarrierMismatch";
    case ErrorCode::JoinNotNormal: return "JoinNotNormal";
    case ErrorCode::ChainConditionViolated: return "ChainConditionViolated";
    case ErrorCode::UnsupportedPrime: return "UnsupportedPrime";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::SylowMismatch: return "SylowMismatch";
    case ErrorCode::SandwichViolated: return "SandwichViolated";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CacheCorrupt: return "CacheCorrupt";
  }
  return "Unknown";
}

const Limits& limits() {
  std::lock_guard lock(g_limits_mutex);
  return g_limits;
}

void set_limits(const Limits& l) {
  std::lock_guard lock(g_limits_mutex);
  g_limits = l;
}

// ---------------------------------------------------------------------------
// ElementSet

std::size_t ElementSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool ElementSet::subset_of(const ElementSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

std::vector<Elem> ElementSet::members() const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto w = words_[i];
    while (w) {
      int b = std::countr_zero(w);
      out.push_back(static_cast<Elem>(i * 64 + static_cast<std::size_t>(b)));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t ElementSet::hash() const {
  std::size_t h = 1469598103934665603ULL ^ universe_;
  for (auto w : words_) h = (h ^ w) * 1099511628211ULL;
  return h;
}

ElementSet ElementSet::operator&(const ElementSet& o) const {
  ElementSet r(universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
  return r;
}

ElementSet ElementSet::operator|(const ElementSet& o) const {
  ElementSet r(universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] | o.words_[i];
  return r;
}

bool canonical_less(const ElementSet& a, const ElementSet& b) {
  auto ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  const auto& wa = a.words();
  const auto& wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    auto diff = wa[i] ^ wb[i];
    if (diff) {
      auto bit = std::uint64_t{1} << std::countr_zero(diff);
      return (wa[i] & bit) != 0;
    }
  }
  return false;
}

bool canonical_less(const Subgroup& a, const Subgroup& b) { return canonical_less(a.bits(), b.bits()); }

// ---------------------------------------------------------------------------
// FiniteGroup

GroupPtr FiniteGroup::from_table(std::vector<Elem> table, std::size_t order, std::string name,
                                 std::vector<Permutation> perm_generators, std::size_t degree) {
  if (order == 0 || table.size() != order * order)
    throw Error(ErrorCode::NonAssociative, "Cayley table is not square");
  if (order > limits().order)
    throw Error(ErrorCode::OrderCapExceeded, "order " + std::to_string(order) + " exceeds cap");
  for (auto v : table)
    if (v >= order) throw Error(ErrorCode::NonAssociative, "table entry out of range");

  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->order_ = order;
  g->table_ = std::move(table);
  g->name_ = std::move(name);
  g->perm_generators_ = std::move(perm_generators);
  g->degree_ = degree;

  const auto& t = g->table_;
  for (std::size_t a = 0; a < order; ++a) {
    if (t[a] != a || t[a * order] != a)
      throw Error(ErrorCode::NonAssociative, "element 0 is not the identity");
  }
  // Latin square: every row and column is a permutation.
  for (std::size_t a = 0; a < order; ++a) {
    std::vector<char> row(order, 0), col(order, 0);
    for (std::size_t b = 0; b < order; ++b) {
      if (row[t[a * order + b]]++ || col[t[b * order + a]]++)
        throw Error(ErrorCode::NonAssociative, "table is not a Latin square");
    }
  }
  g->finish_construction();

  // Light's associativity test over a generating set.
  std::vector<Elem> gens;
  {
    std::vector<char> in(order, 0);
    for (std::size_t cand = 1; cand < order; ++cand) {
      if (in[cand]) continue;
      gens.push_back(static_cast<Elem>(cand));
      std::fill(in.begin(), in.end(), 0);
      std::vector<Elem> reached{0};
      in[0] = 1;
      for (std::size_t i = 0; i < reached.size(); ++i)
        for (auto s : gens) {
          Elem y = t[reached[i] * order + s];
          if (!in[y]) {
            in[y] = 1;
            reached.push_back(y);
          }
        }
    }
  }
  for (auto a : gens)
    for (std::size_t x = 0; x < order; ++x) {
      Elem xa = t[x * order + a];
      for (std::size_t y = 0; y < order; ++y) {
        if (t[xa * order + y] != t[x * order + t[a * order + y]])
          throw Error(ErrorCode::NonAssociative, "associativity fails");
      }
    }
  return g;
}

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<Elem>>& rows, std::string name) {
  std::vector<Elem> flat;
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw Error(ErrorCode::NonAssociative, "Cayley table is not square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return from_table(std::move(flat), rows.size(), std::move(name));
}

GroupPtr FiniteGroup::from_permutations(std::size_t degree, const std::vector<Permutation>& generators,
                                        std::string name, bool check_point_cap) {
  if (check_point_cap && degree > limits().perm_points)
    throw Error(ErrorCode::InvalidPermutation,
                "permutations act on more than " + std::to_string(limits().perm_points) + " points");
  for (const auto& gen : generators)
    if (gen.size() != degree || !is_bijection(gen))
      throw Error(ErrorCode::InvalidPermutation, "generator is not a permutation of the point set");

  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Permutation> elems{id};
  std::unordered_map<Permutation, Elem, PermHash> index{{id, 0}};
  const auto cap = limits().order;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& gen : generators) {
      auto y = perm_product(elems[i], gen);
      if (!index.count(y)) {
        if (elems.size() >= cap)
          throw Error(ErrorCode::OrderCapExceeded, "group order exceeds cap " + std::to_string(cap));
        index.emplace(y, static_cast<Elem>(elems.size()));
        elems.push_back(std::move(y));
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = index.at(perm_product(elems[a], elems[b]));

  auto g = from_table(std::move(table), n, std::move(name), generators, degree);
  auto* mg = const_cast<FiniteGroup*>(g.get());
  mg->element_perms_ = std::move(elems);
  for (const auto& gen : generators) mg->generator_elements_.push_back(index.at(gen));
  return g;
}

void FiniteGroup::finish_construction() {
  inverse_.assign(order_, 0);
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b)
      if (table_[a * order_ + b] == 0) {
        inverse_[a] = static_cast<Elem>(b);
        break;
      }
  elem_orders_.assign(order_, 1);
  for (std::size_t a = 0; a < order_; ++a) {
    unsigned k = 1;
    Elem x = static_cast<Elem>(a);
    while (x != 0) {
      x = mul(x, static_cast<Elem>(a));
      ++k;
    }
    elem_orders_[a] = k;
  }
}

Elem FiniteGroup::power(Elem x, long long k) const {
  long long m = elem_orders_[x];
  k %= m;
  if (k < 0) k += m;
  Elem r = 0;
  for (long long i = 0; i < k; ++i) r = mul(r, x);
  return r;
}

std::optional<Permutation> FiniteGroup::permutation_of(Elem x) const {
  if (element_perms_.empty()) return std::nullopt;
  return element_perms_[x];
}

std::optional<Elem> FiniteGroup::element_of(const Permutation& perm) const {
  for (std::size_t i = 0; i < element_perms_.size(); ++i)
    if (element_perms_[i] == perm) return static_cast<Elem>(i);
  return std::nullopt;
}

std::uint64_t FiniteGroup::content_hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](std::uint64_t v) {
    for (int i = 0; i < 2; ++i) {
      h ^= (v >> (8 * i)) & 0xFF;
      h *= 1099511628211ULL;
    }
  };
  feed(order_);
  for (auto v : table_) feed(v);
  return h;
}

const std::vector<ElementSet>* FiniteGroup::cached_lattice() const {
  std::lock_guard lock(lattice_mutex_);
  return lattice_.get();
}

void FiniteGroup::store_lattice(std::vector<ElementSet> lattice) const {
  std::lock_guard lock(lattice_mutex_);
  if (!lattice_) lattice_ = std::make_shared<const std::vector<ElementSet>>(std::move(lattice));
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup::Subgroup(GroupPtr parent, ElementSet members)
    : parent_(std::move(parent)), bits_(std::move(members)), elements_(bits_.members()) {}

Subgroup Subgroup::checked(GroupPtr parent, const ElementSet& members) {
  if (members.universe() != parent->order())
    throw Error(ErrorCode::NotASubgroup, "bit-vector length differs from the group order");
  if (!members.test(0)) throw Error(ErrorCode::NotASubgroup, "identity missing");
  auto elems = members.members();
  for (auto a : elems) {
    if (!members.test(parent->inv(a))) throw Error(ErrorCode::NotASubgroup, "not closed under inverses");
    for (auto b : elems)
      if (!members.test(parent->mul(a, b))) throw Error(ErrorCode::NotASubgroup, "not closed under products");
  }
  if (parent->order() % elems.size() != 0) throw Error(ErrorCode::NotASubgroup, "order does not divide |G|");
  return Subgroup(std::move(parent), members);
}

bool Subgroup::same_parent(const Subgroup& o) const {
  return parent_ == o.parent_ || (parent_ && o.parent_ && parent_->same_table(*o.parent_));
}

// ---------------------------------------------------------------------------
// GroupMorphism

GroupMorphism::GroupMorphism(Subgroup domain, Subgroup codomain, std::vector<Elem> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {}

GroupMorphism GroupMorphism::identity(const Subgroup& P) { return inclusion(P, P); }

GroupMorphism GroupMorphism::inclusion(const Subgroup& P, const Subgroup& R) {
  std::vector<Elem> img(P.group().order(), kNoElem);
  for (auto x : P.elements()) img[x] = x;
  return GroupMorphism(P, R, std::move(img));
}

GroupMorphism GroupMorphism::conjugation(const Subgroup& P, Elem g, const Subgroup& codomain) {
  const auto& G = P.group();
  std::vector<Elem> img(G.order(), kNoElem);
  for (auto x : P.elements()) img[x] = G.conj(g, x);
  return GroupMorphism(P, codomain, std::move(img));
}

Subgroup GroupMorphism::image() const { return image_of(domain_); }

Subgroup GroupMorphism::image_of(const Subgroup& P) const {
  ElementSet bits(codomain_.group().order());
  for (auto x : P.elements()) bits.set(images_[x]);
  return Subgroup(codomain_.parent(), std::move(bits));
}

GroupMorphism GroupMorphism::restrict_to(const Subgroup& P) const {
  std::vector<Elem> img(images_.size(), kNoElem);
  for (auto x : P.elements()) img[x] = images_[x];
  return GroupMorphism(P, codomain_, std::move(img));
}

GroupMorphism GroupMorphism::with_codomain(const Subgroup& R) const { return GroupMorphism(domain_, R, images_); }

GroupMorphism GroupMorphism::inverse() const {
  auto im = image();
  std::vector<Elem> img(codomain_.group().order(), kNoElem);
  for (auto x : domain_.elements()) img[images_[x]] = x;
  return GroupMorphism(im, domain_, std::move(img));
}

bool GroupMorphism::is_homomorphism() const {
  const auto& G = domain_.group();
  const auto& H = codomain_.group();
  for (auto x : domain_.elements()) {
    if (images_[x] == kNoElem || !codomain_.contains(images_[x])) return false;
    for (auto y : domain_.elements())
      if (images_[G.mul(x, y)] != H.mul(images_[x], images_[y])) return false;
  }
  return true;
}

bool GroupMorphism::is_injective() const {
  std::unordered_set<Elem> seen;
  for (auto x : domain_.elements())
    if (!seen.insert(images_[x]).second) return false;
  return true;
}

bool GroupMorphism::is_identity_map() const {
  for (auto x : domain_.elements())
    if (images_[x] != x) return false;
  return true;
}

bool GroupMorphism::same_map(const GroupMorphism& o) const {
  if (!(domain_ == o.domain_)) return false;
  for (auto x : domain_.elements())
    if (images_[x] != o.images_[x]) return false;
  return true;
}

std::strong_ordering compare_maps(const GroupMorphism& a, const GroupMorphism& b) {
  if (!(a.domain_ == b.domain_)) {
    return canonical_less(a.domain_, b.domain_) ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  for (auto x : a.domain_.elements()) {
    if (a.images_[x] != b.images_[x]) return a.images_[x] <=> b.images_[x];
  }
  return std::strong_ordering::equal;
}

bool morphism_less(const GroupMorphism& a, const GroupMorphism& b) { return compare_maps(a, b) < 0; }

void canonicalize(std::vector<GroupMorphism>& maps) {
  std::sort(maps.begin(), maps.end(), morphism_less);
  maps.erase(std::unique(maps.begin(), maps.end(), [](const auto& a, const auto& b) { return a.same_map(b); }),
             maps.end());
}

GroupMorphism compose(const GroupMorphism& outer, const GroupMorphism& inner) {
  std::vector<Elem> img(inner.table().size(), kNoElem);
  for (auto x : inner.domain().elements()) {
    Elem y = inner(x);
    if (!outer.domain().contains(y))
      throw Error(ErrorCode::InternalInconsistency, "composition outside the outer domain");
    img[x] = outer(y);
  }
  return GroupMorphism(inner.domain(), outer.codomain(), std::move(img));
}

// ---------------------------------------------------------------------------
// Subgroup construction

Subgroup whole_group(const GroupPtr& G) {
  ElementSet bits(G->order());
  for (std::size_t i = 0; i < G->order(); ++i) bits.set(static_cast<Elem>(i));
  return Subgroup(G, std::move(bits));
}

Subgroup trivial_subgroup(const GroupPtr& G) {
  ElementSet bits(G->order());
  bits.set(0);
  return Subgroup(G, std::move(bits));
}

namespace {

// Closure of `seed` (already a union of known elements) under right
// multiplication by `gens`.
ElementSet close_under(const FiniteGroup& G, std::vector<Elem> list, ElementSet in, std::span<const Elem> gens) {
  for (std::size_t i = 0; i < list.size(); ++i)
    for (auto s : gens) {
      Elem y = G.mul(list[i], s);
      if (!in.test(y)) {
        in.set(y);
        list.push_back(y);
      }
    }
  return in;
}

}  // namespace

Subgroup generate(const GroupPtr& G, std::span<const Elem> gens) {
  ElementSet in(G->order());
  in.set(0);
  return Subgroup(G, close_under(*G, {0}, std::move(in), gens));
}

Subgroup generate(const GroupPtr& G, std::initializer_list<Elem> gens) {
  std::vector<Elem> v(gens);
  return generate(G, std::span<const Elem>(v));
}

Subgroup extend(const Subgroup& A, Elem extra) {
  if (A.contains(extra)) return A;
  auto gens = small_generating_set(A);
  gens.push_back(extra);
  return Subgroup(A.parent(), close_under(A.group(), A.elements(), A.bits(), gens));
}

Subgroup join(const Subgroup& A, const Subgroup& B) {
  if (B.subset_of(A)) return A;
  if (A.subset_of(B)) return B;
  auto gens = small_generating_set(A);
  for (auto g : small_generating_set(B)) gens.push_back(g);
  return Subgroup(A.parent(), close_under(A.group(), A.elements(), A.bits(), gens));
}

Subgroup intersect(const Subgroup& A, const Subgroup& B) { return Subgroup(A.parent(), A.bits() & B.bits()); }

Subgroup conjugate(const Subgroup& Q, Elem g) {
  ElementSet bits(Q.group().order());
  for (auto x : Q.elements()) bits.set(Q.group().conj(g, x));
  return Subgroup(Q.parent(), std::move(bits));
}

std::vector<Elem> transporter(const Subgroup& Q, const Subgroup& R, const Subgroup& within) {
  const auto& G = Q.group();
  auto gens = small_generating_set(Q);
  std::vector<Elem> out;
  for (auto g : within.elements()) {
    bool ok = true;
    for (auto x : gens)
      if (!R.contains(G.conj(g, x))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return out;
}

Subgroup center(const Subgroup& H) { return centralizer(H, H); }

Subgroup centralizer(const Subgroup& within, const Subgroup& Q) {
  const auto& G = within.group();
  auto gens = small_generating_set(Q);
  ElementSet bits(G.order());
  for (auto g : within.elements()) {
    bool ok = std::all_of(gens.begin(), gens.end(), [&](Elem x) { return G.mul(g, x) == G.mul(x, g); });
    if (ok) bits.set(g);
  }
  return Subgroup(within.parent(), std::move(bits));
}

Subgroup normalizer(const Subgroup& within, const Subgroup& Q) {
  const auto& G = within.group();
  auto gens = small_generating_set(Q);
  ElementSet bits(G.order());
  for (auto g : within.elements()) {
    bool ok = std::all_of(gens.begin(), gens.end(), [&](Elem x) { return Q.contains(G.conj(g, x)); });
    if (ok) bits.set(g);
  }
  return Subgroup(within.parent(), std::move(bits));
}

Subgroup derived_subgroup(const Subgroup& H) {
  const auto& G = H.group();
  std::vector<Elem> comms;
  ElementSet seen(G.order());
  for (auto x : H.elements())
    for (auto y : H.elements()) {
      Elem c = G.commutator(x, y);
      if (!seen.test(c)) {
        seen.set(c);
        comms.push_back(c);
      }
    }
  return generate(H.parent(), std::span<const Elem>(comms));
}

Subgroup normal_closure(const Subgroup& within, const Subgroup& Q) {
  const auto& G = within.group();
  std::vector<Elem> conjs;
  ElementSet seen(G.order());
  for (auto q : small_generating_set(Q))
    for (auto g : within.elements()) {
      Elem c = G.conj(g, q);
      if (!seen.test(c)) {
        seen.set(c);
        conjs.push_back(c);
      }
    }
  return generate(within.parent(), std::span<const Elem>(conjs));
}

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::size_t p_part(std::size_t n, unsigned p) {
  std::size_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

bool is_p_group(std::size_t order, unsigned p) { return p_part(order, p) == order; }

namespace {

// Join of the normal closures ncl_H(x) that satisfy `keep` on their order.
template <typename Pred>
Subgroup join_of_normal_closures(const Subgroup& H, Pred keep) {
  const auto& G = H.group();
  ElementSet done(G.order());
  Subgroup result = trivial_subgroup(H.parent());
  for (auto x : H.elements()) {
    if (done.test(x) || result.contains(x)) continue;
    // mark the H-class of x
    for (auto g : H.elements()) done.set(G.conj(g, x));
    auto ncl = normal_closure(H, generate(H.parent(), {x}));
    if (keep(ncl.order())) result = join(result, ncl);
  }
  return result;
}

}  // namespace

Subgroup o_p(const Subgroup& H, unsigned p) {
  return join_of_normal_closures(H, [p](std::size_t n) { return is_p_group(n, p); });
}

Subgroup o_p_prime(const Subgroup& H, unsigned p) {
  return join_of_normal_closures(H, [p](std::size_t n) { return n % p != 0; });
}

Subgroup omega1(const Subgroup& P, unsigned p) {
  if (!is_p_group(P.order(), p))
    throw Error(ErrorCode::NotAPGroup, "omega1 needs a " + std::to_string(p) + "-group, got order " +
                                           std::to_string(P.order()));
  std::vector<Elem> gens;
  for (auto x : P.elements())
    if (P.group().elem_order(x) == p) gens.push_back(x);
  return generate(P.parent(), std::span<const Elem>(gens));
}

bool is_normal(const Subgroup& N, const Subgroup& H) {
  if (!N.subset_of(H)) return false;
  const auto& G = H.group();
  auto hg = small_generating_set(H);
  auto ng = small_generating_set(N);
  for (auto g : hg)
    for (auto x : ng)
      if (!N.contains(G.conj(g, x))) return false;
  return true;
}

bool is_abelian(const Subgroup& H) {
  const auto& G = H.group();
  auto gens = small_generating_set(H);
  for (auto a : gens)
    for (auto b : gens)
      if (G.mul(a, b) != G.mul(b, a)) return false;
  return true;
}

Subgroup standard_subgroup(const GroupPtr& G, StandardKind kind, const std::optional<Subgroup>& within,
                           const std::optional<Subgroup>& q, unsigned p) {
  Subgroup H = within ? *within : whole_group(G);
  auto need_q = [&]() -> const Subgroup& {
    if (!q) throw Error(ErrorCode::NotASubgroup, "operation needs a subgroup argument");
    if (!q->subset_of(H)) throw Error(ErrorCode::NotASubgroup, "argument is not contained in `within`");
    return *q;
  };
  switch (kind) {
    case StandardKind::Center: return center(H);
    case StandardKind::Centralizer: return centralizer(H, need_q());
    case StandardKind::Normalizer: return normalizer(H, need_q());
    case StandardKind::Derived: return derived_subgroup(H);
    case StandardKind::Op: return o_p(H, p);
    case StandardKind::OpPrime: return o_p_prime(H, p);
    case StandardKind::Omega1: return omega1(H, p);
  }
  throw Error(ErrorCode::NotASubgroup, "unknown kind");
}

// ---------------------------------------------------------------------------
// Lattices

namespace {

std::vector<ElementSet> lattice_by_cyclic_extension(const Subgroup& H) {
  const auto& G = H.group();
  std::vector<ElementSet> found;
  std::vector<std::vector<Elem>> gens_of;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index;

  auto add = [&](ElementSet s, std::vector<Elem> gens) {
    if (index.count(s)) return;
    index.emplace(s, found.size());
    found.push_back(std::move(s));
    gens_of.push_back(std::move(gens));
  };

  ElementSet triv(G.order());
  triv.set(0);
  add(triv, {});

  std::vector<Elem> cyclic_gens;
  std::vector<ElementSet> cyclic;
  {
    std::unordered_set<ElementSet, ElementSetHash> seen;
    for (auto x : H.elements()) {
      if (x == 0) continue;
      ElementSet c(G.order());
      Elem y = x;
      c.set(0);
      while (y != 0) {
        c.set(y);
        y = G.mul(y, x);
      }
      if (seen.insert(c).second) {
        cyclic.push_back(c);
        cyclic_gens.push_back(x);
        add(c, {x});
      }
    }
  }

  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t c = 0; c < cyclic.size(); ++c) {
      if (found[i].test(cyclic_gens[c])) continue;
      auto gens = gens_of[i];
      gens.push_back(cyclic_gens[c]);
      auto base = found[i];
      auto joined = close_under(G, base.members(), base, gens);
      add(std::move(joined), std::move(gens));
    }
  }
  std::sort(found.begin(), found.end(), [](const ElementSet& a, const ElementSet& b) { return canonical_less(a, b); });
  return found;
}

std::vector<Subgroup> wrap(const GroupPtr& G, const std::vector<ElementSet>& sets) {
  std::vector<Subgroup> out;
  out.reserve(sets.size());
  for (const auto& s : sets) out.emplace_back(G, s);
  return out;
}

}  // namespace

std::vector<Subgroup> subgroup_lattice(const GroupPtr& G) {
  if (G->order() > limits().order)
    throw Error(ErrorCode::OrderCapExceeded, "lattice of a group of order " + std::to_string(G->order()));
  if (const auto* cached = G->cached_lattice()) return wrap(G, *cached);
  auto sets = lattice_by_cyclic_extension(whole_group(G));
  G->store_lattice(sets);
  return wrap(G, *G->cached_lattice());
}

std::vector<Subgroup> subgroups_of(const Subgroup& H) {
  if (H.is_whole()) return subgroup_lattice(H.parent());
  if (const auto* cached = H.group().cached_lattice()) {
    std::vector<Subgroup> out;
    for (const auto& s : *cached)
      if (s.subset_of(H.bits())) out.emplace_back(H.parent(), s);
    return out;
  }
  return wrap(H.parent(), lattice_by_cyclic_extension(H));
}

Subgroup sylow(const Subgroup& H, unsigned p) {
  const auto target = p_part(H.order(), p);
  if (target == 1) return trivial_subgroup(H.parent());
  if (target == H.order()) return H;
  for (const auto& K : subgroups_of(H))
    if (K.order() == target) return K;
  throw Error(ErrorCode::InternalInconsistency, "no Sylow subgroup found");
}

Subgroup sylow(const GroupPtr& G, unsigned p) { return sylow(whole_group(G), p); }

// ---------------------------------------------------------------------------
// Extraction and quotients

Subgroup ExtractedGroup::lift(const Subgroup& K) const {
  ElementSet bits(from_parent.size());
  for (auto x : K.elements()) bits.set(to_parent[x]);
  return Subgroup(parent, std::move(bits));
}

Subgroup ExtractedGroup::lower(const Subgroup& K) const {
  ElementSet bits(group->order());
  for (auto x : K.elements()) {
    if (from_parent[x] == kNoElem) throw Error(ErrorCode::NotASubgroup, "subgroup not inside the extracted group");
    bits.set(from_parent[x]);
  }
  return Subgroup(group, std::move(bits));
}

ExtractedGroup extract(const Subgroup& H, std::string name) {
  const auto& G = H.group();
  const auto& elems = H.elements();
  const std::size_t n = elems.size();
  std::vector<Elem> from(G.order(), kNoElem);
  for (std::size_t i = 0; i < n; ++i) from[elems[i]] = static_cast<Elem>(i);
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = from[G.mul(elems[a], elems[b])];
  if (name.empty()) name = G.name() + "_sub" + std::to_string(n);
  ExtractedGroup out;
  out.group = FiniteGroup::from_table(std::move(table), n, std::move(name));
  out.to_parent = elems;
  out.from_parent = std::move(from);
  out.parent = H.parent();
  return out;
}

Subgroup QuotientGroup::image_of(const Subgroup& K) const {
  ElementSet bits(group->order());
  for (auto x : K.elements()) bits.set(projection[x]);
  return Subgroup(group, std::move(bits));
}

Subgroup QuotientGroup::preimage(const Subgroup& K) const {
  ElementSet bits(projection.size());
  for (std::size_t x = 0; x < projection.size(); ++x)
    if (K.contains(projection[x])) bits.set(static_cast<Elem>(x));
  return Subgroup(kernel.parent(), std::move(bits));
}

QuotientGroup quotient_group(const GroupPtr& G, const Subgroup& N) {
  if (!is_normal(N, whole_group(G))) throw Error(ErrorCode::NotNormal, "subgroup is not normal");
  const std::size_t n = G->order();
  std::vector<Elem> proj(n, kNoElem);
  std::vector<Elem> reps;
  for (std::size_t x = 0; x < n; ++x) {
    if (proj[x] != kNoElem) continue;
    Elem id = static_cast<Elem>(reps.size());
    reps.push_back(static_cast<Elem>(x));
    for (auto k : N.elements()) proj[G->mul(static_cast<Elem>(x), k)] = id;
  }
  const std::size_t m = reps.size();
  std::vector<Elem> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = proj[G->mul(reps[a], reps[b])];
  QuotientGroup out;
  out.group = FiniteGroup::from_table(std::move(table), m, G->name() + "/N" + std::to_string(N.order()));
  out.projection = std::move(proj);
  out.kernel = N;
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism

std::vector<Elem> small_generating_set(const Subgroup& H) {
  const auto& G = H.group();
  std::vector<Elem> gens;
  ElementSet cur(G.order());
  cur.set(0);
  std::vector<Elem> list{0};
  while (list.size() < H.order()) {
    Elem best = kNoElem;
    for (auto x : H.elements())
      if (!cur.test(x) && (best == kNoElem || G.elem_order(x) > G.elem_order(best))) best = x;
    gens.push_back(best);
    cur = close_under(G, list, cur, gens);
    list = cur.members();
  }
  return gens;
}

namespace {

struct Invariants {
  std::size_t order;
  std::vector<std::size_t> order_counts;
  std::size_t center;
  std::size_t derived;
  bool operator==(const Invariants&) const = default;
};

Invariants invariants_of(const Subgroup& H) {
  Invariants inv;
  inv.order = H.order();
  inv.order_counts.assign(H.order() + 1, 0);
  for (auto x : H.elements()) inv.order_counts[H.group().elem_order(x)]++;
  inv.center = center(H).order();
  inv.derived = derived_subgroup(H).order();
  return inv;
}

// Extend the map on ⟨gens[0..k)⟩ given by images; returns false on conflict
// or non-injectivity. `map` and `used` are indexed by the source/target parents.
bool extend_map(const FiniteGroup& G, const FiniteGroup& T, std::span<const Elem> gens, std::span<const Elem> imgs,
                std::vector<Elem>& map, std::vector<char>& used, std::vector<Elem>& reached) {
  std::fill(map.begin(), map.end(), kNoElem);
  std::fill(used.begin(), used.end(), 0);
  reached.assign(1, 0);
  map[0] = 0;
  used[0] = 1;
  for (std::size_t i = 0; i < reached.size(); ++i) {
    Elem x = reached[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Elem y = G.mul(x, gens[k]);
      Elem fy = T.mul(map[x], imgs[k]);
      if (map[y] == kNoElem) {
        if (used[fy]) return false;
        map[y] = fy;
        used[fy] = 1;
        reached.push_back(y);
      } else if (map[y] != fy) {
        return false;
      }
    }
  }
  return true;
}

// Backtracking over generator images. `visit` returns true to stop.
template <typename Visit>
void search_isomorphisms(const Subgroup& A, const Subgroup& B, Visit visit) {
  const auto& G = A.group();
  const auto& T = B.group();
  auto gens = small_generating_set(A);
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (auto y : B.elements())
      if (T.elem_order(y) == G.elem_order(gens[k])) candidates[k].push_back(y);

  std::vector<Elem> imgs(gens.size(), 0);
  std::vector<Elem> map(G.order(), kNoElem);
  std::vector<char> used(T.order(), 0);
  std::vector<Elem> reached;
  bool stop = false;

  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (stop) return;
    if (k == gens.size()) {
      if (reached.size() == B.order()) {
        if (visit(GroupMorphism(A, B, map))) stop = true;
      }
      return;
    }
    for (auto y : candidates[k]) {
      imgs[k] = y;
      if (!extend_map(G, T, std::span<const Elem>(gens.data(), k + 1), std::span<const Elem>(imgs.data(), k + 1), map,
                      used, reached))
        continue;
      // The generator must land outside the image of the earlier generators,
      // which extend_map already enforces through injectivity.
      rec(k + 1);
      if (stop) return;
    }
  };
  if (gens.empty()) {
    if (B.order() == 1) {
      std::vector<Elem> m(G.order(), kNoElem);
      m[0] = 0;
      visit(GroupMorphism(A, B, std::move(m)));
    }
    return;
  }
  rec(0);
}

}  // namespace

std::optional<GroupMorphism> find_isomorphism(const Subgroup& A, const Subgroup& B) {
  if (A.order() != B.order()) return std::nullopt;
  if (A.order() > limits().order) throw Error(ErrorCode::OrderCapExceeded, "isomorphism test above cap");
  if (!(invariants_of(A) == invariants_of(B))) return std::nullopt;
  std::optional<GroupMorphism> found;
  search_isomorphisms(A, B, [&](GroupMorphism m) {
    found = std::move(m);
    return true;
  });
  return found;
}

IsomorphismResult is_isomorphic(const GroupPtr& G, const GroupPtr& H) {
  IsomorphismResult r;
  r.witness = find_isomorphism(whole_group(G), whole_group(H));
  r.isomorphic = r.witness.has_value();
  return r;
}

std::vector<GroupMorphism> automorphisms(const Subgroup& S) {
  if (S.order() > limits().automorphisms)
    throw Error(ErrorCode::OrderCapExceeded, "automorphism enumeration above cap");
  std::vector<GroupMorphism> out;
  search_isomorphisms(S, S, [&](GroupMorphism m) {
    out.push_back(std::move(m));
    return false;
  });
  canonicalize(out);
  return out;
}

std::vector<GroupMorphism> automorphisms(const GroupPtr& S) { return automorphisms(whole_group(S)); }

InvolvementResult is_involved(const GroupPtr& H, const GroupPtr& G) {
  InvolvementResult r;
  const auto h = H->order();
  if (G->order() % h != 0) return r;
  if (G->order() > limits().order || h > limits().order)
    throw Error(ErrorCode::OrderCapExceeded, "involvement test above cap");
  auto lattice = subgroup_lattice(G);
  auto target = invariants_of(whole_group(H));
  for (const auto& B : lattice) {
    if (B.order() % h != 0) continue;
    const auto k = B.order() / h;
    std::optional<ExtractedGroup> ex;
    for (const auto& A : lattice) {
      if (A.order() < k) continue;
      if (A.order() > k) break;
      if (!A.subset_of(B) || !is_normal(A, B)) continue;
      if (!ex) ex = extract(B);
      auto q = quotient_group(ex->group, ex->lower(A));
      auto qw = whole_group(q.group);
      if (!(invariants_of(qw) == target)) continue;
      if (find_isomorphism(qw, whole_group(H))) {
        r.involved = true;
        r.witness = Section{B, A};
        return r;
      }
    }
  }
  return r;
}

GroupPtr group_from_permutations(std::size_t degree, const std::vector<Permutation>& gens, std::string name) {
  return FiniteGroup::from_permutations(degree, gens, std::move(name), false);
}

}  // namespace fusionlab
