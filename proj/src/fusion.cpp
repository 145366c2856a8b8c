#include "fusionlab/fusion.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <unordered_set>

namespace fusionlab {

std::string_view to_string(Saturation s) {
  switch (s) {
    case Saturation::Unchecked: return "unchecked";
    case Saturation::Verified: return "verified";
    case Saturation::Failed: return "failed";
  }
  return "?";
}

struct FusionSystem::Impl {
  unsigned p = 0;
  Subgroup S;
  std::string name;
  bool realized = false;
  bool sylow = false;
  Subgroup ambient;
  std::vector<Subgroup> subgroups;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index;
  std::mutex mutex;
  std::vector<std::shared_ptr<const std::vector<GroupMorphism>>> homs;
};

std::shared_ptr<FusionSystem::Impl> FusionSystem::make_impl(const Subgroup& S, unsigned p, std::string name) {
  if (!is_prime(p)) throw Error(ErrorCode::UnsupportedPrime, std::to_string(p) + " is not prime");
  if (!is_p_group(S.order(), p)) throw Error(ErrorCode::NotAPGroup, "carrier is not a " + std::to_string(p) + "-group");
  auto impl = std::make_shared<FusionSystem::Impl>();
  impl->p = p;
  impl->S = S;
  impl->name = std::move(name);
  impl->subgroups = subgroups_of(S);
  for (std::size_t i = 0; i < impl->subgroups.size(); ++i) impl->index.emplace(impl->subgroups[i].bits(), i);
  impl->homs.resize(impl->subgroups.size());
  return impl;
}

FusionSystem FusionSystem::realize(const GroupPtr& G, unsigned p, const std::optional<Subgroup>& S) {
  if (!is_prime(p)) throw Error(ErrorCode::UnsupportedPrime, std::to_string(p) + " is not prime");
  Subgroup carrier = S ? *S : sylow(G, p);
  if (carrier.parent() != G && !carrier.same_parent(whole_group(G)))
    throw Error(ErrorCode::NotSylow, "S does not live in G");
  if (carrier.order() != p_part(G->order(), p))
    throw Error(ErrorCode::NotSylow, "|S| = " + std::to_string(carrier.order()) + " but the " + std::to_string(p) +
                                         "-part of |G| is " + std::to_string(p_part(G->order(), p)));
  FusionSystem F;
  F.impl_ = make_impl(carrier, p, "F_S(" + G->name() + ")");
  F.impl_->realized = true;
  F.impl_->sylow = true;
  F.impl_->ambient = whole_group(G);
  return F;
}

FusionSystem FusionSystem::realize_in(const Subgroup& ambient, unsigned p, const Subgroup& S, std::string name) {
  if (!S.subset_of(ambient)) throw Error(ErrorCode::ObjectOutsideS, "carrier is not inside the ambient group");
  FusionSystem F;
  F.impl_ = make_impl(S, p, name.empty() ? "F_S(H)" : std::move(name));
  F.impl_->realized = true;
  F.impl_->sylow = S.order() == p_part(ambient.order(), p);
  F.impl_->ambient = ambient;
  return F;
}

FusionSystem FusionSystem::inner(const Subgroup& S, unsigned p) { return realize_in(S, p, S, "F_S(S)"); }

FusionSystem FusionSystem::from_homs(const Subgroup& S, unsigned p, HomTable homs_to_S, std::string name) {
  FusionSystem F;
  F.impl_ = make_impl(S, p, name.empty() ? "explicit" : std::move(name));
  auto& impl = *F.impl_;
  for (auto& [bits, list] : homs_to_S) {
    auto it = impl.index.find(bits);
    if (it == impl.index.end()) throw Error(ErrorCode::ObjectOutsideS, "hom list for a subgroup outside S");
    const auto& P = impl.subgroups[it->second];
    std::vector<GroupMorphism> maps;
    maps.reserve(list.size());
    for (auto& m : list) {
      for (auto x : P.elements())
        if (m(x) == kNoElem || !S.contains(m(x)))
          throw Error(ErrorCode::ObjectOutsideS, "morphism image leaves S");
      maps.emplace_back(P, S, m.table());
    }
    canonicalize(maps);
    impl.homs[it->second] = std::make_shared<const std::vector<GroupMorphism>>(std::move(maps));
  }
  for (auto& h : impl.homs)
    if (!h) h = std::make_shared<const std::vector<GroupMorphism>>();
  return F;
}

unsigned FusionSystem::p() const { return impl_->p; }
const Subgroup& FusionSystem::S() const { return impl_->S; }
bool FusionSystem::is_realized() const { return impl_->realized; }
bool FusionSystem::saturated_by_construction() const { return impl_->realized && impl_->sylow; }
const std::string& FusionSystem::name() const { return impl_->name; }

const Subgroup& FusionSystem::ambient() const {
  if (!impl_->realized) throw Error(ErrorCode::InternalInconsistency, "explicit system has no ambient group");
  return impl_->ambient;
}

FusionSystem FusionSystem::with_saturation(Saturation s) const {
  FusionSystem F = *this;
  F.saturation_ = s;
  return F;
}

const std::vector<Subgroup>& FusionSystem::subgroups() const { return impl_->subgroups; }

std::size_t FusionSystem::index_of(const Subgroup& P) const {
  if (P.bits().universe() == impl_->S.bits().universe()) {
    auto it = impl_->index.find(P.bits());
    if (it != impl_->index.end() && P.same_parent(impl_->S)) return it->second;
  }
  throw Error(ErrorCode::ObjectOutsideS, "subgroup of order " + std::to_string(P.order()) + " is not inside S");
}

const std::vector<GroupMorphism>& FusionSystem::homs_to_S(const Subgroup& P) const {
  const auto i = index_of(P);
  {
    std::lock_guard lock(impl_->mutex);
    if (impl_->homs[i]) return *impl_->homs[i];
  }
  const auto& Q = impl_->subgroups[i];
  std::vector<GroupMorphism> maps;
  for (auto g : transporter(Q, impl_->S, impl_->ambient)) maps.push_back(GroupMorphism::conjugation(Q, g, impl_->S));
  canonicalize(maps);
  auto ptr = std::make_shared<const std::vector<GroupMorphism>>(std::move(maps));
  std::lock_guard lock(impl_->mutex);
  if (!impl_->homs[i]) impl_->homs[i] = std::move(ptr);
  return *impl_->homs[i];
}

void FusionSystem::preload(const Subgroup& P, std::vector<GroupMorphism> homs) const {
  const auto i = index_of(P);
  canonicalize(homs);
  auto ptr = std::make_shared<const std::vector<GroupMorphism>>(std::move(homs));
  std::lock_guard lock(impl_->mutex);
  if (!impl_->homs[i]) impl_->homs[i] = std::move(ptr);
}

std::vector<GroupMorphism> FusionSystem::hom_set(const Subgroup& P, const Subgroup& R) const {
  index_of(R);
  std::vector<GroupMorphism> out;
  for (const auto& m : homs_to_S(P)) {
    bool inside = true;
    for (auto x : P.elements())
      if (!R.contains(m(x))) {
        inside = false;
        break;
      }
    if (inside) out.push_back(m.with_codomain(impl_->subgroups[index_of(R)]));
  }
  return out;
}

bool FusionSystem::contains(const GroupMorphism& phi) const {
  const auto& list = homs_to_S(phi.domain());
  return std::binary_search(list.begin(), list.end(), phi, morphism_less);
}

std::vector<Subgroup> FusionSystem::conjugacy_class(const Subgroup& Q) const {
  std::vector<Subgroup> out;
  std::unordered_set<ElementSet, ElementSetHash> seen;
  for (const auto& m : homs_to_S(Q)) {
    auto im = m.image();
    if (seen.insert(im.bits()).second) out.push_back(impl_->subgroups[index_of(im)]);
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) { return canonical_less(a, b); });
  return out;
}

std::optional<Subgroup> FusionSystem::first_difference(const FusionSystem& other) const {
  if (!(S() == other.S()) || !S().same_parent(other.S()) || p() != other.p())
    throw Error(ErrorCode::CarrierMismatch, "systems live on different carriers");
  for (const auto& P : subgroups()) {
    const auto& a = homs_to_S(P);
    const auto& b = other.homs_to_S(P);
    if (a.size() != b.size()) return P;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (!a[k].same_map(b[k])) return P;
  }
  return std::nullopt;
}

bool FusionSystem::same_morphisms(const FusionSystem& other) const {
  if (!(S() == other.S()) || !S().same_parent(other.S()) || p() != other.p()) return false;
  return !first_difference(other).has_value();
}

FusionSystem::HomTable FusionSystem::hom_table() const {
  HomTable t;
  for (const auto& P : subgroups()) t.emplace(P.bits(), homs_to_S(P));
  return t;
}

std::size_t FusionSystem::morphism_count() const {
  std::size_t n = 0;
  for (const auto& P : subgroups()) n += homs_to_S(P).size();
  return n;
}

std::vector<Elem> map_key(const GroupMorphism& phi) {
  std::vector<Elem> key;
  key.reserve(phi.domain().order());
  for (auto x : phi.domain().elements()) key.push_back(phi(x));
  return key;
}

// ---------------------------------------------------------------------------
// Automizers

namespace {

Permutation as_permutation(const Subgroup& Q, const GroupMorphism& a) {
  const auto& el = Q.elements();
  Permutation perm(el.size());
  for (std::size_t i = 0; i < el.size(); ++i) {
    auto it = std::lower_bound(el.begin(), el.end(), a(el[i]));
    perm[i] = static_cast<std::uint16_t>(it - el.begin());
  }
  return perm;
}

}  // namespace

Elem Automizer::element_of(const GroupMorphism& a) const {
  auto x = aut->element_of(as_permutation(Q, a));
  if (!x) throw Error(ErrorCode::MorphismNotInF, "map is not in Aut_F(Q)");
  return *x;
}

Automizer automizer(const FusionSystem& F, const Subgroup& Q) {
  Automizer A;
  A.Q = F.subgroups()[F.index_of(Q)];
  const auto maps = F.aut(A.Q);
  std::vector<Permutation> gens;
  for (const auto& m : maps) gens.push_back(as_permutation(A.Q, m));
  A.aut = group_from_permutations(A.Q.order(), gens, "Aut_F(Q)");
  if (A.aut->order() != maps.size())
    throw Error(ErrorCode::InternalInconsistency, "Aut_F(Q) is not closed under composition");
  const auto& el = A.Q.elements();
  const auto& parent = A.Q.group();
  for (std::size_t x = 0; x < A.aut->order(); ++x) {
    auto perm = *A.aut->permutation_of(static_cast<Elem>(x));
    std::vector<Elem> table(parent.order(), kNoElem);
    for (std::size_t i = 0; i < el.size(); ++i) table[el[i]] = el[perm[i]];
    A.maps.emplace_back(A.Q, A.Q, std::move(table));
  }
  auto conj_set = [&](const Subgroup& by) {
    ElementSet bits(A.aut->order());
    for (auto u : by.elements()) bits.set(A.element_of(GroupMorphism::conjugation(A.Q, u, A.Q)));
    return Subgroup(A.aut, std::move(bits));
  };
  A.inn = conj_set(A.Q);
  A.aut_S = conj_set(normalizer(F.S(), A.Q));
  A.out = quotient_group(A.aut, A.inn);
  return A;
}

std::optional<Subgroup> strongly_p_embedded(const GroupPtr& X, unsigned p) {
  auto P = sylow(X, p);
  auto whole = whole_group(X);
  if (P.is_trivial() || is_normal(P, whole)) return std::nullopt;
  for (const auto& M : subgroup_lattice(X)) {
    if (M.is_whole() || !P.subset_of(M)) continue;
    bool ok = true;
    for (Elem g = 0; g < X->order() && ok; ++g) {
      if (M.contains(g)) continue;
      auto Pg = conjugate(P, g);
      if (Pg == P || !intersect(Pg, P).is_trivial()) ok = false;
    }
    if (ok) return M;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Classification

SubgroupProfile classify_subgroup(const FusionSystem& F, const Subgroup& Qin) {
  const auto& S = F.S();
  const unsigned p = F.p();
  SubgroupProfile r;
  r.Q = F.subgroups()[F.index_of(Qin)];
  const auto& Q = r.Q;
  const auto cls = F.conjugacy_class(Q);
  r.class_size = cls.size();

  const auto nQ = normalizer(S, Q).order();
  const auto cQ = centralizer(S, Q).order();
  r.fully_normalized = r.fully_centralized = r.centric = true;
  for (const auto& R : cls) {
    auto nR = normalizer(S, R).order();
    auto cR = centralizer(S, R);
    if (nR > nQ && (!r.larger_normalizer || nR > normalizer(S, *r.larger_normalizer).order())) {
      r.fully_normalized = false;
      r.larger_normalizer = R;
    }
    if (cR.order() > cQ && (!r.larger_centralizer || cR.order() > centralizer(S, *r.larger_centralizer).order())) {
      r.fully_centralized = false;
      r.larger_centralizer = R;
    }
    if (r.centric && !cR.subset_of(R)) {
      r.centric = false;
      r.centric_witness = R;
    }
  }

  auto A = automizer(F, Q);
  r.aut_order = A.aut->order();
  r.out_order = A.out.group->order();
  r.aut_S_sylow = A.aut_S.order() == p_part(r.aut_order, p);
  r.radical = o_p(whole_group(A.out.group), p).is_trivial();
  if (r.centric && !Q.is_whole()) {
    r.embedded_M = strongly_p_embedded(A.out.group, p);
    r.essential = r.embedded_M.has_value();
  }
  if (r.essential && !r.radical)
    throw Error(ErrorCode::InternalInconsistency, "essential subgroup of order " + std::to_string(Q.order()) +
                                                      " is not radical");
  r.criterion_holds = r.fully_normalized == (r.fully_centralized && r.aut_S_sylow);
  if (!r.criterion_holds && (F.saturated_by_construction() || F.saturation() == Saturation::Verified))
    throw Error(ErrorCode::InternalInconsistency,
                "fully normalized / Sylow equivalence fails for a subgroup of order " + std::to_string(Q.order()));
  return r;
}

std::vector<SubgroupProfile> classify_all(const FusionSystem& F) {
  std::vector<SubgroupProfile> out;
  for (const auto& Q : F.subgroups()) out.push_back(classify_subgroup(F, Q));
  return out;
}

EssentialSubgroups essential_subgroups(const FusionSystem& F) {
  EssentialSubgroups e;
  for (const auto& Q : F.subgroups()) {
    auto prof = classify_subgroup(F, Q);
    if (!prof.essential) continue;
    e.all.push_back(prof.Q);
    if (prof.fully_normalized) e.fully_normalized.push_back(prof.Q);
  }
  return e;
}

Subgroup n_phi(const FusionSystem& F, const GroupMorphism& phi) {
  if (!F.contains(phi)) throw Error(ErrorCode::MorphismNotInF, "morphism is not in F");
  const auto& G = phi.domain().group();
  const auto& Q = phi.domain();
  const auto& S = F.S();
  auto NQ = normalizer(S, Q);
  auto NR = normalizer(S, phi.image());
  ElementSet bits(G.order());
  for (auto x : NQ.elements()) {
    for (auto y : NR.elements()) {
      bool ok = true;
      for (auto u : Q.elements())
        if (phi(G.conj(x, u)) != G.conj(y, phi(u))) {
          ok = false;
          break;
        }
      if (ok) {
        bits.set(x);
        break;
      }
    }
  }
  return Subgroup::checked(Q.parent(), bits);
}

// ---------------------------------------------------------------------------
// Axioms

namespace {

std::vector<bool> fully_normalized_flags(const FusionSystem& F) {
  const auto& subs = F.subgroups();
  std::vector<std::size_t> nsize(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) nsize[i] = normalizer(F.S(), subs[i]).order();
  std::vector<bool> flag(subs.size(), true);
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (const auto& R : F.conjugacy_class(subs[i]))
      if (nsize[F.index_of(R)] > nsize[i]) flag[i] = false;
  return flag;
}

}  // namespace

AxiomReport verify_axioms(const FusionSystem& F) {
  AxiomReport rep;
  const auto& S = F.S();
  const auto& subs = F.subgroups();
  auto fail = [&](std::string axiom, std::string detail, std::optional<GroupMorphism> w) {
    rep.ok = false;
    rep.failed = std::move(axiom);
    rep.detail = std::move(detail);
    rep.witness = std::move(w);
    return rep;
  };

  for (std::size_t i = 0; i < subs.size(); ++i) {
    const auto& P = subs[i];
    const auto& homs = F.homs_to_S(P);
    for (const auto& phi : homs)
      if (!phi.is_homomorphism() || !phi.is_injective())
        return fail("category", "non-injective or non-multiplicative map on a subgroup of order " +
                                    std::to_string(P.order()), phi);
    if (!F.contains(GroupMorphism::inclusion(P, S)))
      return fail("category", "missing inclusion of a subgroup of order " + std::to_string(P.order()),
                  GroupMorphism::inclusion(P, S));
    for (auto s : S.elements()) {
      auto c = GroupMorphism::conjugation(P, s, S);
      bool inside = true;
      for (auto x : P.elements()) inside = inside && S.contains(c(x));
      if (inside && !F.contains(c)) return fail("FS1", "S-conjugation missing", c);
    }
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    const auto& P = subs[i];
    for (const auto& phi : F.homs_to_S(P)) {
      for (const auto& R : subs) {
        if (!R.subset_of(P) || R == P) continue;
        auto res = phi.restrict_to(R);
        if (!F.contains(res)) return fail("category", "not closed under restriction", res);
      }
      auto inv = phi.inverse().with_codomain(S);
      auto im = subs[F.index_of(inv.domain())];
      inv = GroupMorphism(im, S, inv.table());
      if (!F.contains(inv)) return fail("category", "inverse of an isomorphism missing", inv);
      for (const auto& psi : F.homs_to_S(im)) {
        auto c = compose(psi, phi);
        if (!F.contains(c)) return fail("category", "not closed under composition", c);
      }
    }
  }

  {
    const auto aut_S = F.aut(S).size();
    const auto inner = S.order() / center(S).order();
    if (p_part(aut_S, F.p()) != inner)
      return fail("FS2", "|Aut_F(S)| = " + std::to_string(aut_S) + " but |Aut_S(S)| = " + std::to_string(inner),
                  std::nullopt);
  }

  const auto fully = fully_normalized_flags(F);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const auto& Q = subs[i];
    for (const auto& phi : F.homs_to_S(Q)) {
      if (!fully[F.index_of(phi.image())]) continue;
      auto N = n_phi(F, phi);
      bool extended = false;
      for (const auto& psi : F.homs_to_S(N)) {
        bool agree = true;
        for (auto u : Q.elements()) agree = agree && psi(u) == phi(u);
        if (agree) {
          extended = true;
          break;
        }
      }
      if (!extended) return fail("FS3", "no extension to N_phi of order " + std::to_string(N.order()), phi);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Alperin decomposition

GroupMorphism AlperinDecomposition::recompose(const Subgroup& S) const {
  auto cur = GroupMorphism::inclusion(chain.front(), chain.front());
  for (const auto& psi : autos) cur = compose(psi, cur);
  return GroupMorphism(chain.front(), S, cur.table());
}

AlperinDecomposition alperin_decompose(const FusionSystem& F, const GroupMorphism& phi) {
  if (!F.contains(phi)) throw Error(ErrorCode::MorphismNotInF, "morphism is not in F");
  const auto& S = F.S();
  const auto Q = F.subgroups()[F.index_of(phi.domain())];
  const auto target = map_key(phi);

  const auto ess = essential_subgroups(F).fully_normalized;
  std::vector<std::vector<GroupMorphism>> ess_autos;
  for (const auto& E : ess) ess_autos.push_back(F.aut(E));
  const auto max_autos = F.aut(S);

  struct State {
    GroupMorphism map;  // Q -> S
    std::size_t parent;
    std::size_t e;
    std::size_t psi;
  };
  std::vector<State> states;
  std::map<std::vector<Elem>, std::size_t> seen;
  auto start = GroupMorphism::inclusion(Q, S);
  states.push_back({start, 0, 0, 0});
  seen.emplace(map_key(start), 0);

  for (std::size_t head = 0; head < states.size(); ++head) {
    const auto cur = states[head].map;
    for (const auto& alpha : max_autos) {
      bool hit = true;
      std::size_t k = 0;
      for (auto u : Q.elements()) {
        if (alpha(cur(u)) != target[k++]) {
          hit = false;
          break;
        }
      }
      if (!hit) continue;
      AlperinDecomposition d;
      std::vector<std::size_t> path;
      for (std::size_t s = head; s != 0; s = states[s].parent) path.push_back(s);
      std::reverse(path.begin(), path.end());
      d.chain.push_back(Q);
      for (auto s : path) {
        d.essentials.push_back(ess[states[s].e]);
        d.autos.push_back(ess_autos[states[s].e][states[s].psi]);
        d.chain.push_back(states[s].map.image());
      }
      d.autos.push_back(alpha);
      d.chain.push_back(phi.image());
      return d;
    }
    const auto img = cur.image();
    for (std::size_t e = 0; e < ess.size(); ++e) {
      if (!img.subset_of(ess[e])) continue;
      for (std::size_t k = 0; k < ess_autos[e].size(); ++k) {
        auto next = compose(ess_autos[e][k], cur);
        next = GroupMorphism(Q, S, next.table());
        auto key = map_key(next);
        if (seen.count(key)) continue;
        seen.emplace(std::move(key), states.size());
        states.push_back({std::move(next), head, e, k});
      }
    }
  }
  throw Error(ErrorCode::NotGenerated, "morphism is not generated by essential and maximal automorphisms");
}

}  // namespace fusionlab
