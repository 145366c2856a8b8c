#include "fusionlab/stellmacher.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "fusionlab/catalog.hpp"
#include "fusionlab/hfree.hpp"
#include "fusionlab/pgroup.hpp"
#include "fusionlab/subsystems.hpp"

namespace fusionlab {

std::vector<std::size_t> CandidateFamily::admitted() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i].flags.admitted()) out.push_back(i);
  return out;
}

FusionSystem transport_system(const FusionSystem& F, const GroupMorphism& iso) {
  const auto& T = iso.codomain();
  if (iso.domain() != F.S() || !iso.domain().same_parent(F.S()) || T.order() != F.S().order() ||
      !iso.is_injective())
    throw Error(ErrorCode::CarrierMismatch, "transport needs an isomorphism from the carrier");
  std::vector<Elem> back(T.group().order(), kNoElem);
  for (auto x : F.S().elements()) back[iso(x)] = x;
  FusionSystem::HomTable table;
  for (const auto& P : F.subgroups()) {
    auto P2 = iso.image_of(P);
    std::vector<GroupMorphism> maps;
    for (const auto& phi : F.homs_to_S(P)) {
      std::vector<Elem> img(T.group().order(), kNoElem);
      for (auto y : P2.elements()) img[y] = iso(phi(back[y]));
      maps.emplace_back(P2, T, std::move(img));
    }
    table.emplace(P2.bits(), std::move(maps));
  }
  return FusionSystem::from_homs(T, F.p(), std::move(table), F.name());
}

namespace {

void set_flags(FamilyMember& m, const FusionSystem& F, const Subgroup& J) {
  m.flags.J_normal = is_normal_in_F(F, J).normal;
  m.flags.qd_free = is_fusion_H_free(F, qd_group(F.p())).free;
  std::string why;
  if (!m.flags.J_normal) why = "J(S) is not normal in F";
  if (!m.flags.qd_free) why += std::string(why.empty() ? "" : "; ") + "F is not Qd(" + std::to_string(F.p()) + ")-free";
  m.rejection = why;
}

// Admitted realized members are constrained: J(S) ≤ O_p(F) is centric, and
// the model at O_p(F) has C_L(O_p(L)) ≤ O_p(L).
void check_constrained(const FusionSystem& F) {
  const auto Q = o_p_of_F(F);
  if (!is_centric(F, Q))
    throw Error(ErrorCode::InternalInconsistency, "admitted member " + F.name() + " is not constrained");
  const auto model = model_group(F, Q);
  const auto L = whole_group(model.L);
  if (!centralizer(L, model.Q_image).subset_of(model.Q_image))
    throw Error(ErrorCode::InternalInconsistency, "model of " + F.name() + " has C_L(O_p(L)) outside O_p(L)");
}

}  // namespace

FamilyMember admit_system(const Subgroup& S, const FusionSystem& F) {
  const auto& P = F.S();
  std::optional<GroupMorphism> iso;
  if (!(P.same_parent(S) && P == S)) {
    iso = find_isomorphism(P, S);
    if (!iso) throw Error(ErrorCode::SylowMismatch, "carrier of " + F.name() + " is not isomorphic to S");
  }
  FamilyMember m;
  m.label = F.name();
  if (F.is_realized()) m.ambient = F.ambient().parent();
  set_flags(m, F, thompson_data(P, F.p()).J);
  if (m.flags.admitted()) check_constrained(F);
  m.system = iso ? transport_system(F, *iso) : F;
  return m;
}

FamilyMember admit_member(const Subgroup& S, const GroupPtr& G, unsigned p) {
  if (p_part(G->order(), p) != S.order())
    throw Error(ErrorCode::SylowMismatch, "a Sylow " + std::to_string(p) + "-subgroup of " + G->name() +
                                              " has order " + std::to_string(p_part(G->order(), p)) + ", not " +
                                              std::to_string(S.order()));
  return admit_system(S, FusionSystem::realize(G, p));
}

FamilyMember inner_member(const Subgroup& S, unsigned p) {
  FamilyMember m;
  m.label = "F_S(S)";
  m.system = FusionSystem::inner(S, p);
  m.flags.J_normal = m.flags.qd_free = true;
  return m;
}

FamilyMember forced_member(const FusionSystem& F, std::string label) {
  FamilyMember m;
  m.label = std::move(label);
  m.system = F;
  m.flags.J_normal = is_normal_in_F(F, thompson_data(F.S(), F.p()).J).normal;
  if (F.is_realized() && (F.p() == 2 || F.p() == 3))
    m.flags.qd_free = is_fusion_H_free(F, qd_group(F.p())).free;
  m.flags.forced = true;
  return m;
}

CandidateFamily canonical_family(const Subgroup& S, unsigned p, const std::vector<GroupPtr>& extra,
                                 bool use_catalog) {
  CandidateFamily fam;
  fam.S = S;
  fam.p = p;
  fam.members.push_back(inner_member(S, p));
  std::vector<GroupPtr> groups;
  if (use_catalog)
    for (const auto& e : catalog_entries())
      if (e.expected_order <= limits().order) groups.push_back(catalog_group(e.name));
  groups.insert(groups.end(), extra.begin(), extra.end());
  for (const auto& G : groups) {
    if (p_part(G->order(), p) != S.order()) continue;
    try {
      fam.members.push_back(admit_member(S, G, p));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SylowMismatch) throw;
    }
  }
  return fam;
}

// ---------------------------------------------------------------------------

Subgroup compute_W_oneshot(const CandidateFamily& family) {
  const auto& S = family.S;
  const auto td = thompson_data(S, family.p);
  auto W = td.A;
  for (auto i : family.admitted())
    for (const auto& psi : family.members[i].system.homs_to_S(td.J)) W = join(W, psi.image_of(td.A));
  return W;
}

WComputation compute_W_iterative(const CandidateFamily& family) {
  const auto& S = family.S;
  if (S.is_trivial()) throw Error(ErrorCode::HypothesisViolated, "W(S) needs a nontrivial p-group");
  const auto td = thompson_data(S, family.p);
  WComputation c;
  c.J = td.J;
  c.A = td.A;
  c.B = td.B;
  if (!c.A.subset_of(c.B)) throw Error(ErrorCode::SandwichViolated, "Ω(Z(S)) is not inside Ω(Z(J(S)))");

  const auto admitted = family.admitted();
  auto W = c.A;
  c.chain.push_back(W);
  for (bool grew = true; grew;) {
    grew = false;
    for (auto i : admitted) {
      const auto& F = family.members[i].system;
      if (is_normal_in_F(F, W).normal) continue;
      WStep step;
      step.member = i;
      step.before = W;
      auto next = W;
      std::unordered_set<ElementSet, ElementSetHash> seen;
      for (const auto& psi : F.homs_to_S(W)) {
        auto im = psi.image();
        if (!seen.insert(im.bits()).second) continue;
        next = join(next, im);
        step.images.push_back(std::move(im));
      }
      std::sort(step.images.begin(), step.images.end(),
                [](const Subgroup& a, const Subgroup& b) { return canonical_less(a, b); });
      if (!next.subset_of(c.B))
        throw Error(ErrorCode::SandwichViolated, "orbit closure under " + family.members[i].label + " has order " +
                                                     std::to_string(next.order()) + " and leaves Ω(Z(J(S)))");
      if (next == W)
        throw Error(ErrorCode::InternalInconsistency,
                    "W is not normal in " + family.members[i].label + " but its orbit closure does not grow");
      step.after = next;
      W = next;
      c.chain.push_back(W);
      c.steps.push_back(std::move(step));
      grew = true;
      break;
    }
  }
  c.W_iter = W;
  c.W_oneshot = compute_W_oneshot(family);
  if (!c.W_oneshot.subset_of(c.W_iter))
    throw Error(ErrorCode::InternalInconsistency, "one-shot W is not contained in the iterated W");
  c.equal = c.W_oneshot == c.W_iter;
  return c;
}

// ---------------------------------------------------------------------------

namespace {

CandidateFamily transported(const CandidateFamily& fam, const GroupMorphism& alpha) {
  CandidateFamily out = fam;
  for (auto& m : out.members) m.system = transport_system(m.system, alpha);
  return out;
}

std::vector<GroupMorphism> aut_generators(const Subgroup& S, const std::vector<GroupMorphism>& auts) {
  const auto& el = S.elements();
  std::map<Permutation, std::size_t> index;
  std::vector<Permutation> perms;
  for (std::size_t k = 0; k < auts.size(); ++k) {
    Permutation perm(el.size());
    for (std::size_t i = 0; i < el.size(); ++i)
      perm[i] = static_cast<std::uint16_t>(std::lower_bound(el.begin(), el.end(), auts[k](el[i])) - el.begin());
    index.emplace(perm, k);
    perms.push_back(std::move(perm));
  }
  auto A = group_from_permutations(el.size(), perms, "Aut(S)");
  std::vector<GroupMorphism> gens;
  for (auto x : small_generating_set(whole_group(A))) gens.push_back(auts[index.at(*A->permutation_of(x))]);
  return gens;
}

}  // namespace

FunctorReport functor_checks(const Subgroup& S, const CandidateFamily& family) {
  FunctorReport r;
  if (S.is_trivial()) {
    r.vacuous = true;
    return r;
  }
  if (!(S == family.S) || !S.same_parent(family.S))
    throw Error(ErrorCode::CarrierMismatch, "family lives on a different carrier");
  const auto c = compute_W_iterative(family);
  r.W = c.W_iter;
  const auto auts = automorphisms(S);
  r.aut_order = auts.size();
  r.characteristic_iter = is_characteristic(c.W_iter, auts);
  r.characteristic_oneshot = is_characteristic(c.W_oneshot, auts);
  r.nontrivial = !c.W_iter.is_trivial();
  r.oneshot_in_iter = c.W_oneshot.subset_of(c.W_iter);
  r.equal = c.equal;

  auto reversed = family;
  std::reverse(reversed.members.begin(), reversed.members.end());
  auto rotated = family;
  std::rotate(rotated.members.begin(), rotated.members.begin() + 1, rotated.members.end());
  r.permutation_independent =
      compute_W_iterative(reversed).W_iter == r.W && compute_W_iterative(rotated).W_iter == r.W;

  r.realization_independent = true;
  auto closed = family;
  for (const auto& alpha : aut_generators(S, auts)) {
    auto moved = transported(family, alpha);
    if (!(compute_W_iterative(moved).W_iter == r.W)) r.realization_independent = false;
    closed.members.insert(closed.members.end(), moved.members.begin(), moved.members.end());
  }
  r.aut_closure_stable = compute_W_iterative(closed).W_iter == r.W;
  return r;
}

}  // namespace fusionlab
