#include "fusionlab/subsystems.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fusionlab/pgroup.hpp"

namespace fusionlab {

std::string_view to_string(SubsystemKind k) {
  switch (k) {
    case SubsystemKind::Normalizer: return "normalizer";
    case SubsystemKind::Centralizer: return "centralizer";
    case SubsystemKind::Mixed: return "mixed";
    case SubsystemKind::Product: return "product";
    case SubsystemKind::Quotient: return "quotient";
  }
  return "?";
}

std::optional<SubsystemKind> parse_subsystem_kind(std::string_view s) {
  for (auto k : {SubsystemKind::Normalizer, SubsystemKind::Centralizer, SubsystemKind::Mixed, SubsystemKind::Product,
                 SubsystemKind::Quotient})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

namespace {

bool agrees_on(const GroupMorphism& a, const GroupMorphism& b, const Subgroup& P) {
  for (auto x : P.elements())
    if (a(x) != b(x)) return false;
  return true;
}

bool preserves(const GroupMorphism& phi, const Subgroup& W) {
  for (auto w : W.elements())
    if (!W.contains(phi(w))) return false;
  return true;
}

// Morphisms R -> carrier for R ≤ carrier, obtained by restricting those
// φ̂ ∈ Hom_F(QR, S) with φ̂(Q) = Q and keep(φ̂|_Q).
template <typename Keep>
FusionSystem restricted_system(const FusionSystem& F, const Subgroup& Q, const Subgroup& carrier, Keep keep,
                               std::string name) {
  FusionSystem::HomTable table;
  for (const auto& R : subgroups_of(carrier)) {
    auto QR = join(Q, R);
    std::vector<GroupMorphism> maps;
    for (const auto& hat : F.homs_to_S(QR)) {
      if (!preserves(hat, Q) || !keep(hat)) continue;
      auto phi = hat.restrict_to(R).with_codomain(carrier);
      bool inside = true;
      for (auto x : R.elements()) inside = inside && carrier.contains(phi(x));
      if (inside) maps.push_back(std::move(phi));
    }
    table.emplace(R.bits(), std::move(maps));
  }
  return FusionSystem::from_homs(carrier, F.p(), std::move(table), std::move(name));
}

FusionSystem with_axiom_status(const FusionSystem& sys, bool check) {
  if (!check) return sys.with_saturation(Saturation::Unchecked);
  return sys.with_saturation(verify_axioms(sys).ok ? Saturation::Verified : Saturation::Failed);
}

}  // namespace

bool is_fully_normalized(const FusionSystem& F, const Subgroup& Q) {
  const auto n = normalizer(F.S(), Q).order();
  for (const auto& R : F.conjugacy_class(Q))
    if (normalizer(F.S(), R).order() > n) return false;
  return true;
}

static bool is_fully_centralized(const FusionSystem& F, const Subgroup& Q) {
  const auto n = centralizer(F.S(), Q).order();
  for (const auto& R : F.conjugacy_class(Q))
    if (centralizer(F.S(), R).order() > n) return false;
  return true;
}

bool is_centric(const FusionSystem& F, const Subgroup& Q) {
  for (const auto& R : F.conjugacy_class(Q))
    if (!centralizer(F.S(), R).subset_of(R)) return false;
  return true;
}

FusionSystem normalizer_system(const FusionSystem& F, const Subgroup& Qin) {
  const auto& Q = F.subgroups()[F.index_of(Qin)];
  auto sys = restricted_system(
      F, Q, normalizer(F.S(), Q), [](const GroupMorphism&) { return true; }, "N_F(Q)");
  return with_axiom_status(sys, is_fully_normalized(F, Q));
}

FusionSystem centralizer_like_system(const FusionSystem& F, const Subgroup& Qin, SubsystemKind kind) {
  const auto& Q = F.subgroups()[F.index_of(Qin)];
  const auto& S = F.S();
  if (kind == SubsystemKind::Centralizer) {
    auto sys = restricted_system(
        F, Q, centralizer(S, Q), [&](const GroupMorphism& hat) { return agrees_on(hat, GroupMorphism::identity(Q), Q); },
        "C_F(Q)");
    return with_axiom_status(sys, is_fully_centralized(F, Q));
  }
  if (kind == SubsystemKind::Mixed || kind == SubsystemKind::Product) {
    if (kind == SubsystemKind::Product && !is_normal_in_F(F, Q).normal)
      throw Error(ErrorCode::NotNormalInF, "S C_F(Q) needs Q normal in F");
    const auto NQ = normalizer(S, Q);
    std::set<std::vector<Elem>> inner;
    for (auto x : NQ.elements()) inner.insert(map_key(GroupMorphism::conjugation(Q, x, Q)));
    auto sys = restricted_system(
        F, Q, NQ, [&](const GroupMorphism& hat) { return inner.count(map_key(hat.restrict_to(Q))) > 0; },
        kind == SubsystemKind::Product ? "S C_F(Q)" : "N_S(Q) C_F(Q)");
    return with_axiom_status(sys, is_fully_centralized(F, Q));
  }
  throw Error(ErrorCode::InternalInconsistency, "unsupported subsystem kind");
}

// ---------------------------------------------------------------------------
// Quotients

Subgroup QuotientSystem::preimage(const Subgroup& Pbar) const { return S_ext.lift(quotient.preimage(Pbar)); }

Subgroup QuotientSystem::image(const Subgroup& P) const { return quotient.image_of(S_ext.lower(P)); }

QuotientSystem quotient_system(const FusionSystem& F, const Subgroup& Qin) {
  const auto& Q = F.subgroups()[F.index_of(Qin)];
  if (!is_normal_in_F(F, Q).normal) throw Error(ErrorCode::NotNormalInF, "quotient needs Q normal in F");
  QuotientSystem out;
  out.S_ext = extract(F.S(), F.S().group().name() + "_S");
  out.quotient = quotient_group(out.S_ext.group, out.S_ext.lower(Q));
  const auto& bar = out.quotient.group;
  const auto Sbar = whole_group(bar);
  FusionSystem::HomTable table;
  for (const auto& Pbar : subgroup_lattice(bar)) {
    const auto P = out.preimage(Pbar);
    std::vector<GroupMorphism> maps;
    for (const auto& phi : F.homs_to_S(P)) {
      std::vector<Elem> img(bar->order(), kNoElem);
      bool consistent = true;
      for (auto x : P.elements()) {
        Elem xb = out.quotient.projection[out.S_ext.from_parent[x]];
        Elem yb = out.quotient.projection[out.S_ext.from_parent[phi(x)]];
        if (img[xb] != kNoElem && img[xb] != yb) consistent = false;
        img[xb] = yb;
      }
      if (!consistent) throw Error(ErrorCode::InternalInconsistency, "morphism does not preserve Q");
      maps.emplace_back(Pbar, Sbar, std::move(img));
    }
    table.emplace(Pbar.bits(), std::move(maps));
  }
  out.system = FusionSystem::from_homs(Sbar, F.p(), std::move(table), "F/Q");
  return out;
}

// ---------------------------------------------------------------------------
// Generated systems

FusionSystem generated_system(const std::vector<FusionSystem>& parts) {
  if (parts.empty()) throw Error(ErrorCode::CarrierMismatch, "no systems given");
  const auto& base = parts.front();
  for (const auto& F : parts)
    if (!(F.S() == base.S()) || !F.S().same_parent(base.S()) || F.p() != base.p())
      throw Error(ErrorCode::CarrierMismatch, "systems live on different carriers");
  const auto& S = base.S();
  const auto& subs = base.subgroups();
  const std::size_t n = subs.size();

  std::vector<std::map<std::vector<Elem>, GroupMorphism>> homs(n);
  std::vector<std::vector<GroupMorphism>> by_image(n);
  std::vector<GroupMorphism> work;

  auto add = [&](GroupMorphism m) {
    const auto i = base.index_of(m.domain());
    auto key = map_key(m);
    if (homs[i].count(key)) return;
    m = GroupMorphism(subs[i], S, m.table());
    homs[i].emplace(std::move(key), m);
    by_image[base.index_of(m.image())].push_back(m);
    work.push_back(std::move(m));
  };

  for (const auto& P : subs) add(GroupMorphism::inclusion(P, S));
  for (const auto& F : parts)
    for (const auto& P : subs)
      for (const auto& m : F.homs_to_S(P)) add(m);

  while (!work.empty()) {
    auto phi = std::move(work.back());
    work.pop_back();
    const auto& P = phi.domain();
    const auto i = base.index_of(P);
    const auto im = base.index_of(phi.image());
    for (const auto& R : subs)
      if (R.subset_of(P) && !(R == P)) add(phi.restrict_to(R));
    auto inv = phi.inverse();
    add(GroupMorphism(subs[im], S, inv.table()));
    std::vector<GroupMorphism> outer;
    for (const auto& [k, psi] : homs[im]) outer.push_back(psi);
    for (const auto& psi : outer) add(compose(psi, phi));
    auto inner = by_image[i];
    for (const auto& chi : inner) add(compose(phi, chi));
  }

  FusionSystem::HomTable table;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<GroupMorphism> maps;
    for (auto& [k, m] : homs[i]) maps.push_back(m);
    table.emplace(subs[i].bits(), std::move(maps));
  }
  return FusionSystem::from_homs(S, base.p(), std::move(table), "generated");
}

// ---------------------------------------------------------------------------
// Normality

NormalityResult is_normal_in_F(const FusionSystem& F, const Subgroup& Win) {
  NormalityResult r;
  const auto& S = F.S();
  const auto& W = F.subgroups()[F.index_of(Win)];
  if (!is_normal(W, S)) {
    for (auto s : S.elements())
      if (!(conjugate(W, s) == W)) {
        r.counterexample = GroupMorphism::conjugation(S, s, S);
        break;
      }
    return r;
  }
  for (const auto& P : F.subgroups()) {
    const auto WP = join(W, P);
    const auto& ext = F.homs_to_S(WP);
    for (const auto& phi : F.homs_to_S(P)) {
      bool found = false;
      for (const auto& hat : ext) {
        if (agrees_on(hat, phi, P) && preserves(hat, W)) {
          found = true;
          break;
        }
      }
      if (!found) {
        r.counterexample = phi;
        return r;
      }
    }
  }
  r.normal = true;
  return r;
}

Subgroup o_p_of_F(const FusionSystem& F) {
  const auto& S = F.S();
  Subgroup acc = trivial_subgroup(S.parent());
  for (const auto& W : F.subgroups()) {
    if (W.subset_of(acc) || !is_normal(W, S)) continue;
    if (is_normal_in_F(F, W).normal) acc = join(acc, W);
  }
  if (!is_normal_in_F(F, acc).normal)
    throw Error(ErrorCode::JoinNotNormal, "join of normal subgroups is not normal in F");
  return F.subgroups()[F.index_of(acc)];
}

// ---------------------------------------------------------------------------
// Models

ModelGroup model_group(const FusionSystem& F, const Subgroup& Qin) {
  if (!F.is_realized()) throw Error(ErrorCode::ModelValidationFailed, "model needs a realized system");
  const auto& Q = F.subgroups()[F.index_of(Qin)];
  const unsigned p = F.p();
  if (!is_centric(F, Q)) throw Error(ErrorCode::NotCentric, "subgroup of order " + std::to_string(Q.order()));
  auto fail = [](const std::string& what) { return Error(ErrorCode::ModelValidationFailed, what); };

  const auto& G = F.ambient();
  const auto NG = normalizer(G, Q);
  const auto CG = centralizer(G, Q);
  const auto K = o_p_prime(CG, p);
  const auto ZQ = center(Q);
  if (CG.order() != ZQ.order() * K.order() || !intersect(ZQ, K).is_trivial())
    throw fail("C_G(Q) is not Z(Q) x O_p'(C_G(Q))");

  ModelGroup m;
  m.op_prime_order = K.order();
  m.normalizer = extract(NG, "N_G(Q)");
  m.quotient = quotient_group(m.normalizer.group, m.normalizer.lower(K));
  m.L = m.quotient.group;
  auto image = [&](const Subgroup& H) { return m.quotient.image_of(m.normalizer.lower(H)); };
  m.Q_image = image(Q);
  m.NSQ_image = image(normalizer(F.S(), Q));
  m.ZQ_image = image(ZQ);
  const auto Lw = whole_group(m.L);
  if (!o_p_prime(Lw, p).is_trivial()) throw fail("O_p'(L) is not trivial");
  if (!is_normal(m.Q_image, Lw)) throw fail("Q is not normal in L");
  if (m.NSQ_image.order() != p_part(m.L->order(), p)) throw fail("N_S(Q) is not Sylow in L");
  auto LZ = quotient_group(m.L, m.ZQ_image);
  auto A = automizer(F, Q);
  if (!is_isomorphic(LZ.group, A.aut).isomorphic) throw fail("L/Z(Q) is not isomorphic to Aut_F(Q)");
  return m;
}

// ---------------------------------------------------------------------------
// Chains

StraightenedChain straighten_chain(const FusionSystem& F, const std::vector<Subgroup>& chain) {
  if (chain.empty()) throw Error(ErrorCode::ChainConditionViolated, "empty chain");
  const auto& S = F.S();
  const std::size_t n = chain.size();
  std::vector<Subgroup> W;
  for (const auto& X : chain) W.push_back(F.subgroups()[F.index_of(X)]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto N = normalizer(S, W[i]);
    if (!W[i + 1].subset_of(N) || !is_characteristic(W[i + 1], N))
      throw Error(ErrorCode::ChainConditionViolated, "term " + std::to_string(i + 2) +
                                                         " is not characteristic in the normalizer of the previous term");
    if (!is_fully_normalized(F, W[i]))
      throw Error(ErrorCode::ChainConditionViolated, "term " + std::to_string(i + 1) + " is not fully normalized");
  }

  // A morphism defined on N_S(W_n) moving W_n to a fully normalized conjugate.
  const auto& Q = W.back();
  const auto NQ = F.subgroups()[F.index_of(normalizer(S, Q))];
  std::optional<GroupMorphism> psi;
  for (const auto& m : F.homs_to_S(Q))
    if (is_fully_normalized(F, m.image())) {
      psi = m;
      break;
    }
  if (!psi) throw Error(ErrorCode::InternalInconsistency, "no fully normalized conjugate");
  const auto R = F.subgroups()[F.index_of(psi->image())];
  const auto A = automizer(F, R);
  const auto psi_inv = psi->inverse();
  std::vector<Elem> X;
  for (auto x : NQ.elements()) {
    auto c = compose(*psi, compose(GroupMorphism::conjugation(Q, x, Q), psi_inv));
    X.push_back(A.element_of(GroupMorphism(R, R, c.table())));
  }
  std::optional<GroupMorphism> alpha;
  for (Elem t = 0; t < A.aut->order() && !alpha; ++t) {
    bool ok = true;
    for (auto x : X) ok = ok && A.aut_S.contains(A.aut->conj(A.aut->inv(t), x));
    if (ok) alpha = compose(A.maps[t], *psi);
  }
  if (!alpha) throw Error(ErrorCode::InternalInconsistency, "Aut_S(R) is not Sylow in Aut_F(R)");
  std::optional<GroupMorphism> phi;
  for (const auto& m : F.homs_to_S(NQ))
    if (agrees_on(m, *alpha, Q)) {
      phi = m;
      break;
    }
  if (!phi) throw Error(ErrorCode::InternalInconsistency, "no extension to N_S(Q)");

  StraightenedChain out;
  out.phi = *phi;
  for (std::size_t i = 0; i < n; ++i) {
    auto img = F.subgroups()[F.index_of(phi->image_of(W[i]))];
    if (!is_fully_normalized(F, img) || !(phi->image_of(normalizer(S, W[i])) == normalizer(S, img)))
      throw Error(ErrorCode::InternalInconsistency, "image of term " + std::to_string(i + 1) + " is not well placed");
    out.images.push_back(img);
  }
  return out;
}

}  // namespace fusionlab
