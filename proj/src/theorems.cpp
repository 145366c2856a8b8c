#include "fusionlab/theorems.hpp"

#include "fusionlab/catalog.hpp"
#include "fusionlab/hfree.hpp"
#include "fusionlab/subsystems.hpp"

namespace fusionlab {

std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T1: return "T1";
    case TheoremId::T2: return "T2";
    case TheoremId::T3: return "T3";
    case TheoremId::Frobenius: return "frobenius";
    case TheoremId::Thompson: return "thompson";
  }
  return "?";
}

std::optional<TheoremId> parse_theorem_id(std::string_view s) {
  if (s == "1" || s == "T1") return TheoremId::T1;
  if (s == "2" || s == "T2") return TheoremId::T2;
  if (s == "3" || s == "T3") return TheoremId::T3;
  if (s == "frobenius") return TheoremId::Frobenius;
  if (s == "thompson") return TheoremId::Thompson;
  return std::nullopt;
}

namespace {

std::string order_str(const Subgroup& H) { return "order " + std::to_string(H.order()); }

std::string instance_name(const FusionSystem& F) { return F.name() + " p=" + std::to_string(F.p()); }

// The family on F.S(), extended by F when F is admitted.
CandidateFamily family_for(const FusionSystem& F, const std::optional<CandidateFamily>& family,
                           std::vector<std::string>& diag) {
  auto fam = family ? *family : canonical_family(F.S(), F.p());
  if (!(fam.S == F.S()) || !fam.S.same_parent(F.S()))
    throw Error(ErrorCode::CarrierMismatch, "family carrier differs from the carrier of F");
  auto self = admit_system(fam.S, F);
  diag.push_back("F admitted to the family: " + std::string(self.flags.admitted() ? "yes" : "no") +
                 (self.rejection.empty() ? "" : " (" + self.rejection + ")"));
  if (self.flags.admitted()) fam.members.push_back(std::move(self));
  return fam;
}

// Proof-route diagnostics; when F is constrained, W must also be normal in
// the fusion system of the model at O_p(F).
void constrained_route(const FusionSystem& F, const Subgroup& W, bool normal, TheoremReport& r) {
  const auto Q = o_p_of_F(F);
  r.diagnostics.push_back("O_p(F) has " + order_str(Q));
  if (Q.is_trivial() || !is_centric(F, Q)) {
    r.diagnostics.push_back("F is not constrained");
    return;
  }
  const auto m = model_group(F, Q);
  const auto FL = FusionSystem::realize(m.L, F.p(), m.NSQ_image);
  const auto WL = m.quotient.image_of(m.normalizer.lower(W));
  const bool model_normal = is_normal_in_F(FL, WL).normal;
  r.diagnostics.push_back("model L has order " + std::to_string(m.L->order()) + "; W normal in F_S(L): " +
                          (model_normal ? "yes" : "no"));
  if (model_normal != normal)
    throw Error(ErrorCode::InternalInconsistency, "normality of W differs between F and its model");
}

TheoremReport w_normality(TheoremId id, const FusionSystem& F, const GroupPtr& H, const std::string& hname,
                          const std::optional<CandidateFamily>& family) {
  TheoremReport r;
  r.id = id;
  r.p = F.p();
  r.instance = instance_name(F);
  const auto hf = is_fusion_H_free(F, H);
  r.hypotheses.push_back({hname + "-free", hf.free,
                          hf.free ? std::to_string(hf.examined.size()) + " models examined"
                                  : "model at a subgroup of " + order_str(*hf.Q) + " involves " + hname});
  r.hypotheses_hold = hf.free;
  const auto fam = family_for(F, family, r.diagnostics);
  const auto c = compute_W_iterative(fam);
  r.W = c.W_iter;
  const auto nr = is_normal_in_F(F, c.W_iter);
  std::string detail = "W has " + order_str(c.W_iter) + ", chain length " + std::to_string(c.steps.size());
  if (!nr.normal) {
    detail += nr.counterexample ? "; a map on a subgroup of " + order_str(nr.counterexample->domain()) +
                                      " has no W-preserving extension"
                                : "; W is not normal in S";
  }
  r.conclusions.push_back({"W normal in F", nr.normal, detail});
  r.conclusion_holds = nr.normal;
  if (hf.free) constrained_route(F, c.W_iter, nr.normal, r);
  return r;
}

}  // namespace

TheoremReport verify_theorem_1(const FusionSystem& F, const std::optional<CandidateFamily>& family) {
  if (F.p() != 2) throw Error(ErrorCode::HypothesisViolated, "the Σ4-free statement is for p = 2");
  return w_normality(TheoremId::T1, F, catalog_group("S4"), "S4", family);
}

TheoremReport verify_theorem_2(const FusionSystem& F, const std::optional<CandidateFamily>& family) {
  if (F.p() == 2) {
    auto r = verify_theorem_1(F, family);
    r.id = TheoremId::T2;
    return r;
  }
  const auto qd = qd_group(F.p());
  return w_normality(TheoremId::T2, F, qd, qd->name(), family);
}

TheoremReport verify_theorem_3(const FusionSystem& F, const std::optional<CandidateFamily>& family) {
  if (F.p() % 2 == 0) throw Error(ErrorCode::HypothesisViolated, "the trivial-fusion criterion is for odd p");
  TheoremReport r;
  r.id = TheoremId::T3;
  r.p = F.p();
  r.instance = instance_name(F);
  const auto fam = family_for(F, family, r.diagnostics);
  const auto W = compute_W_iterative(fam).W_iter;
  r.W = W;
  const auto trivial = FusionSystem::inner(F.S(), F.p());
  const auto diff = F.first_difference(trivial);
  const auto N = normalizer_system(F, W);
  const bool n_trivial = N.S() == F.S() && N.same_morphisms(trivial);
  r.conclusions.push_back({"F = F_S(S)", !diff.has_value(),
                           diff ? "extra morphisms on a subgroup of " + order_str(*diff) : std::string()});
  r.conclusions.push_back({"N_F(W) = F_S(S)", n_trivial, "W has " + order_str(W)});
  r.conclusion_holds = !diff.has_value() == n_trivial;
  if (!r.conclusion_holds)
    throw Error(ErrorCode::InternalInconsistency, "trivial-fusion criterion fails for " + r.instance);
  return r;
}

bool has_normal_p_complement(const Subgroup& H, unsigned p) {
  return o_p_prime(H, p).order() == H.order() / p_part(H.order(), p);
}

bool has_normal_p_complement(const GroupPtr& G, unsigned p) { return has_normal_p_complement(whole_group(G), p); }

TheoremReport frobenius_check(const GroupPtr& G, unsigned p) {
  TheoremReport r;
  r.id = TheoremId::Frobenius;
  r.p = p;
  r.instance = G->name() + " p=" + std::to_string(p);
  const auto Gw = whole_group(G);
  const auto S = sylow(G, p);

  r.conclusions.push_back({"normal p-complement", has_normal_p_complement(Gw, p), {}});

  Check b{"N_G(Q)/C_G(Q) is a p-group", true, {}};
  Check c{"N_G(Q) has a normal p-complement", true, {}};
  for (const auto& Q : subgroups_of(S)) {
    if (Q.is_trivial()) continue;
    const auto N = normalizer(Gw, Q);
    if (b.holds && !is_p_group(N.order() / centralizer(Gw, Q).order(), p)) {
      b.holds = false;
      b.detail = "fails at a subgroup of " + order_str(Q);
    }
    if (c.holds && !has_normal_p_complement(N, p)) {
      c.holds = false;
      c.detail = "fails at a subgroup of " + order_str(Q);
    }
  }
  r.conclusions.push_back(b);
  r.conclusions.push_back(c);

  const auto F = FusionSystem::realize(G, p, S);
  const auto diff = F.first_difference(FusionSystem::inner(S, p));
  r.conclusions.push_back({"F_S(G) = F_S(S)", !diff.has_value(),
                           diff ? "hom-sets differ on a subgroup of " + order_str(*diff) : std::string()});

  r.conclusion_holds = true;
  for (const auto& x : r.conclusions) r.conclusion_holds = r.conclusion_holds && x.holds == r.conclusions[0].holds;
  if (!r.conclusion_holds)
    throw Error(ErrorCode::InternalInconsistency, "normal p-complement conditions disagree for " + r.instance);
  return r;
}

TheoremReport thompson_group_check(const GroupPtr& G, unsigned p, const std::optional<CandidateFamily>& family) {
  if (p % 2 == 0) throw Error(ErrorCode::HypothesisViolated, "the normal p-complement criterion is for odd p");
  TheoremReport r;
  r.id = TheoremId::Thompson;
  r.p = p;
  r.instance = G->name() + " p=" + std::to_string(p);
  const auto F = FusionSystem::realize(G, p);
  const auto fam = family_for(F, family, r.diagnostics);
  const auto W = compute_W_iterative(fam).W_iter;
  r.W = W;
  const auto NW = normalizer(whole_group(G), W);
  const bool lhs = has_normal_p_complement(G, p);
  const bool rhs = has_normal_p_complement(NW, p);
  r.conclusions.push_back({"G has a normal p-complement", lhs, {}});
  r.conclusions.push_back({"N_G(W) has a normal p-complement", rhs, "N_G(W) has " + order_str(NW)});
  r.conclusion_holds = lhs == rhs;
  if (!r.conclusion_holds)
    throw Error(ErrorCode::InternalInconsistency, "normal p-complement criterion fails for " + r.instance);
  return r;
}

}  // namespace fusionlab
