#pragma once

// The characteristic subgroup W(S) relative to a finite family of fusion
// systems on S. W_iter grows Ω(Z(S)) by orbit closure until it is normal in
// every admitted member; W_oneshot is generated by the images of Ω(Z(S))
// under Hom_F(J(S), S).

#include <optional>
#include <string>
#include <vector>

#include "fusionlab/fusion.hpp"

namespace fusionlab {

struct MemberFlags {
  bool J_normal = false;
  bool qd_free = false;
  bool forced = false;  // admitted regardless of the flags (test fixtures)
  bool admitted() const { return forced || (J_normal && qd_free); }
};

struct FamilyMember {
  FusionSystem system;  // on the family carrier S
  std::string label;
  MemberFlags flags;
  std::string rejection;  // empty when admitted
  GroupPtr ambient;       // realizing group, if any
};

struct CandidateFamily {
  Subgroup S;
  unsigned p = 0;
  std::vector<FamilyMember> members;

  std::vector<std::size_t> admitted() const;
};

/// The explicit system on iso.codomain() with morphisms iso ∘ φ ∘ iso^-1.
/// `iso` must be an isomorphism from F.S() onto a p-group.
FusionSystem transport_system(const FusionSystem& F, const GroupMorphism& iso);

/// Realizes F_P(G) for a Sylow P of G, identifies P with S, and computes the
/// two flags (J(S) normal in F, F is Qd(p)-free). For admitted members the
/// model at O_p(F) is built and C_L(O_p(L)) ≤ O_p(L) is checked.
/// Throws SylowMismatch when no isomorphism P -> S exists.
FamilyMember admit_member(const Subgroup& S, const GroupPtr& G, unsigned p);

/// Same for a realized system given directly; identified with S when its
/// carrier is a different (isomorphic) subgroup.
FamilyMember admit_system(const Subgroup& S, const FusionSystem& F);

/// F_S(S) as an admitted member.
FamilyMember inner_member(const Subgroup& S, unsigned p);

/// Forced member for fixtures: the flags are computed but ignored.
FamilyMember forced_member(const FusionSystem& F, std::string label);

/// F_S(S) followed by admit_member for every catalog group (when
/// `use_catalog`) and every extra group whose Sylow p-subgroup is isomorphic
/// to S. Rejected members are kept for reporting.
CandidateFamily canonical_family(const Subgroup& S, unsigned p, const std::vector<GroupPtr>& extra = {},
                                 bool use_catalog = true);

struct WStep {
  std::size_t member = 0;        // index into family.members
  Subgroup before;
  Subgroup after;
  std::vector<Subgroup> images;  // distinct ψ(before), ψ ∈ Hom_F(before, S)
};

struct WComputation {
  Subgroup J;
  Subgroup A;  // Ω(Z(S))
  Subgroup B;  // Ω(Z(J(S)))
  std::vector<Subgroup> chain;  // W_0 < W_1 < ... < W_n
  std::vector<WStep> steps;
  Subgroup W_iter;
  Subgroup W_oneshot;
  bool equal = false;
};

/// Throws HypothesisViolated for trivial S, SandwichViolated if a step leaves
/// Ω(Z(J(S))), InternalInconsistency if a step does not grow or W_oneshot is
/// not contained in W_iter.
WComputation compute_W_iterative(const CandidateFamily& family);
Subgroup compute_W_oneshot(const CandidateFamily& family);

struct FunctorReport {
  bool vacuous = false;  // S trivial
  Subgroup W;
  bool characteristic_iter = false;
  bool characteristic_oneshot = false;
  bool nontrivial = false;
  bool oneshot_in_iter = false;
  bool equal = false;
  bool permutation_independent = false;
  bool realization_independent = false;  // members replaced by Aut(S)-transports
  bool aut_closure_stable = false;       // family closed under Aut(S) generators
  std::size_t aut_order = 0;
  bool ok() const {
    return vacuous || (characteristic_iter && characteristic_oneshot && nontrivial && oneshot_in_iter &&
                       permutation_independent && realization_independent && aut_closure_stable);
  }
};
FunctorReport functor_checks(const Subgroup& S, const CandidateFamily& family);

}  // namespace fusionlab
