#pragma once

// Subsystems and quotients of a fusion system, normality, O_p(F) and the
// constrained model of a realized system at a centric subgroup.

#include <optional>
#include <string_view>
#include <vector>

#include "fusionlab/fusion.hpp"

namespace fusionlab {

enum class SubsystemKind { Normalizer, Centralizer, Mixed, Product, Quotient };
std::string_view to_string(SubsystemKind k);
std::optional<SubsystemKind> parse_subsystem_kind(std::string_view s);

/// N_F(Q) on N_S(Q). Saturation is verified when Q is fully normalized,
/// otherwise left unchecked.
FusionSystem normalizer_system(const FusionSystem& F, const Subgroup& Q);

/// Centralizer: C_F(Q) on C_S(Q).
/// Mixed: N_S(Q)C_F(Q) on N_S(Q) (morphisms restricting to some c_x, x ∈ N_S(Q), on Q).
/// Product: S·C_F(Q), the mixed system when Q is normal in F; throws NotNormalInF otherwise.
/// Saturation is verified when Q is fully centralized.
FusionSystem centralizer_like_system(const FusionSystem& F, const Subgroup& Q, SubsystemKind kind);

struct QuotientSystem {
  FusionSystem system;   // on S/Q
  ExtractedGroup S_ext;  // S as a standalone group
  QuotientGroup quotient;  // S_ext / Q
  /// Subgroup of S containing Q for a subgroup of S/Q.
  Subgroup preimage(const Subgroup& Pbar) const;
  Subgroup image(const Subgroup& P) const;
};
/// F/Q; throws NotNormalInF unless Q is normal in F.
QuotientSystem quotient_system(const FusionSystem& F, const Subgroup& Q);

/// Smallest category on the common carrier containing every part, closed
/// under restriction, composition and inverses. Throws CarrierMismatch.
FusionSystem generated_system(const std::vector<FusionSystem>& parts);

struct NormalityResult {
  bool normal = false;
  std::optional<GroupMorphism> counterexample;  // a morphism with no W-preserving extension
};
NormalityResult is_normal_in_F(const FusionSystem& F, const Subgroup& W);

/// Largest subgroup of S normal in F; throws JoinNotNormal if the join fails the test.
Subgroup o_p_of_F(const FusionSystem& F);

/// True iff Q is fully normalized in F (largest |N_S| in its F-class).
bool is_fully_normalized(const FusionSystem& F, const Subgroup& Q);
bool is_centric(const FusionSystem& F, const Subgroup& Q);

struct ModelGroup {
  GroupPtr L;                 // N_G(Q) / O_p'(C_G(Q))
  ExtractedGroup normalizer;  // N_G(Q) as a standalone group
  QuotientGroup quotient;     // normalizer.group -> L
  Subgroup Q_image;
  Subgroup NSQ_image;
  Subgroup ZQ_image;
  std::size_t op_prime_order = 0;  // |O_p'(C_G(Q))|
};
/// Throws NotCentric, ModelValidationFailed (also for explicit systems).
ModelGroup model_group(const FusionSystem& F, const Subgroup& Q);

struct StraightenedChain {
  GroupMorphism phi;             // N_S(W_n) -> S
  std::vector<Subgroup> images;  // φ(W_1), ..., φ(W_n)
};
/// Throws ChainConditionViolated if W_{i+1} is not characteristic in N_S(W_i)
/// or W_i (i < n) is not fully normalized.
StraightenedChain straighten_chain(const FusionSystem& F, const std::vector<Subgroup>& chain);

}  // namespace fusionlab
