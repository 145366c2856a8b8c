#pragma once

// H-freeness of groups and of realized fusion systems.

#include <optional>
#include <utility>
#include <vector>

#include "fusionlab/fusion.hpp"

namespace fusionlab {

/// (Z_p x Z_p):SL(2,p) acting on the p^2 vectors; p must be 2 or 3.
GroupPtr qd_group(unsigned p);

struct HFreeReport {
  bool free = true;
  std::optional<Subgroup> Q;        // subgroup of S whose model involves H
  GroupPtr model;                   // the group in which the section lives
  std::optional<Section> section;   // B/A ≅ H inside `model`
  std::vector<Subgroup> examined;   // centric, radical, fully normalized subgroups
};

HFreeReport is_group_H_free(const GroupPtr& G, const GroupPtr& H);
/// Tests H against the model L_Q for every centric, radical, fully normalized Q.
HFreeReport is_fusion_H_free(const FusionSystem& F, const GroupPtr& H);

/// (Σ4 involved in G, some nonidentity 2-subgroup Q has Σ3 involved in N_G(Q)/C_G(Q)).
/// Throws InternalInconsistency when the two disagree.
std::pair<bool, bool> sigma3_involvement_check(const GroupPtr& G);

/// (G is Σ4-free, G/O_2(G) is Σ3-free). Throws HypothesisViolated unless
/// C_G(O_2(G)) ≤ O_2(G), InternalInconsistency when the two disagree.
std::pair<bool, bool> remark67_check(const GroupPtr& G);

/// N_G(Q)/C_G(Q) as a standalone group.
GroupPtr automizer_in_group(const Subgroup& G, const Subgroup& Q);

}  // namespace fusionlab
