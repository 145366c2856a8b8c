#pragma once

// Thompson subgroup and the two Omega-center subgroups of a p-group.

#include <vector>

#include "fusionlab/group.hpp"

namespace fusionlab {

struct ThompsonData {
  Subgroup S;
  unsigned p = 0;
  std::size_t max_abelian_order = 0;
  std::vector<Subgroup> max_abelian_subgroups;  // canonical order
  Subgroup J;
  Subgroup A;  // Ω(Z(S))
  Subgroup B;  // Ω(Z(J(S)))
};

/// Throws NotAPGroup unless |S| is a power of p.
ThompsonData thompson_data(const Subgroup& S, unsigned p);

/// True iff α(W) = W for every automorphism α of S.
bool is_characteristic(const Subgroup& W, const Subgroup& S);
/// Same, with Aut(S) already enumerated.
bool is_characteristic(const Subgroup& W, const std::vector<GroupMorphism>& aut_S);

}  // namespace fusionlab
