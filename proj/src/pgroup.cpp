#include "fusionlab/pgroup.hpp"

namespace fusionlab {

ThompsonData thompson_data(const Subgroup& S, unsigned p) {
  if (!is_p_group(S.order(), p))
    throw Error(ErrorCode::NotAPGroup, "order " + std::to_string(S.order()) + " is not a power of " + std::to_string(p));
  ThompsonData d;
  d.S = S;
  d.p = p;
  for (const auto& H : subgroups_of(S)) {
    if (!is_abelian(H)) continue;
    if (H.order() > d.max_abelian_order) {
      d.max_abelian_order = H.order();
      d.max_abelian_subgroups.clear();
    }
    if (H.order() == d.max_abelian_order) d.max_abelian_subgroups.push_back(H);
  }
  d.J = d.max_abelian_subgroups.front();
  for (const auto& H : d.max_abelian_subgroups) d.J = join(d.J, H);
  d.A = omega1(center(S), p);
  d.B = omega1(center(d.J), p);
  return d;
}

bool is_characteristic(const Subgroup& W, const std::vector<GroupMorphism>& aut_S) {
  for (const auto& a : aut_S)
    for (Elem w : W.elements())
      if (!W.contains(a(w))) return false;
  return true;
}

bool is_characteristic(const Subgroup& W, const Subgroup& S) {
  if (!W.subset_of(S)) throw Error(ErrorCode::NotASubgroup, "W is not contained in S");
  return is_characteristic(W, automorphisms(S));
}

}  // namespace fusionlab
