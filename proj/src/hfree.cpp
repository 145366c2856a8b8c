#include "fusionlab/hfree.hpp"

#include <map>
#include <mutex>

#include "fusionlab/catalog.hpp"
#include "fusionlab/subsystems.hpp"

namespace fusionlab {

GroupPtr qd_group(unsigned p) {
  if (p != 2 && p != 3) throw Error(ErrorCode::UnsupportedPrime, "Qd(p) is only built for p = 2, 3");
  static std::mutex mutex;
  static std::map<unsigned, GroupPtr> built;
  std::lock_guard lock(mutex);
  if (auto it = built.find(p); it != built.end()) return it->second;
  std::vector<Permutation> gens{affine_permutation(p, {1, 0, 0, 1}, {1, 0}), affine_permutation(p, {1, 0, 0, 1}, {0, 1}),
                                affine_permutation(p, {1, 1, 0, 1}, {0, 0}), affine_permutation(p, {1, 0, 1, 1}, {0, 0})};
  auto G = FiniteGroup::from_permutations(p * p, gens, "Qd" + std::to_string(p));
  built.emplace(p, G);
  return G;
}

HFreeReport is_group_H_free(const GroupPtr& G, const GroupPtr& H) {
  HFreeReport r;
  auto inv = is_involved(H, G);
  if (inv.involved) {
    r.free = false;
    r.model = G;
    r.section = inv.witness;
  }
  return r;
}

HFreeReport is_fusion_H_free(const FusionSystem& F, const GroupPtr& H) {
  HFreeReport r;
  for (const auto& Q : F.subgroups()) {
    auto prof = classify_subgroup(F, Q);
    if (!prof.centric || !prof.radical || !prof.fully_normalized) continue;
    r.examined.push_back(prof.Q);
    if (!r.free) continue;
    auto m = model_group(F, prof.Q);
    auto inv = is_involved(H, m.L);
    if (inv.involved) {
      r.free = false;
      r.Q = prof.Q;
      r.model = m.L;
      r.section = inv.witness;
    }
  }
  return r;
}

GroupPtr automizer_in_group(const Subgroup& G, const Subgroup& Q) {
  auto N = normalizer(G, Q);
  auto ex = extract(N, "N_G(Q)");
  return quotient_group(ex.group, ex.lower(centralizer(G, Q))).group;
}

std::pair<bool, bool> sigma3_involvement_check(const GroupPtr& G) {
  const auto s4 = catalog_group("S4");
  const auto s3 = catalog_group("S3");
  const bool a = is_involved(s4, G).involved;
  bool b = false;
  const auto whole = whole_group(G);
  for (const auto& Q : subgroup_lattice(G)) {
    if (Q.is_trivial() || !is_p_group(Q.order(), 2)) continue;
    if (is_involved(s3, automizer_in_group(whole, Q)).involved) {
      b = true;
      break;
    }
  }
  if (a != b)
    throw Error(ErrorCode::InternalInconsistency, G->name() + ": Σ4 involvement " + (a ? "true" : "false") +
                                                      " but 2-local Σ3 involvement " + (b ? "true" : "false"));
  return {a, b};
}

std::pair<bool, bool> remark67_check(const GroupPtr& G) {
  const auto whole = whole_group(G);
  const auto O2 = o_p(whole, 2);
  if (!centralizer(whole, O2).subset_of(O2))
    throw Error(ErrorCode::HypothesisViolated, G->name() + ": C_G(O_2(G)) is not contained in O_2(G)");
  const bool s4_free = !is_involved(catalog_group("S4"), G).involved;
  const bool s3_free = !is_involved(catalog_group("S3"), quotient_group(G, O2).group).involved;
  if (s4_free != s3_free)
    throw Error(ErrorCode::InternalInconsistency, G->name() + ": Σ4-free " + (s4_free ? "true" : "false") +
                                                      " but G/O_2(G) Σ3-free " + (s3_free ? "true" : "false"));
  return {s4_free, s3_free};
}

}  // namespace fusionlab
