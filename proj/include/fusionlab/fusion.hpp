#pragma once

// Fusion systems on a finite p-group S. A system is either realized by an
// ambient group (morphisms are conjugation maps) or given explicitly by the
// lists Hom_F(P, S) for every P ≤ S; Hom_F(P, R) is the part of Hom_F(P, S)
// with image inside R.

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fusionlab/group.hpp"

namespace fusionlab {

enum class Saturation { Unchecked, Verified, Failed };
std::string_view to_string(Saturation s);

class FusionSystem {
 public:
  using HomTable = std::unordered_map<ElementSet, std::vector<GroupMorphism>, ElementSetHash>;

  FusionSystem() = default;

  /// F_S(G). S defaults to sylow(G, p); a supplied S must have the full p-part order.
  static FusionSystem realize(const GroupPtr& G, unsigned p, const std::optional<Subgroup>& S = std::nullopt);
  /// The category of conjugation maps by elements of `ambient` between subgroups of S.
  /// No Sylow condition: used for subsystems such as N_G(Q) acting on N_S(Q).
  static FusionSystem realize_in(const Subgroup& ambient, unsigned p, const Subgroup& S, std::string name = {});
  /// F_S(S) on the given carrier.
  static FusionSystem inner(const Subgroup& S, unsigned p);
  /// Explicit system. Every list must have domain P and codomain S; lists are canonicalized.
  static FusionSystem from_homs(const Subgroup& S, unsigned p, HomTable homs_to_S, std::string name = {});

  bool valid() const { return impl_ != nullptr; }
  unsigned p() const;
  const Subgroup& S() const;
  const GroupPtr& parent() const { return S().parent(); }
  bool is_realized() const;
  /// Realized by an ambient group in which S is Sylow, so the axioms hold.
  bool saturated_by_construction() const;
  /// The realizing group (realized systems only).
  const Subgroup& ambient() const;
  const std::string& name() const;

  Saturation saturation() const { return saturation_; }
  FusionSystem with_saturation(Saturation s) const;

  /// Subgroups of S in canonical order.
  const std::vector<Subgroup>& subgroups() const;
  /// Position of P in subgroups(); throws ObjectOutsideS.
  std::size_t index_of(const Subgroup& P) const;

  /// Hom_F(P, S), canonical order, codomain S.
  const std::vector<GroupMorphism>& homs_to_S(const Subgroup& P) const;
  std::vector<GroupMorphism> hom_set(const Subgroup& P, const Subgroup& R) const;
  std::vector<GroupMorphism> aut(const Subgroup& Q) const { return hom_set(Q, Q); }
  /// True iff the map (domain P ≤ S) is in Hom_F(P, S).
  bool contains(const GroupMorphism& phi) const;

  /// F-conjugates of Q in canonical order.
  std::vector<Subgroup> conjugacy_class(const Subgroup& Q) const;

  /// Same carrier and the same morphisms on every object.
  bool same_morphisms(const FusionSystem& other) const;
  /// First object whose hom lists differ, if any.
  std::optional<Subgroup> first_difference(const FusionSystem& other) const;

  /// Full table (forces every hom-set).
  HomTable hom_table() const;
  std::size_t morphism_count() const;

  /// Pre-fill Hom_F(P, S) from a trusted source (the result cache).
  void preload(const Subgroup& P, std::vector<GroupMorphism> homs) const;

 private:
  struct Impl;
  static std::shared_ptr<Impl> make_impl(const Subgroup& S, unsigned p, std::string name);
  std::shared_ptr<Impl> impl_;
  Saturation saturation_ = Saturation::Unchecked;
};

/// Aut_F(Q) as a permutation group on the positions of Q.elements().
struct Automizer {
  Subgroup Q;
  GroupPtr aut;
  std::vector<GroupMorphism> maps;  // maps[x] for element x of aut
  Subgroup inn;                     // Aut_Q(Q)
  Subgroup aut_S;                   // Aut_S(Q)
  QuotientGroup out;                // Out_F(Q)
  Elem element_of(const GroupMorphism& a) const;
};
Automizer automizer(const FusionSystem& F, const Subgroup& Q);

/// A proper subgroup M of X containing a Sylow p-subgroup P with ^gP != P and
/// ^gP ∩ P = 1 for all g outside M. None when the Sylow subgroup is trivial or normal.
std::optional<Subgroup> strongly_p_embedded(const GroupPtr& X, unsigned p);

struct SubgroupProfile {
  Subgroup Q;
  bool fully_normalized = false;
  bool fully_centralized = false;
  bool centric = false;
  bool radical = false;
  bool essential = false;
  std::size_t class_size = 0;
  std::size_t aut_order = 0;
  std::size_t out_order = 0;
  bool aut_S_sylow = false;
  bool criterion_holds = true;  // fully_normalized == (fully_centralized && aut_S_sylow)
  std::optional<Subgroup> larger_normalizer;   // F-conjugate with larger N_S
  std::optional<Subgroup> larger_centralizer;  // F-conjugate with larger C_S
  std::optional<Subgroup> centric_witness;     // F-conjugate Q' with C_S(Q') not inside Q'
  std::optional<Subgroup> embedded_M;          // strongly p-embedded subgroup of Out_F(Q)
};

/// Throws ObjectOutsideS. On a system known to be saturated, a failure of
/// "fully normalized iff fully centralized with Aut_S(Q) Sylow in Aut_F(Q)"
/// throws InternalInconsistency; other systems only record it.
SubgroupProfile classify_subgroup(const FusionSystem& F, const Subgroup& Q);
std::vector<SubgroupProfile> classify_all(const FusionSystem& F);

struct EssentialSubgroups {
  std::vector<Subgroup> all;
  std::vector<Subgroup> fully_normalized;
};
EssentialSubgroups essential_subgroups(const FusionSystem& F);

/// N_φ for φ ∈ Hom_F(Q, S); throws MorphismNotInF.
Subgroup n_phi(const FusionSystem& F, const GroupMorphism& phi);

struct AxiomReport {
  bool ok = true;
  std::string failed;  // "category", "FS1", "FS2" or "FS3"
  std::string detail;
  std::optional<GroupMorphism> witness;
};
AxiomReport verify_axioms(const FusionSystem& F);

struct AlperinDecomposition {
  std::vector<Subgroup> chain;           // Q_0, ..., Q_{n+1}
  std::vector<Subgroup> essentials;      // E_1, ..., E_n
  std::vector<GroupMorphism> autos;      // ψ_1, ..., ψ_{n+1}; the last is in Aut_F(S)
  std::size_t steps() const { return essentials.size(); }
  /// ψ_{n+1} ∘ ... ∘ ψ_1 restricted to Q_0, with codomain S.
  GroupMorphism recompose(const Subgroup& S) const;
};
/// Breadth-first search; throws NotGenerated when no decomposition exists.
AlperinDecomposition alperin_decompose(const FusionSystem& F, const GroupMorphism& phi);

/// Images of the domain elements in domain order; the key used for hom membership.
std::vector<Elem> map_key(const GroupMorphism& phi);

}  // namespace fusionlab
