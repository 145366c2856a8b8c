#pragma once

// Verification harnesses: each computes hypotheses and conclusion
// independently and reports both. A report with the hypotheses true and the
// conclusion false is a contradiction.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fusionlab/stellmacher.hpp"

namespace fusionlab {

enum class TheoremId { T1, T2, T3, Frobenius, Thompson };
std::string_view to_string(TheoremId id);
std::optional<TheoremId> parse_theorem_id(std::string_view s);

struct Check {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct TheoremReport {
  TheoremId id = TheoremId::T1;
  std::string instance;
  unsigned p = 0;
  bool hypotheses_hold = true;
  bool conclusion_holds = true;
  std::vector<Check> hypotheses;
  std::vector<Check> conclusions;
  std::vector<std::string> diagnostics;
  std::optional<Subgroup> W;
  bool contradiction() const { return hypotheses_hold && !conclusion_holds; }
};

/// p = 2. Hypothesis: F is Σ4-free. Conclusion: W normal in F, where W is
/// computed over `family` (default: the canonical family on F.S()) together
/// with F itself when F is admitted.
TheoremReport verify_theorem_1(const FusionSystem& F, const std::optional<CandidateFamily>& family = std::nullopt);
/// Hypothesis: F is Qd(p)-free. Delegates to verify_theorem_1 for p = 2.
TheoremReport verify_theorem_2(const FusionSystem& F, const std::optional<CandidateFamily>& family = std::nullopt);
/// p odd. F = F_S(S) iff N_F(W) = F_S(S); throws InternalInconsistency when the two sides differ.
TheoremReport verify_theorem_3(const FusionSystem& F, const std::optional<CandidateFamily>& family = std::nullopt);

bool has_normal_p_complement(const Subgroup& H, unsigned p);
bool has_normal_p_complement(const GroupPtr& G, unsigned p);

/// The four equivalent conditions for G to have a normal p-complement;
/// throws InternalInconsistency when they disagree.
TheoremReport frobenius_check(const GroupPtr& G, unsigned p);

/// p odd. G has a normal p-complement iff N_G(W(S)) does; throws InternalInconsistency otherwise.
TheoremReport thompson_group_check(const GroupPtr& G, unsigned p,
                                   const std::optional<CandidateFamily>& family = std::nullopt);

}  // namespace fusionlab
