// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "fusionlab/hfree.hpp"
#include "fusionlab/pgroup.hpp"
#include "fusionlab/stellmacher.hpp"
#include "fusionlab/subsystems.hpp"
#include "fusionlab/theorems.hpp"
#include "helpers.hpp"

using namespace fusionlab;
using namespace testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<std::pair<GroupPtr, unsigned>> catalog_systems() {
  std::vector<std::pair<GroupPtr, unsigned>> out;
  for (const auto& name : catalog_names()) {
    auto G = catalog_group(name);
    for (unsigned p : {2U, 3U})
      if (G->order() % p == 0) out.emplace_back(G, p);
  }
  return out;
}

std::string tag(const GroupPtr& G, unsigned p) { return G->name() + " p=" + std::to_string(p); }

Outcome axioms() {
  std::size_t n = 0;
  for (auto [G, p] : catalog_systems()) {
    auto rep = verify_axioms(FusionSystem::realize(G, p));
    if (!rep.ok) return {false, tag(G, p) + ": " + rep.failed + " " + rep.detail};
    ++n;
  }
  if (n < 12) return {false, "only " + std::to_string(n) + " systems"};
  return {true, std::to_string(n) + " systems"};
}

Outcome normalization_criterion() {
  std::size_t n = 0;
  for (auto [G, p] : catalog_systems())
    for (const auto& pr : classify_all(FusionSystem::realize(G, p))) {
      if (!pr.criterion_holds || pr.fully_normalized != (pr.fully_centralized && pr.aut_S_sylow))
        return {false, tag(G, p) + ": fails at a subgroup of order " + std::to_string(pr.Q.order())};
      ++n;
    }
  return {true, std::to_string(n) + " subgroups"};
}

Outcome alperin() {
  std::size_t maps = 0, longest = 0;
  for (auto [G, p] : catalog_systems()) {
    auto F = FusionSystem::realize(G, p);
    if (F.S().order() > 16) continue;
    for (const auto& P : F.subgroups())
      for (const auto& phi : F.homs_to_S(P)) {
        auto d = alperin_decompose(F, phi);
        if (!d.recompose(F.S()).same_map(phi)) return {false, tag(G, p) + ": recomposition differs"};
        longest = std::max(longest, d.steps());
        ++maps;
      }
  }
  return {true, std::to_string(maps) + " maps, longest decomposition " + std::to_string(longest) + " steps"};
}

Outcome essentials() {
  auto check = [](const char* name, std::size_t expected) -> std::optional<std::string> {
    auto G = catalog_group(name);
    auto F = FusionSystem::realize(G, 2);
    auto got = essential_subgroups(F).all;
    auto oracle_ess = oracle::essentials(oracle_group(*G), to_set(F.S()), 2);
    if (got.size() != expected) return std::string(name) + ": " + std::to_string(got.size()) + " essentials";
    std::set<oracle::Set> a, b(oracle_ess.begin(), oracle_ess.end());
    for (const auto& E : got) a.insert(to_set(E));
    if (a != b) return std::string(name) + ": oracle disagrees";
    return std::nullopt;
  };
  if (auto e = check("S4", 1)) return {false, *e};
  auto S4 = catalog_group("S4");
  auto ess = essential_subgroups(FusionSystem::realize(S4, 2)).all;
  if (!(ess[0] == from_cycles(S4, {"(1 2)(3 4)", "(1 3)(2 4)"}))) return {false, "S4: not the normal Klein four group"};
  if (auto e = check("SL23", 0)) return {false, *e};
  return {true, "S4: {V4}, SL(2,3): none, both match the oracle"};
}

Outcome models() {
  std::size_t n = 0;
  for (auto [G, p] : catalog_systems()) {
    auto F = FusionSystem::realize(G, p);
    for (const auto& Q : F.subgroups()) {
      if (!is_centric(F, Q) || !is_fully_normalized(F, Q)) continue;
      auto M = model_group(F, Q);
      auto LZ = quotient_group(M.L, M.ZQ_image);
      auto A = automizer(F, Q);
      if (!is_isomorphic(LZ.group, A.aut).isomorphic)
        return {false, tag(G, p) + ": L/Z(Q) is not Aut_F(Q) at order " + std::to_string(Q.order())};
      if (!o_p_prime(whole_group(M.L), p).is_trivial()) return {false, tag(G, p) + ": O_p'(L) is nontrivial"};
      ++n;
    }
  }
  return {true, std::to_string(n) + " models"};
}

Outcome hfree() {
  std::size_t n = 0, hyp = 0;
  for (const auto& name : catalog_names()) {
    auto G = catalog_group(name);
    if (G->order() > 216 || G->order() % 2) continue;
    sigma3_involvement_check(G);
    try {
      remark67_check(G);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::HypothesisViolated) throw;
      ++hyp;
    }
    ++n;
  }
  auto sigma4 = catalog_group("S4");
  if (!is_fusion_H_free(FusionSystem::realize(catalog_group("SL23"), 2), sigma4).free)
    return {false, "F_Q8(SL(2,3)) is not S4-free"};
  auto r = is_fusion_H_free(FusionSystem::realize(sigma4, 2), sigma4);
  if (r.free || !r.section) return {false, "F_D8(S4) reported S4-free"};
  auto B = extract(r.section->B);
  if (!is_isomorphic(quotient_group(B.group, B.lower(r.section->A)).group, sigma4).isomorphic)
    return {false, "witness section is not S4"};
  return {true, std::to_string(n) + " groups (" + std::to_string(hyp) +
                    " outside the constrained hypothesis), goldens and witness ok"};
}

GroupPtr growth_group() {
  std::vector<Permutation> gens;
  for (const char* c : {"(1 4)(2 3)", "(1 3)(2 4)", "(5 8)(6 7)", "(5 7)(6 8)", "(2 3)(6 7)", "(2 3 4)(6 7 8)"})
    gens.push_back(parse_cycles(c, 8));
  return FiniteGroup::from_permutations(8, gens, "V4xV4:S3");
}

Outcome w_properties() {
  std::map<std::string, bool> seen;
  std::size_t n = 0;
  for (auto [G, p] : catalog_systems()) {
    auto S = sylow(G, p);
    auto key = std::to_string(p) + ":" + std::to_string(S.order());
    auto fam = canonical_family(S, p);
    auto t = thompson_data(S, p);
    auto w = compute_W_iterative(fam);
    if (!t.A.subset_of(w.W_iter) || !w.W_iter.subset_of(t.B)) return {false, tag(G, p) + ": sandwich fails"};
    if (!is_characteristic(w.W_iter, S)) return {false, tag(G, p) + ": W not characteristic"};
    for (auto i : fam.admitted())
      if (!is_normal_in_F(fam.members[i].system, w.W_iter).normal)
        return {false, tag(G, p) + ": W not normal in " + fam.members[i].label};
    if (!w.W_oneshot.subset_of(w.W_iter)) return {false, tag(G, p) + ": W_oneshot not in W_iter"};
    auto rep = functor_checks(S, fam);
    if (!rep.ok()) return {false, tag(G, p) + ": functor checks fail"};
    ++n;
  }
  // growth fixture: one step from Ω(Z(S)) to the Klein four product
  auto G = growth_group();
  auto F = FusionSystem::realize(G, 2);
  CandidateFamily fam{F.S(), 2, {inner_member(F.S(), 2), forced_member(F, "forced")}};
  auto w = compute_W_iterative(fam);
  if (w.steps.size() != 1 || w.W_iter.order() != 16 || !is_normal_in_F(F, w.W_iter).normal)
    return {false, "growth fixture"};
  // sandwich fixture
  auto S4 = FusionSystem::realize(catalog_group("S4"), 2);
  CandidateFamily bad{S4.S(), 2, {inner_member(S4.S(), 2), forced_member(S4, "S4")}};
  if (code_of([&] { compute_W_iterative(bad); }) != ErrorCode::SandwichViolated) return {false, "sandwich fixture"};
  return {true, std::to_string(n) + " Sylow subgroups; growth fixture 1 step; SandwichViolated raised"};
}

Outcome theorem_sweep() {
  std::size_t reports = 0, held = 0;
  for (auto [G, p] : catalog_systems()) {
    auto F = FusionSystem::realize(G, p);
    std::vector<TheoremReport> rs;
    if (p == 2) rs.push_back(verify_theorem_1(F));
    rs.push_back(verify_theorem_2(F));
    if (p == 3) {
      rs.push_back(verify_theorem_3(F));
      rs.push_back(thompson_group_check(G, p));
    }
    rs.push_back(frobenius_check(G, p));
    for (const auto& r : rs) {
      if (r.contradiction()) return {false, std::string(to_string(r.id)) + " contradicted on " + r.instance};
      held += r.hypotheses_hold;
      ++reports;
    }
  }
  return {true, std::to_string(reports) + " reports, " + std::to_string(held) + " with hypotheses true, 0 contradictions"};
}

Outcome generation() {
  std::size_t n = 0, propagated = 0;
  for (auto [G, p] : catalog_systems()) {
    auto F = FusionSystem::realize(G, p);
    auto Q = o_p_of_F(F);
    if (Q.is_trivial()) continue;
    auto F1 = centralizer_like_system(F, Q, SubsystemKind::Product);
    auto F2 = normalizer_system(F, join(Q, centralizer(F.S(), Q)));
    auto gen = generated_system({F1, F2});
    if (!gen.same_morphisms(F)) return {false, tag(G, p) + ": generated system differs"};
    for (const auto& W : F.subgroups()) {
      if (!is_normal_in_F(F1, W).normal || !is_normal_in_F(F2, W).normal) continue;
      if (!is_normal_in_F(gen, W).normal) return {false, tag(G, p) + ": normality does not propagate"};
      ++propagated;
    }
    ++n;
  }
  return {true, std::to_string(n) + " systems with O_p(F) != 1, " + std::to_string(propagated) + " normal subgroups"};
}

std::map<std::string, std::string> read_dir(const fs::path& d) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(d)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    out[e.path().filename().string()] = ss.str();
  }
  return out;
}

Outcome determinism() {
  const fs::path work = FUSIONLAB_SCRATCH;
  fs::remove_all(work);
  fs::create_directories(work);
  auto run = [&](const std::string& reports) {
    std::string cmd = "FUSIONLAB_CACHE='" + (work / "cache").string() + "' '" + FUSIONLAB_CLI +
                      "' --format tsv suite --report-dir '" + (work / reports).string() + "' > '" +
                      (work / (reports + ".out")).string() + "' 2>&1";
    return std::system(cmd.c_str());
  };
  if (run("cold") != 0) return {false, "cold run failed"};
  if (!fs::exists(work / "cache") || fs::is_empty(work / "cache")) return {false, "cold run wrote no cache"};
  if (run("warm") != 0) return {false, "warm run failed"};
  auto a = read_dir(work / "cold");
  auto b = read_dir(work / "warm");
  if (a.size() != b.size()) return {false, "different report sets"};
  for (const auto& [name, text] : a)
    if (b[name] != text) return {false, name + " differs"};
  return {true, std::to_string(a.size()) + " TSV files identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"axiom suite", axioms},
      {"fully normalized iff fully centralized and Sylow", normalization_criterion},
      {"Alperin round trip", alperin},
      {"essential subgroups", essentials},
      {"model validation", models},
      {"H-free cross-checks", hfree},
      {"W properties", w_properties},
      {"theorem sweep", theorem_sweep},
      {"generation and normality propagation", generation},
      {"cold and warm suite reports", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << (i + 1) << "] " << criteria[i].first << ": " << o.detail
              << " (" << buf << ")\n";
    failed += !o.pass;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
  return failed ? 1 : 0;
}
