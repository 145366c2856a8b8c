#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fusionlab/pgroup.hpp"
#include "fusionlab/stellmacher.hpp"
#include "fusionlab/subsystems.hpp"
#include "helpers.hpp"

using namespace fusionlab;
using namespace testing;

namespace {

// Two regular Klein four groups on {1..4} and {5..8}, extended by a diagonal S3.
GroupPtr growth_group() {
  std::vector<Permutation> gens;
  for (const char* c : {"(1 4)(2 3)", "(1 3)(2 4)", "(5 8)(6 7)", "(5 7)(6 8)", "(2 3)(6 7)", "(2 3 4)(6 7 8)"})
    gens.push_back(parse_cycles(c, 8));
  return FiniteGroup::from_permutations(8, gens, "V4xV4:S3");
}

const std::vector<std::pair<const char*, unsigned>> kSylows = {
    {"C2", 2}, {"C4", 2}, {"V4", 2}, {"D8", 2}, {"Q8", 2}, {"GL23", 2},
    {"C3", 3}, {"C3xC3", 3}, {"ES27e3", 3}, {"ES27e9", 3}};

}  // namespace

TEST_CASE("growth fixture") {
  auto G = growth_group();
  REQUIRE(G->order() == 96);
  auto F = FusionSystem::realize(G, 2);
  const auto& S = F.S();
  auto E = from_cycles(G, {"(1 4)(2 3)", "(1 3)(2 4)", "(5 8)(6 7)", "(5 7)(6 8)"});
  auto t = thompson_data(S, 2);
  REQUIRE(t.J == E);
  REQUIRE(t.B == E);
  REQUIRE(t.A.order() == 4);

  CandidateFamily fam{S, 2, {inner_member(S, 2), forced_member(F, "forced")}};
  auto w = compute_W_iterative(fam);
  CHECK(w.chain.size() == 2);
  REQUIRE(w.steps.size() == 1);
  CHECK(w.steps[0].member == 1);
  CHECK(w.steps[0].before == t.A);
  CHECK(w.steps[0].after == E);
  CHECK(w.steps[0].images.size() > 1);
  CHECK(w.W_iter == E);
  CHECK(w.W_oneshot.subset_of(w.W_iter));
  CHECK(is_normal_in_F(F, w.W_iter).normal);
  CHECK_FALSE(is_normal_in_F(F, t.A).normal);

  // the inner system alone does not grow
  CandidateFamily alone{S, 2, {inner_member(S, 2)}};
  auto w0 = compute_W_iterative(alone);
  CHECK(w0.steps.empty());
  CHECK(w0.W_iter == t.A);
}

TEST_CASE("sandwich violation") {
  auto G = catalog_group("S4");
  auto F = FusionSystem::realize(G, 2);
  const auto& S = F.S();
  CandidateFamily fam{S, 2, {inner_member(S, 2), forced_member(F, "S4")}};
  CHECK(code_of([&] { compute_W_iterative(fam); }) == ErrorCode::SandwichViolated);
  // unforced, the same system is rejected and W stays at the center
  auto natural = admit_system(S, F);
  CHECK_FALSE(natural.flags.admitted());
  CHECK_FALSE(natural.rejection.empty());
  CandidateFamily fam2{S, 2, {inner_member(S, 2), natural}};
  CHECK(compute_W_iterative(fam2).W_iter == center(S));
}

TEST_CASE("trivial Sylow") {
  auto S = sylow(catalog_group("C3"), 2);
  REQUIRE(S.is_trivial());
  CandidateFamily fam{S, 2, {inner_member(S, 2)}};
  CHECK(code_of([&] { compute_W_iterative(fam); }) == ErrorCode::HypothesisViolated);
  CHECK(functor_checks(S, fam).vacuous);
  CHECK(functor_checks(S, fam).ok());
}

TEST_CASE("admission") {
  auto D8 = whole_group(catalog_group("D8"));
  auto s4 = admit_member(D8, catalog_group("S4"), 2);
  CHECK_FALSE(s4.flags.J_normal);  // maps moving Z(S) into V4 do not extend to S
  CHECK_FALSE(s4.flags.qd_free);
  CHECK_FALSE(s4.flags.admitted());
  CHECK(s4.system.S() == D8);
  CHECK(verify_axioms(s4.system).ok);

  auto Q8 = whole_group(catalog_group("Q8"));
  auto sl = admit_member(Q8, catalog_group("SL23"), 2);
  CHECK(sl.flags.admitted());
  CHECK(sl.rejection.empty());
  CHECK(code_of([&] { admit_member(D8, catalog_group("SL23"), 2); }) == ErrorCode::SylowMismatch);

  auto fam = canonical_family(D8, 2);
  REQUIRE_FALSE(fam.members.empty());
  CHECK(fam.members[0].label == "F_S(S)");
  CHECK(fam.admitted().front() == 0);
  bool saw_s4 = false;
  for (const auto& m : fam.members) saw_s4 = saw_s4 || m.label.find("S4") != std::string::npos;
  CHECK(saw_s4);
}

TEST_CASE("transport along an isomorphism") {
  auto F = FusionSystem::realize(catalog_group("S4"), 2);
  auto D8 = whole_group(catalog_group("D8"));
  auto iso = find_isomorphism(F.S(), D8);
  REQUIRE(iso);
  auto T = transport_system(F, *iso);
  CHECK(T.S() == D8);
  CHECK(T.morphism_count() == F.morphism_count());
  CHECK(verify_axioms(T).ok);
  for (const auto& P : F.subgroups())
    for (const auto& phi : F.homs_to_S(P)) {
      auto moved = compose(*iso, compose(phi, iso->inverse().restrict_to(iso->image_of(P))));
      CHECK(T.contains(moved.with_codomain(D8)));
    }
}

TEST_CASE("W on the catalog Sylow subgroups") {
  for (auto [name, p] : kSylows) {
    auto S = sylow(catalog_group(name), p);
    auto fam = canonical_family(S, p);
    auto t = thompson_data(S, p);
    auto w = compute_W_iterative(fam);
    INFO(std::string(name), " p=", p);
    CHECK(t.A.subset_of(w.W_iter));
    CHECK(w.W_iter.subset_of(t.B));
    CHECK(is_characteristic(w.W_iter, S));
    CHECK(w.W_oneshot.subset_of(w.W_iter));
    CHECK(compute_W_oneshot(fam) == w.W_oneshot);
    for (auto i : fam.admitted()) CHECK(is_normal_in_F(fam.members[i].system, w.W_iter).normal);
    auto rep = functor_checks(S, fam);
    CHECK(rep.ok());
    CHECK(rep.W == w.W_iter);
    CHECK(rep.aut_order == automorphisms(S).size());
  }
}

TEST_CASE("property: member order does not matter and members only enlarge W") {
  auto G = growth_group();
  auto F = FusionSystem::realize(G, 2);
  const auto& S = F.S();
  auto sub = FusionSystem::realize_in(whole_group(G), 2, S);  // same system, explicit carrier route
  std::vector<FamilyMember> members{inner_member(S, 2), forced_member(F, "forced"), forced_member(sub, "again")};
  std::vector<int> idx{0, 1, 2};
  std::optional<Subgroup> first;
  do {
    CandidateFamily fam{S, 2, {}};
    for (int i : idx) fam.members.push_back(members[i]);
    auto W = compute_W_iterative(fam).W_iter;
    if (!first) first = W;
    CHECK(W == *first);
  } while (std::next_permutation(idx.begin(), idx.end()));

  CandidateFamily small{S, 2, {members[0]}};
  CHECK(compute_W_iterative(small).W_iter.subset_of(*first));
  CHECK(compute_W_oneshot(small).subset_of(compute_W_oneshot(CandidateFamily{S, 2, members})));
}
