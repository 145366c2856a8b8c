#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fusionlab/fusion.hpp"
#include "helpers.hpp"

using namespace fusionlab;
using namespace testing;

namespace {

const std::vector<std::pair<const char*, unsigned>> kSystems = {
    {"S3", 2},   {"D8", 2},   {"A4", 2},   {"S4", 2},     {"S4", 3},     {"SL23", 2},
    {"SL23", 3}, {"GL23", 2}, {"GL23", 3}, {"C13:C3", 3}, {"C3xC3:C2", 3}, {"Qd3", 2}, {"Qd3", 3}};

oracle::AbstractGroup abstract(const FiniteGroup& X) {
  oracle::AbstractGroup A;
  A.table.assign(X.order(), std::vector<int>(X.order()));
  for (Elem a = 0; a < X.order(); ++a)
    for (Elem b = 0; b < X.order(); ++b) A.table[a][b] = X.mul(a, b);
  return A;
}

// Distinct conjugation maps P -> S by elements of G, counted on permutations.
std::size_t oracle_hom_count(const oracle::Set& G, const oracle::Set& S, const oracle::Set& P) {
  std::set<std::vector<oracle::Perm>> maps;
  for (const auto& g : G) {
    std::vector<oracle::Perm> img;
    bool inside = true;
    for (const auto& x : P) {
      auto y = oracle::conj(g, x);
      inside = inside && S.count(y);
      img.push_back(y);
    }
    if (inside) maps.insert(img);
  }
  return maps.size();
}

}  // namespace

TEST_CASE("hom-set sizes against the oracle") {
  for (auto [name, p] : kSystems) {
    auto G = catalog_group(name);
    if (G->order() > 48) continue;
    auto F = FusionSystem::realize(G, p);
    auto OG = oracle_group(*G);
    auto OS = to_set(F.S());
    for (const auto& P : F.subgroups()) {
      INFO(std::string(name), " p=", p, " |P|=", P.order());
      CHECK(F.homs_to_S(P).size() == oracle_hom_count(OG, OS, to_set(P)));
      CHECK(F.aut(P).size() ==
            oracle::normalizer(OG, to_set(P)).size() / oracle::centralizer(OG, to_set(P)).size());
    }
  }
}

TEST_CASE("Hom(Z(D8), V4) in the 2-fusion of S4") {
  auto G = catalog_group("S4");
  auto F = FusionSystem::realize(G, 2);
  auto V4n = from_cycles(G, {"(1 2)(3 4)", "(1 3)(2 4)"});
  REQUIRE(V4n.subset_of(F.S()));
  auto Z = center(F.S());
  CHECK(F.hom_set(Z, V4n).size() == 3);
  CHECK(F.aut(V4n).size() == 6);
  CHECK(F.aut(F.S()).size() == 4);
  CHECK(F.conjugacy_class(Z).size() == 3);
}

TEST_CASE("essential subgroups against the oracle") {
  for (auto [name, p] : kSystems) {
    auto G = catalog_group(name);
    auto F = FusionSystem::realize(G, p);
    auto ess = essential_subgroups(F);
    auto expected = oracle::essentials(oracle_group(*G), to_set(F.S()), static_cast<int>(p));
    std::set<oracle::Set> got;
    for (const auto& E : ess.all) got.insert(to_set(E));
    INFO(std::string(name), " p=", p);
    CHECK(got == std::set<oracle::Set>(expected.begin(), expected.end()));
    for (const auto& E : ess.fully_normalized) CHECK(std::find(ess.all.begin(), ess.all.end(), E) != ess.all.end());
  }
}

TEST_CASE("golden essentials") {
  auto S4 = catalog_group("S4");
  auto ess = essential_subgroups(FusionSystem::realize(S4, 2));
  REQUIRE(ess.all.size() == 1);
  CHECK(ess.all[0] == from_cycles(S4, {"(1 2)(3 4)", "(1 3)(2 4)"}));
  CHECK(essential_subgroups(FusionSystem::realize(catalog_group("SL23"), 2)).all.empty());
  CHECK(essential_subgroups(FusionSystem::realize(catalog_group("Qd3"), 3)).all.size() == 1);
}

TEST_CASE("strongly p-embedded subgroups against the oracle") {
  for (const char* name : {"S3", "A4", "S4", "D8", "SL23", "GL23", "C13:C3", "C3xC3:C2"})
    for (unsigned p : {2U, 3U}) {
      auto G = catalog_group(name);
      INFO(std::string(name), " p=", p);
      CHECK(strongly_p_embedded(G, p).has_value() == oracle::has_strongly_p_embedded(abstract(*G), static_cast<int>(p)));
    }
  CHECK(strongly_p_embedded(catalog_group("S3"), 2).has_value());
  CHECK_FALSE(strongly_p_embedded(catalog_group("S4"), 2).has_value());
}

TEST_CASE("profiles satisfy the normalization criterion") {
  for (auto [name, p] : kSystems) {
    auto F = FusionSystem::realize(catalog_group(name), p);
    for (const auto& prof : classify_all(F)) {
      CHECK(prof.criterion_holds);
      CHECK(prof.fully_normalized == (prof.fully_centralized && prof.aut_S_sylow));
      CHECK(prof.aut_order == F.aut(prof.Q).size());
      if (prof.essential) {
        CHECK(prof.centric);
        CHECK(prof.fully_normalized);
        CHECK(prof.embedded_M.has_value());
      }
      if (!prof.fully_normalized) CHECK(prof.larger_normalizer.has_value());
    }
  }
}

TEST_CASE("automizer pieces") {
  auto G = catalog_group("S4");
  auto F = FusionSystem::realize(G, 2);
  auto V4n = from_cycles(G, {"(1 2)(3 4)", "(1 3)(2 4)"});
  auto A = automizer(F, V4n);
  CHECK(A.aut->order() == 6);
  CHECK(A.inn.order() == 1);
  CHECK(A.aut_S.order() == 2);
  CHECK(A.out.group->order() == 6);
}

TEST_CASE("N_phi contains Q C_S(Q) and phi extends to it") {
  auto G = catalog_group("GL23");
  auto F = FusionSystem::realize(G, 2);
  const auto& S = F.S();
  for (const auto& Q : F.subgroups())
    for (const auto& phi : F.homs_to_S(Q)) {
      auto N = n_phi(F, phi);
      CHECK(join(Q, centralizer(S, Q)).subset_of(N));
      CHECK(N.subset_of(normalizer(S, Q)));
      // brute force from the definition
      auto img = phi.image();
      std::vector<Elem> members;
      const auto NSQ = normalizer(S, Q);
      for (auto x : NSQ.elements()) {
        auto cx = GroupMorphism::conjugation(Q, x, S);
        auto target = compose(phi, compose(cx, phi.inverse()));
        bool found = false;
        for (auto y : S.elements()) {
          auto cy = GroupMorphism::conjugation(img, y, S);
          found = found || map_key(cy) == map_key(target.with_codomain(S));
        }
        if (found) members.push_back(x);
      }
      CHECK(N == generate(G, members));
      CHECK(N.order() == members.size());
    }
}

TEST_CASE("axioms hold for realized systems") {
  for (auto [name, p] : kSystems) {
    auto F = FusionSystem::realize(catalog_group(name), p);
    auto rep = verify_axioms(F);
    INFO(std::string(name), " p=", p, " ", rep.failed, " ", rep.detail);
    CHECK(rep.ok);
  }
}

TEST_CASE("broken explicit systems fail the axioms") {
  auto G = catalog_group("S4");
  auto F = FusionSystem::realize(G, 2);
  auto V4n = from_cycles(G, {"(1 2)(3 4)", "(1 3)(2 4)"});

  SUBCASE("missing one automorphism") {
    auto table = F.hom_table();
    auto& maps = table.at(V4n.bits());
    auto it = std::find_if(maps.begin(), maps.end(), [](const GroupMorphism& m) {
      bool moves = false;
      for (auto x : m.domain().elements()) {
        if (m(m(m(x))) != x) return false;
        moves = moves || m(x) != x;
      }
      return moves;
    });
    bool order3 = it != maps.end();
    for (auto x : V4n.elements()) order3 = order3 && (x == 0 || (*it)(x) != x);
    REQUIRE(order3);
    maps.erase(it);
    auto broken = FusionSystem::from_homs(F.S(), 2, table, "broken");
    auto rep = verify_axioms(broken);
    CHECK_FALSE(rep.ok);
    CHECK(rep.failed == "category");
    CHECK(rep.witness.has_value());
  }

  SUBCASE("a 3-element in Aut_F(S) for S = C3 x C3") {
    auto V = catalog_group("C3xC3");
    auto S = whole_group(V);
    auto x = elem(V, "(1 2 3)");
    auto y = elem(V, "(4 5 6)");
    // alpha: x -> x, y -> xy, of order 3
    std::vector<Elem> img(V->order());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        auto src = V->mul(V->power(x, i), V->power(y, j));
        img[src] = V->mul(V->power(x, i + j), V->power(y, j));
      }
    GroupMorphism alpha(S, S, img);
    REQUIRE(alpha.is_homomorphism());
    FusionSystem::HomTable table;
    for (const auto& P : subgroups_of(S)) {
      std::vector<GroupMorphism> maps;
      auto a = GroupMorphism::identity(S);
      for (int k = 0; k < 3; ++k) {
        maps.push_back(a.restrict_to(P).with_codomain(S));
        a = compose(alpha, a);
      }
      table[P.bits()] = maps;
    }
    auto E = FusionSystem::from_homs(S, 3, table, "fs2");
    auto rep = verify_axioms(E);
    CHECK_FALSE(rep.ok);
    CHECK(rep.failed == "FS2");
  }
}

TEST_CASE("Alperin round trip") {
  for (auto [name, p] : kSystems) {
    auto F = FusionSystem::realize(catalog_group(name), p);
    if (F.S().order() > 16) continue;
    for (const auto& P : F.subgroups())
      for (const auto& phi : F.homs_to_S(P)) {
        auto d = alperin_decompose(F, phi);
        CHECK(d.recompose(F.S()).same_map(phi));
        CHECK(d.chain.size() == d.steps() + 2);
        for (const auto& E : d.essentials) CHECK(classify_subgroup(F, E).essential);
      }
  }
}

TEST_CASE("Alperin decomposition of a map that needs the essential subgroup") {
  auto G = catalog_group("S4");
  auto F = FusionSystem::realize(G, 2);
  auto Z = center(F.S());
  auto V4n = from_cycles(G, {"(1 2)(3 4)", "(1 3)(2 4)"});
  // a map moving the central involution out of Z(S) is not S-conjugation
  for (const auto& phi : F.homs_to_S(Z)) {
    auto d = alperin_decompose(F, phi);
    if (phi.image() == Z) {
      CHECK(d.steps() == 0);
    } else {
      REQUIRE(d.steps() == 1);
      CHECK(d.essentials[0] == V4n);
    }
  }
}

TEST_CASE("errors") {
  auto G = catalog_group("S4");
  auto F = FusionSystem::realize(G, 2);
  CHECK(code_of([&] { F.index_of(whole_group(G)); }) == ErrorCode::ObjectOutsideS);
  CHECK(code_of([&] { FusionSystem::realize(G, 2, from_cycles(G, {"(1 2)(3 4)"})); }) == ErrorCode::NotSylow);
  auto inner = FusionSystem::inner(F.S(), 2);
  auto V4n = from_cycles(G, {"(1 2)(3 4)", "(1 3)(2 4)"});
  for (const auto& phi : F.aut(V4n)) {
    bool in_inner = inner.contains(phi.with_codomain(F.S()));
    if (!in_inner) CHECK(code_of([&] { n_phi(inner, phi.with_codomain(F.S())); }) == ErrorCode::MorphismNotInF);
  }
}

TEST_CASE("explicit and realized systems compare equal") {
  auto F = FusionSystem::realize(catalog_group("GL23"), 2);
  auto E = FusionSystem::from_homs(F.S(), 2, F.hom_table(), "copy");
  CHECK(E.same_morphisms(F));
  CHECK_FALSE(E.first_difference(F).has_value());
  auto inner = FusionSystem::inner(F.S(), 2);
  CHECK(inner.first_difference(F).has_value());
  CHECK(inner.morphism_count() < F.morphism_count());
}
