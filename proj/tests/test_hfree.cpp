#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fusionlab/hfree.hpp"
#include "fusionlab/subsystems.hpp"
#include "helpers.hpp"

using namespace fusionlab;
using namespace testing;

namespace {

// B/A of the witness section is isomorphic to H.
bool section_is(const Section& s, const GroupPtr& H) {
  auto B = extract(s.B);
  auto q = quotient_group(B.group, B.lower(s.A));
  return is_isomorphic(q.group, H).isomorphic;
}

}  // namespace

TEST_CASE("Qd(p)") {
  auto q2 = qd_group(2);
  CHECK(q2->order() == 24);
  CHECK(is_isomorphic(q2, catalog_group("S4")).isomorphic);
  auto q3 = qd_group(3);
  CHECK(q3->order() == 216);
  CHECK(o_p(whole_group(q3), 3).order() == 9);
  CHECK(code_of([] { qd_group(5); }) == ErrorCode::UnsupportedPrime);
}

TEST_CASE("groups") {
  auto S4 = catalog_group("S4");
  CHECK_FALSE(is_group_H_free(S4, S4).free);
  CHECK(is_group_H_free(catalog_group("SL23"), S4).free);
  CHECK(is_group_H_free(catalog_group("A4"), S4).free);
  auto gl = is_group_H_free(catalog_group("GL23"), S4);  // GL(2,3)/Z = S4
  REQUIRE_FALSE(gl.free);
  REQUIRE(gl.section.has_value());
  CHECK(section_is(*gl.section, S4));
  CHECK(is_group_H_free(catalog_group("Qd3"), catalog_group("GL23")).free);
  CHECK_FALSE(is_group_H_free(catalog_group("Qd3"), qd_group(3)).free);
}

TEST_CASE("fusion systems") {
  auto S4 = catalog_group("S4");
  auto sl = is_fusion_H_free(FusionSystem::realize(catalog_group("SL23"), 2), S4);
  CHECK(sl.free);
  CHECK_FALSE(sl.examined.empty());

  auto F = FusionSystem::realize(S4, 2);
  auto r = is_fusion_H_free(F, S4);
  REQUIRE_FALSE(r.free);
  REQUIRE(r.Q.has_value());
  REQUIRE(r.section.has_value());
  CHECK(*r.Q == o_p_of_F(F));
  CHECK(section_is(*r.section, S4));

  CHECK(is_fusion_H_free(FusionSystem::realize(catalog_group("ES27e3"), 3), qd_group(3)).free);
  CHECK_FALSE(is_fusion_H_free(FusionSystem::realize(catalog_group("Qd3"), 3), qd_group(3)).free);
  CHECK(is_fusion_H_free(FusionSystem::realize(catalog_group("GL23"), 3), qd_group(3)).free);
}

TEST_CASE("examined subgroups are centric, radical and fully normalized") {
  for (auto [name, p] : std::vector<std::pair<const char*, unsigned>>{{"S4", 2}, {"GL23", 2}, {"Qd3", 3}, {"SL23", 2}}) {
    auto F = FusionSystem::realize(catalog_group(name), p);
    auto r = is_fusion_H_free(F, qd_group(p));
    for (const auto& Q : r.examined) {
      auto prof = classify_subgroup(F, Q);
      CHECK(prof.centric);
      CHECK(prof.radical);
      CHECK(prof.fully_normalized);
    }
  }
}

TEST_CASE("automizers in groups") {
  auto S4 = catalog_group("S4");
  auto V4n = from_cycles(S4, {"(1 2)(3 4)", "(1 3)(2 4)"});
  CHECK(is_isomorphic(automizer_in_group(whole_group(S4), V4n), catalog_group("S3")).isomorphic);
  CHECK(automizer_in_group(whole_group(S4), whole_group(S4))->order() == 24);
}

TEST_CASE("sigma3 involvement across the catalog") {
  for (const auto& name : catalog_names()) {
    auto G = catalog_group(name);
    if (G->order() > 216 || G->order() % 2 != 0) continue;
    INFO(name);
    std::pair<bool, bool> r;
    CHECK_NOTHROW(r = sigma3_involvement_check(G));
    CHECK(r.first == r.second);
  }
  CHECK(sigma3_involvement_check(catalog_group("S4")) == std::make_pair(true, true));
  CHECK(sigma3_involvement_check(catalog_group("SL23")) == std::make_pair(false, false));
}

TEST_CASE("constrained 2-groups") {
  CHECK(remark67_check(catalog_group("SL23")) == std::make_pair(true, true));
  CHECK(remark67_check(catalog_group("S4")) == std::make_pair(false, false));
  CHECK(remark67_check(catalog_group("D8")) == std::make_pair(true, true));
  CHECK(code_of([] { remark67_check(catalog_group("S3")); }) == ErrorCode::HypothesisViolated);
  for (const auto& name : catalog_names()) {
    auto G = catalog_group(name);
    auto c = code_of([&] { remark67_check(G); });
    CHECK((!c || *c == ErrorCode::HypothesisViolated));
  }
}
