#pragma once

#include <optional>
#include <random>

#include "fusionlab/catalog.hpp"
#include "fusionlab/group.hpp"
#include "fusionlab/groupfile.hpp"
#include "oracle.hpp"

namespace testing {

using namespace fusionlab;

inline oracle::Perm to_perm(const FiniteGroup& G, Elem x) {
  auto p = *G.permutation_of(x);
  return oracle::Perm(p.begin(), p.end());
}

inline oracle::Set to_set(const Subgroup& H) {
  oracle::Set out;
  for (auto x : H.elements()) out.insert(to_perm(H.group(), x));
  return out;
}

/// The oracle's own closure of the input generators.
inline oracle::Set oracle_group(const FiniteGroup& G) {
  std::vector<oracle::Perm> gens;
  for (const auto& g : G.perm_generators()) gens.emplace_back(g.begin(), g.end());
  return oracle::closure(gens, static_cast<int>(G.degree()));
}

inline Subgroup from_cycles(const GroupPtr& G, std::initializer_list<const char*> cycles) {
  std::vector<Elem> gens;
  for (const char* c : cycles) gens.push_back(*G->element_of(parse_cycles(c, G->degree())));
  return generate(G, gens);
}

inline Elem elem(const GroupPtr& G, const char* cycle) { return *G->element_of(parse_cycles(cycle, G->degree())); }

template <class F>
std::optional<ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20240611);
  return gen;
}

}  // namespace testing
