#include "fusionlab/catalog.hpp"

#include <map>
#include <mutex>

#include "fusionlab/groupfile.hpp"
#include "fusionlab/hfree.hpp"

namespace fusionlab {

namespace {

struct Recipe {
  CatalogEntry entry;
  std::size_t degree = 0;
  std::vector<std::string> cycles;
};

Permutation modular_affine(unsigned n, unsigned mult, unsigned add) {
  Permutation perm(n);
  for (unsigned x = 0; x < n; ++x) perm[x] = static_cast<std::uint16_t>((mult * x + add) % n);
  return perm;
}

const std::vector<Recipe>& recipes() {
  static const std::vector<Recipe> r = {
      {{"C2", "cyclic of order 2", 2}, 2, {"(1 2)"}},
      {{"C3", "cyclic of order 3", 3}, 3, {"(1 2 3)"}},
      {{"C4", "cyclic of order 4", 4}, 4, {"(1 2 3 4)"}},
      {{"V4", "Klein four group", 4}, 4, {"(1 2)(3 4)", "(1 3)(2 4)"}},
      {{"S3", "symmetric group on 3 letters", 6}, 3, {"(1 2)", "(1 2 3)"}},
      {{"D8", "dihedral group of order 8", 8}, 4, {"(1 2 3 4)", "(1 3)"}},
      {{"Q8", "quaternion group", 8}, 8, {"(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"}},
      {{"C3xC3", "elementary abelian of order 9", 9}, 6, {"(1 2 3)", "(4 5 6)"}},
      {{"A4", "alternating group on 4 letters", 12}, 4, {"(1 2 3)", "(1 2)(3 4)"}},
      {{"S4", "symmetric group on 4 letters", 24}, 4, {"(1 2)", "(1 2 3 4)"}},
      {{"SL23", "SL(2,3) on the nonzero vectors of F_3^2", 24}, 0, {}},
      {{"GL23", "GL(2,3) on the nonzero vectors of F_3^2", 48}, 0, {}},
      {{"ES27e3", "extraspecial 3^(1+2) of exponent 3", 27}, 0, {}},
      {{"ES27e9", "extraspecial 3^(1+2) of exponent 9", 27}, 0, {}},
      {{"C13:C3", "Frobenius group of order 39", 39}, 0, {}},
      {{"Qd3", "Qd(3) = F_3^2 : SL(2,3)", 216}, 0, {}},
      {{"C3xC3:C2", "C3 x C3 extended by inversion", 18}, 6, {"(1 2 3)", "(4 5 6)", "(2 3)(5 6)"}},
  };
  return r;
}

GroupPtr build(const Recipe& r) {
  const auto& name = r.entry.name;
  if (name == "SL23") return linear_group_on_vectors(3, true, name);
  if (name == "GL23") return linear_group_on_vectors(3, false, name);
  if (name == "ES27e3")
    return FiniteGroup::from_permutations(
        9, {affine_permutation(3, {1, 0, 0, 1}, {1, 0}), affine_permutation(3, {1, 0, 0, 1}, {0, 1}),
            affine_permutation(3, {1, 0, 1, 1}, {0, 0})},
        name);
  if (name == "ES27e9") return FiniteGroup::from_permutations(9, {modular_affine(9, 1, 1), modular_affine(9, 4, 0)}, name);
  if (name == "C13:C3")
    return FiniteGroup::from_permutations(13, {modular_affine(13, 1, 1), modular_affine(13, 3, 0)}, name);
  if (name == "Qd3") return qd_group(3);
  std::vector<Permutation> gens;
  for (const auto& c : r.cycles) gens.push_back(parse_cycles(c, r.degree));
  return FiniteGroup::from_permutations(r.degree, gens, name);
}

}  // namespace

Permutation affine_permutation(unsigned p, std::array<unsigned, 4> m, std::array<unsigned, 2> t) {
  Permutation perm(p * p);
  for (unsigned b = 0; b < p; ++b)
    for (unsigned a = 0; a < p; ++a) {
      unsigned na = (m[0] * a + m[1] * b + t[0]) % p;
      unsigned nb = (m[2] * a + m[3] * b + t[1]) % p;
      perm[a + p * b] = static_cast<std::uint16_t>(na + p * nb);
    }
  return perm;
}

GroupPtr linear_group_on_vectors(unsigned p, bool special, std::string name) {
  // Nonzero vectors (a, b) in lexicographic order of a + p*b.
  std::vector<std::pair<unsigned, unsigned>> vecs;
  for (unsigned b = 0; b < p; ++b)
    for (unsigned a = 0; a < p; ++a)
      if (a || b) vecs.emplace_back(a, b);
  auto index_of = [&](unsigned a, unsigned b) {
    for (std::size_t i = 0; i < vecs.size(); ++i)
      if (vecs[i] == std::make_pair(a, b)) return static_cast<std::uint16_t>(i);
    return std::uint16_t{0};
  };
  auto matrix = [&](unsigned m00, unsigned m01, unsigned m10, unsigned m11) {
    Permutation perm(vecs.size());
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      auto [a, b] = vecs[i];
      perm[i] = index_of((m00 * a + m01 * b) % p, (m10 * a + m11 * b) % p);
    }
    return perm;
  };
  std::vector<Permutation> gens{matrix(1, 1, 0, 1), matrix(1, 0, 1, 1)};
  if (!special) gens.push_back(matrix(p - 1, 0, 0, 1));
  return FiniteGroup::from_permutations(vecs.size(), gens, std::move(name));
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> e;
    for (const auto& r : recipes()) e.push_back(r.entry);
    return e;
  }();
  return entries;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& e : catalog_entries()) out.push_back(e.name);
  return out;
}

bool in_catalog(std::string_view name) {
  for (const auto& e : catalog_entries())
    if (e.name == name) return true;
  return false;
}

GroupPtr catalog_group(std::string_view name) {
  static std::mutex mutex;
  static std::map<std::string, GroupPtr, std::less<>> built;
  std::lock_guard lock(mutex);
  if (auto it = built.find(name); it != built.end()) return it->second;
  for (const auto& r : recipes()) {
    if (r.entry.name == name) {
      auto g = build(r);
      built.emplace(r.entry.name, g);
      return g;
    }
  }
  throw Error(ErrorCode::ParseError, "unknown catalog group '" + std::string(name) + "'");
}

void validate_catalog() {
  for (const auto& e : catalog_entries()) {
    auto g = catalog_group(e.name);
    if (g->order() != e.expected_order)
      throw Error(ErrorCode::InternalInconsistency, "catalog entry " + e.name + " has order " +
                                                        std::to_string(g->order()) + ", expected " +
                                                        std::to_string(e.expected_order));
  }
  if (!is_isomorphic(qd_group(2), catalog_group("S4")).isomorphic)
    throw Error(ErrorCode::InternalInconsistency, "Qd(2) is not isomorphic to S4");
}

}  // namespace fusionlab
