#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "fusionlab/group.hpp"

namespace fusionlab {

struct CatalogEntry {
  std::string name;
  std::string description;
  std::size_t expected_order;
};

/// Built-in groups, in a fixed order.
const std::vector<CatalogEntry>& catalog_entries();
std::vector<std::string> catalog_names();
bool in_catalog(std::string_view name);

/// Constructed once per process and shared, so lattice caches are reused.
GroupPtr catalog_group(std::string_view name);

/// Orders match the expected orders and Qd(2) is isomorphic to the S4 entry.
/// Throws InternalInconsistency on failure.
void validate_catalog();

/// v -> Mv + t on F_p^2, M = (m[0] m[1]; m[2] m[3]); point a + p*b is the vector (a, b).
Permutation affine_permutation(unsigned p, std::array<unsigned, 4> m, std::array<unsigned, 2> t);

/// Permutation representation of SL(2,p) or GL(2,p) on the nonzero vectors of F_p^2.
GroupPtr linear_group_on_vectors(unsigned p, bool special, std::string name);

}  // namespace fusionlab
