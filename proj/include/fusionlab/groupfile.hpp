#pragma once

// Line-based group files:
//
//   # comment
//   group <name>
//   perm <n>            followed by one generator per line, cycle notation (1 2)(3 4)
//   table <n>           followed by n rows of n element indices
//
// Subgroup specs are comma-separated words in the generator alphabet a, b, c, ...
// (generator i is the i-th letter), each letter optionally raised to an integer
// power with ^, e.g. "ab^2,ba^-1". A token #k names element index k directly.

#include <filesystem>
#include <string>
#include <string_view>

#include "fusionlab/group.hpp"

namespace fusionlab {

/// Parses one line of cycle notation on `degree` points (1-based). "()" is the identity.
Permutation parse_cycles(std::string_view text, std::size_t degree, std::size_t line_no = 1);
std::string format_cycles(const Permutation& perm);

GroupPtr parse_group_text(std::string_view text);
GroupPtr parse_group_file(const std::filesystem::path& path);
std::string write_group_text(const FiniteGroup& G);

Elem parse_word(const FiniteGroup& G, std::string_view word);
Subgroup parse_subgroup_spec(const GroupPtr& G, std::string_view spec);

}  // namespace fusionlab
