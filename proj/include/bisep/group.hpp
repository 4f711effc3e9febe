#pragma once

#include <string>
#include <vector>

#include "bisep/algebra.hpp"

namespace bisep {

// Finite group by Cayley table: table[a][b] = index of a*b.
struct Group {
  std::string name;
  std::vector<std::vector<std::size_t>> table;
  std::size_t identity = 0;

  std::size_t order() const noexcept { return table.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return table[a][b]; }
  std::size_t inverse(std::size_t a) const;
};

// Validates closure, associativity, identity and inverses (NotAGroup).
Group make_group(std::string name, std::vector<std::vector<std::size_t>> table);

// Closure of permutation generators; elements numbered in discovery order
// starting from the identity.
Group permutation_group(std::string name, const std::vector<std::vector<std::size_t>>& generators);

Group cyclic_group(std::size_t n);
Group dihedral_group(std::size_t n);  // order 2n
Group symmetric3();
Group alternating_group4();
Group klein_four();
Group quaternion_group();
// Names understood: C<n>, D<n> (order 2n), S3, A4, V4, Q8; order <= 12.
Group group_by_name(const std::string& name);

// Subgroup generated by the given elements, as a sorted index list.
std::vector<std::size_t> generated_subgroup(const Group& g, const std::vector<std::size_t>& gens);
// Validates that `elements` is a subgroup; returns it as a group whose
// element i is elements[i].
Group subgroup(const Group& g, const std::vector<std::size_t>& elements);

Algebra group_algebra(const Field& f, const Group& g);

}  // namespace bisep
