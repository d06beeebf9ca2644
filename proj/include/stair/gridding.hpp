#ifndef STAIR_GRIDDING_HPP
#define STAIR_GRIDDING_HPP

#include <string>
#include <vector>

#include "stair/perm.hpp"

namespace stair {

// cell[i] is the (1-based) cell holding the entry at position i.
struct GriddedPermutation {
  Permutation perm;
  std::vector<int> cell;

  int max_cell() const;
  // Positions (0-based) of the entries of cell k, left to right.
  std::vector<int> cell_positions(int k) const;

  bool operator==(const GriddedPermutation&) const = default;
};

// The four staircase axioms: cells increasing; cell 2i right of 2i-1;
// cell 2i+1 above 2i; cell j >= i+2 above and right of cell i.
bool is_staircase_gridding(const Permutation& perm, const std::vector<int>& cell);

// Every gridding with labels <= max_cell, in position-major lexicographic
// order of the label vector.
std::vector<GriddedPermutation> all_staircase_griddings(const Permutation& pi, int max_cell);

GriddedPermutation greedy_gridding(const Permutation& pi);

bool satisfies_G1_G2(const GriddedPermutation& g);

// Entries of cells i and i+1 in domino order (by value when i is odd,
// by position when i is even), as (position, cell) pairs.
std::vector<std::pair<int, int>> domino_entries(const GriddedPermutation& g, int i);

// "value@cell" pairs in position order.
std::string render_gridding(const GriddedPermutation& g);
std::string gridding_dot(const GriddedPermutation& g);

}  // namespace stair

#endif  // STAIR_GRIDDING_HPP
