#ifndef STAIR_ENCODE_HPP
#define STAIR_ENCODE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "stair/gridding.hpp"
#include "stair/perm.hpp"

namespace stair {

// Word over the positive integers.
using PosWord = std::vector<int>;

// Whitespace separated integers; a single token of several digits is read
// one digit per letter ("2112").
PosWord parse_word(std::string_view text);
std::string format_word(const PosWord& w);

bool satisfies_sac(const PosWord& w);
int max_letter(const PosWord& w);

PosWord domino_factor(const PosWord& w, int i);

// ASCII form: 'o' for the lower letter i, '*' for i+1, '#' after each factor.
std::string domino_encoding(const PosWord& w);
// Split a domino word into its factors (without the '#').
std::vector<std::string> split_domino_word(std::string_view dw);
// Row stacking of the omnibus construction from domino factors d_0..d_m.
PosWord omnibus_from_factors(const std::vector<std::string>& factors);

// Domino factors of a gridded permutation, d_0..d_m with m its last nonempty cell.
std::vector<std::string> gridding_domino_factors(const GriddedPermutation& g);

// entry_of[t], when requested, is the position in g.perm of the entry
// encoded by letter t.
PosWord omnibus(const GriddedPermutation& g, std::vector<int>* entry_of = nullptr);
GriddedPermutation phi_sharp(const PosWord& w, std::vector<int>* entry_of = nullptr);
Permutation phi(const PosWord& w);

PosWord shift(const PosWord& w, int k);
bool in_Lc_infinity(const PosWord& w, int c);
int c_for_basis_element(const Permutation& beta);

}  // namespace stair

#endif  // STAIR_ENCODE_HPP
