#ifndef STAIR_PANEL_HPP
#define STAIR_PANEL_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stair/encode.hpp"

namespace stair {

// 1< (left), 1> (right), 1<> (both).  A transient 2< also fits here.
struct DecoratedLetter {
  int value = 1;
  bool left = false;
  bool right = false;

  bool decorated() const { return left || right; }
  bool operator==(const DecoratedLetter&) const = default;
};

using PanelWord = std::vector<DecoratedLetter>;
using RemainderWord = std::vector<DecoratedLetter>;
using PanelEncoding = std::vector<PanelWord>;

RemainderWord undecorated_letters(const PosWord& w);
PosWord strip_decorations(const std::vector<DecoratedLetter>& word);

int left_count(const std::vector<DecoratedLetter>& word);
int right_count(const std::vector<DecoratedLetter>& word);

std::string format_letter(const DecoratedLetter& l);
std::string format_panel_word(const PanelWord& p);
std::string format_encoding(const PanelEncoding& e);
PanelWord parse_panel_word(std::string_view text);
PanelEncoding parse_encoding(std::string_view text);

std::pair<PanelWord, RemainderWord> split(const RemainderWord& r, int c);
RemainderWord split_inverse(const PanelWord& p, const RemainderWord& r);

// letter_of[i][t], when requested, is the index in w of the letter encoded
// by letter t of panel i.
PanelEncoding eta(const PosWord& w, int c, std::vector<std::vector<int>>* letter_of = nullptr);
// With c > 0 the encoding is first checked against (L1)-(L4).
PosWord eta_inverse(const PanelEncoding& e, int c = 0);

bool check_R(const RemainderWord& r, int c);
bool check_P(const PanelWord& p, int c);
bool check_L(const PanelEncoding& e, int c);

}  // namespace stair

#endif  // STAIR_PANEL_HPP
