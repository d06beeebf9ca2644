#include "stair/panel.hpp"

#include <algorithm>
#include <cctype>

#include "stair/error.hpp"

namespace stair {

namespace {

struct Tracked {
  DecoratedLetter letter;
  int origin = -1;
};

using TrackedWord = std::vector<Tracked>;

std::vector<DecoratedLetter> letters_of(const TrackedWord& w) {
  std::vector<DecoratedLetter> out;
  out.reserve(w.size());
  for (const Tracked& t : w) out.push_back(t.letter);
  return out;
}

TrackedWord track(const std::vector<DecoratedLetter>& w) {
  TrackedWord out;
  out.reserve(w.size());
  for (const DecoratedLetter& l : w) out.push_back({l, -1});
  return out;
}

std::pair<TrackedWord, TrackedWord> split_tracked(const TrackedWord& r, int c) {
  if (!check_R(letters_of(r), c)) throw DomainError("split: remainder word violates (R1)-(R3)");
  // Factor at the letters of value 1: r = f_0 l_1 f_1 ... l_k f_k.
  std::vector<TrackedWord> factors(1);
  std::vector<Tracked> ones;
  for (const Tracked& t : r) {
    if (t.letter.value == 1) {
      ones.push_back(t);
      factors.emplace_back();
    } else {
      factors.back().push_back(t);
    }
  }
  const int k = static_cast<int>(ones.size());
  std::vector<bool> large(k + 1, false);
  int large_count = 0;
  for (int j = 1; j <= k; ++j) {
    large[j] = std::any_of(factors[j].begin(), factors[j].end(),
                           [&](const Tracked& t) { return t.letter.value == c; });
    if (!large[j]) continue;
    if (factors[j].front().letter.value != 2) {
      throw DomainError("split: large factor does not start with 2");
    }
    factors[j].front().letter.left = true;
    ones[j - 1].letter.right = true;
    ++large_count;
  }
  if (large_count > c - 1) throw DomainError("split: more than c-1 large factors");

  TrackedWord panel;
  TrackedWord rest;
  auto push_decremented = [&](const TrackedWord& f) {
    for (Tracked t : f) {
      --t.letter.value;
      rest.push_back(t);
    }
  };
  push_decremented(factors[0]);
  for (int j = 1; j <= k; ++j) {
    panel.push_back(ones[j - 1]);
    if (large[j]) {
      push_decremented(factors[j]);
    } else {
      panel.insert(panel.end(), factors[j].begin(), factors[j].end());
    }
  }
  return {panel, rest};
}

TrackedWord split_inverse_tracked(const TrackedWord& p, const TrackedWord& r) {
  std::vector<TrackedWord> s(1);
  std::vector<Tracked> lefts;
  for (const Tracked& t : r) {
    if (t.letter.left) {
      if (t.letter.value != 1 || t.letter.right) {
        throw DomainError("split_inverse: remainder letters must come from P and 1<");
      }
      lefts.push_back(t);
      s.emplace_back();
    } else {
      s.back().push_back(t);
    }
  }
  if (static_cast<int>(lefts.size()) != right_count(letters_of(p))) {
    throw DomainError("split_inverse: right(p) != left(r)");
  }
  TrackedWord out;
  auto push_shifted = [&](const TrackedWord& f) {
    for (Tracked t : f) {
      ++t.letter.value;
      out.push_back(t);
    }
  };
  push_shifted(s[0]);
  std::size_t next = 0;
  for (Tracked t : p) {
    if (!t.letter.right) {
      out.push_back(t);
      continue;
    }
    t.letter.right = false;
    out.push_back(t);
    Tracked two = lefts[next];
    two.letter = {2, false, false};
    out.push_back(two);
    push_shifted(s[++next]);
  }
  return out;
}

bool valid_panel_letter(const DecoratedLetter& l, int c) {
  if (l.value < 1 || l.value > c - 1) return false;
  return !l.decorated() || l.value == 1;
}

}  // namespace

RemainderWord undecorated_letters(const PosWord& w) {
  RemainderWord out;
  out.reserve(w.size());
  for (int v : w) out.push_back({v, false, false});
  return out;
}

PosWord strip_decorations(const std::vector<DecoratedLetter>& word) {
  PosWord out;
  out.reserve(word.size());
  for (const DecoratedLetter& l : word) out.push_back(l.value);
  return out;
}

int left_count(const std::vector<DecoratedLetter>& word) {
  return static_cast<int>(
      std::count_if(word.begin(), word.end(), [](const DecoratedLetter& l) { return l.left; }));
}

int right_count(const std::vector<DecoratedLetter>& word) {
  return static_cast<int>(
      std::count_if(word.begin(), word.end(), [](const DecoratedLetter& l) { return l.right; }));
}

std::string format_letter(const DecoratedLetter& l) {
  std::string out = std::to_string(l.value);
  if (l.left) out += '<';
  if (l.right) out += '>';
  return out;
}

namespace {

bool needs_spaces(const PanelEncoding& e) {
  for (const PanelWord& p : e) {
    for (const DecoratedLetter& l : p) {
      if (l.value > 9) return true;
    }
  }
  return false;
}

void append_panel(std::string& out, const PanelWord& p, bool spaced) {
  for (const DecoratedLetter& l : p) {
    if (spaced && !out.empty()) out += ' ';
    out += format_letter(l);
  }
}

}  // namespace

std::string format_panel_word(const PanelWord& p) {
  std::string out;
  append_panel(out, p, needs_spaces({p}));
  return out;
}

// Compact when every value is a single digit, otherwise one token per
// letter with '#' as its own token.
std::string format_encoding(const PanelEncoding& e) {
  const bool spaced = needs_spaces(e);
  std::string out;
  for (const PanelWord& p : e) {
    append_panel(out, p, spaced);
    if (spaced && !out.empty()) out += ' ';
    out += '#';
  }
  return out;
}

namespace {

std::string ascii_arrows(std::string_view text) {
  std::string s(text);
  auto replace_all = [&](const std::string& from, const std::string& to) {
    for (std::size_t at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size())) {
      s.replace(at, from.size(), to);
    }
  };
  replace_all("↔", "<>");
  replace_all("←", "<");
  replace_all("→", ">");
  return s;
}

// Returns the letters and the positions where '#' occurred.
std::vector<std::vector<DecoratedLetter>> tokenize(std::string_view raw, bool& ends_with_hash) {
  const std::string text = ascii_arrows(raw);
  const bool spaced = std::any_of(text.begin(), text.end(),
                                  [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  std::vector<std::vector<DecoratedLetter>> panels(1);
  ends_with_hash = false;
  std::size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (ch == '#') {
      panels.emplace_back();
      ends_with_hash = true;
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw ParseError(std::string("unexpected character '") + ch + "' in panel word");
    }
    std::size_t j = i + 1;
    if (spaced) {
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    }
    DecoratedLetter l{std::stoi(text.substr(i, j - i)), false, false};
    if (l.value < 1) throw ParseError("panel letters must be positive");
    if (j < text.size() && text[j] == '<') {
      l.left = true;
      ++j;
    }
    if (j < text.size() && text[j] == '>') {
      l.right = true;
      ++j;
    }
    panels.back().push_back(l);
    ends_with_hash = false;
    i = j;
  }
  return panels;
}

}  // namespace

PanelWord parse_panel_word(std::string_view text) {
  bool ends_with_hash = false;
  auto panels = tokenize(text, ends_with_hash);
  if (panels.size() != 1) throw ParseError("panel word may not contain '#'");
  return panels[0];
}

PanelEncoding parse_encoding(std::string_view text) {
  bool ends_with_hash = false;
  auto panels = tokenize(text, ends_with_hash);
  if (!panels.back().empty()) throw ParseError("panel encoding must end with '#'");
  panels.pop_back();
  return panels;
}

std::pair<PanelWord, RemainderWord> split(const RemainderWord& r, int c) {
  auto [p, rest] = split_tracked(track(r), c);
  return {letters_of(p), letters_of(rest)};
}

RemainderWord split_inverse(const PanelWord& p, const RemainderWord& r) {
  return letters_of(split_inverse_tracked(track(p), track(r)));
}

PanelEncoding eta(const PosWord& w, int c, std::vector<std::vector<int>>* letter_of) {
  if (!in_Lc_infinity(w, c)) throw DomainError("eta: word is not in L_c^infinity");
  const int m = max_letter(w);
  TrackedWord r;
  for (int t = 0; t < static_cast<int>(w.size()); ++t) r.push_back({{w[t], false, false}, t});
  PanelEncoding e;
  if (letter_of) letter_of->clear();
  for (int i = 0; i < m; ++i) {
    auto [p, rest] = split_tracked(r, c);
    e.push_back(letters_of(p));
    if (letter_of) {
      letter_of->emplace_back();
      for (const Tracked& t : p) letter_of->back().push_back(t.origin);
    }
    r = std::move(rest);
  }
  if (!r.empty()) throw DomainError("eta: remainder not exhausted after m panels");
  return e;
}

PosWord eta_inverse(const PanelEncoding& e, int c) {
  if (c > 0 && !check_L(e, c)) throw DomainError("eta_inverse: encoding violates (L1)-(L4)");
  RemainderWord r;
  for (auto it = e.rbegin(); it != e.rend(); ++it) r = split_inverse(*it, r);
  for (const DecoratedLetter& l : r) {
    if (l.decorated()) throw DomainError("eta_inverse: decorations left over");
  }
  return strip_decorations(r);
}

bool check_R(const RemainderWord& r, int c) {
  for (const DecoratedLetter& l : r) {
    if (l.value < 1 || l.right) return false;
    if (l.left && l.value != 1) return false;
  }
  if (!in_Lc_infinity(strip_decorations(r), c)) return false;  // (R1)
  if (left_count(r) >= c) return false;                          // (R2)
  // (R3): every factor starting at a left letter reaches value c-1.
  bool open = false;
  bool seen = false;
  for (const DecoratedLetter& l : r) {
    if (l.left) {
      if (open && !seen) return false;
      open = true;
      seen = false;
    }
    if (l.value == c - 1) seen = true;
  }
  return !open || seen;
}

bool check_P(const PanelWord& p, int c) {
  for (const DecoratedLetter& l : p) {
    if (!valid_panel_letter(l, c)) return false;
  }
  if (!satisfies_sac(strip_decorations(p))) return false;       // (P1)
  if (!p.empty() && p.front().value != 1) return false;          // (P2)
  if (left_count(p) >= c || right_count(p) >= c) return false;   // (P3)
  for (std::size_t i = 1; i < p.size(); ++i) {                   // (P4)
    if (p[i - 1].right && p[i].value != 1) return false;
  }
  bool open = false;                                             // (P5)
  bool seen = false;
  for (const DecoratedLetter& l : p) {
    if (l.left) {
      if (open && !seen) return false;
      open = true;
      seen = false;
    }
    if (l.value == c - 1 || l.right) seen = true;
  }
  return !open || seen;
}

bool check_L(const PanelEncoding& e, int c) {
  const int m = static_cast<int>(e.size());
  if (m == 0) return true;
  for (const PanelWord& p : e) {
    if (!check_P(p, c)) return false;  // (L1)
  }
  if (left_count(e.front()) != 0 || right_count(e.back()) != 0) return false;  // (L2)
  for (int j = 0; j + 1 < m; ++j) {
    if (right_count(e[j]) != left_count(e[j + 1])) return false;
  }
  bool witness = false;  // (L3)
  for (int j = 0; j < m; ++j) {
    for (const DecoratedLetter& l : e[j]) {
      if (l.value > m - j) return false;  // (L4)
      if (l.value == m - j) witness = true;
    }
  }
  return witness;
}

}  // namespace stair
