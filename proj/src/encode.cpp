#include "stair/encode.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "stair/error.hpp"

namespace stair {

PosWord parse_word(std::string_view text) {
  PosWord out;
  bool has_space = std::any_of(text.begin(), text.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ',';
  });
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (!has_space && token.size() > 1) {
      for (char d : token) out.push_back(d - '0');
    } else {
      out.push_back(std::stoi(token));
    }
    token.clear();
  };
  for (char ch : text) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      token += ch;
    } else if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      flush();
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "' in word");
    }
  }
  flush();
  for (int v : out) {
    if (v < 1) throw ParseError("word letters must be positive");
  }
  return out;
}

std::string format_word(const PosWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w[i]);
  }
  return out;
}

bool satisfies_sac(const PosWord& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] > w[i - 1] + 1) return false;
  }
  return true;
}

int max_letter(const PosWord& w) {
  int m = 0;
  for (int v : w) m = std::max(m, v);
  return m;
}

PosWord domino_factor(const PosWord& w, int i) {
  PosWord out;
  for (int v : w) {
    if (v == i || v == i + 1) out.push_back(v);
  }
  return out;
}

std::string domino_encoding(const PosWord& w) {
  std::string out;
  const int m = max_letter(w);
  if (m == 0) return out;
  for (int i = 0; i <= m; ++i) {
    for (int v : w) {
      if (v == i) out += 'o';
      if (v == i + 1) out += '*';
    }
    out += '#';
  }
  return out;
}

std::vector<std::string> split_domino_word(std::string_view dw) {
  std::vector<std::string> factors;
  std::string cur;
  for (char ch : dw) {
    if (ch == '#') {
      factors.push_back(cur);
      cur.clear();
    } else if (ch == 'o' || ch == '*') {
      cur += ch;
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      throw ParseError(std::string("unexpected character '") + ch + "' in domino word");
    }
  }
  if (!cur.empty()) throw ParseError("domino word must end with '#'");
  return factors;
}

PosWord omnibus_from_factors(const std::vector<std::string>& factors) {
  PosWord w;
  if (factors.empty()) return w;
  for (char ch : factors[0]) {
    if (ch != '*') throw DomainError("factor d_0 may only contain the upper letter");
    w.push_back(1);
  }
  for (std::size_t i = 1; i < factors.size(); ++i) {
    const int lo = static_cast<int>(i);
    const std::string& d = factors[i];
    // gaps[j] = number of upper letters following the j-th lower letter.
    std::vector<int> gaps{0};
    for (char ch : d) {
      if (ch == 'o') {
        gaps.push_back(0);
      } else {
        ++gaps.back();
      }
    }
    const int lows = static_cast<int>(gaps.size()) - 1;
    if (lows != static_cast<int>(std::count(w.begin(), w.end(), lo))) {
      throw DomainError("domino factor " + std::to_string(i) + " disagrees with the lower row");
    }
    PosWord next(gaps[0], lo + 1);
    int seen = 0;
    for (int v : w) {
      next.push_back(v);
      if (v == lo) next.insert(next.end(), gaps[++seen], lo + 1);
    }
    w = std::move(next);
  }
  return w;
}

std::vector<std::string> gridding_domino_factors(const GriddedPermutation& g) {
  std::vector<std::string> factors;
  const int m = g.max_cell();
  if (m == 0) return factors;
  for (int i = 0; i <= m; ++i) {
    std::string d;
    for (const auto& [pos, c] : domino_entries(g, i)) d += c == i ? 'o' : '*';
    factors.push_back(d);
  }
  return factors;
}

PosWord omnibus(const GriddedPermutation& g, std::vector<int>* entry_of) {
  if (!is_staircase_gridding(g.perm, g.cell)) throw DomainError("omnibus: not a staircase gridding");
  PosWord w = omnibus_from_factors(gridding_domino_factors(g));
  if (entry_of) {
    std::vector<std::vector<int>> cells(g.max_cell() + 1);
    for (int k = 1; k <= g.max_cell(); ++k) cells[k] = g.cell_positions(k);
    std::vector<int> used(g.max_cell() + 1, 0);
    entry_of->clear();
    for (int v : w) entry_of->push_back(cells[v][used[v]++]);
  }
  return w;
}

// Point t sits on the diagonal of cell w[t] at offset increasing with t.
// Cell 2k-1 has lower-left corner (k-1, k-1) and cell 2k has (k, k-1), so
// sorting by (corner, t) realizes the geometry without real numbers.
GriddedPermutation phi_sharp(const PosWord& w, std::vector<int>* entry_of) {
  const int n = static_cast<int>(w.size());
  auto col = [](int c) { return c % 2 ? (c - 1) / 2 : c / 2; };
  auto row = [](int c) { return c % 2 ? (c - 1) / 2 : c / 2 - 1; };
  std::vector<int> by_x(n), by_y(n);
  std::iota(by_x.begin(), by_x.end(), 0);
  std::iota(by_y.begin(), by_y.end(), 0);
  std::stable_sort(by_x.begin(), by_x.end(), [&](int a, int b) { return col(w[a]) < col(w[b]); });
  std::stable_sort(by_y.begin(), by_y.end(), [&](int a, int b) { return row(w[a]) < row(w[b]); });
  std::vector<int> value(n), position(n);
  for (int r = 0; r < n; ++r) {
    position[by_x[r]] = r;
    value[by_y[r]] = r + 1;
  }
  std::vector<int> perm(n), cell(n);
  for (int t = 0; t < n; ++t) {
    perm[position[t]] = value[t];
    cell[position[t]] = w[t];
  }
  if (entry_of) *entry_of = position;
  return {Permutation(std::move(perm)), std::move(cell)};
}

Permutation phi(const PosWord& w) { return phi_sharp(w).perm; }

PosWord shift(const PosWord& w, int k) {
  PosWord out;
  out.reserve(w.size());
  for (int v : w) {
    if (v + k < 1) throw DomainError("shift: letter would become nonpositive");
    out.push_back(v + k);
  }
  return out;
}

bool in_Lc_infinity(const PosWord& w, int c) {
  if (!satisfies_sac(w)) return false;
  const int m = max_letter(w);
  for (int i = 1; i + c - 1 <= m; ++i) {
    // Greedy subsequence match of (i (i+1) ... (i+c-1))^c.
    int matched = 0;
    for (int v : w) {
      if (v == i + matched % c && ++matched == c * c) return false;
    }
  }
  return true;
}

int c_for_basis_element(const Permutation& beta) {
  static const Permutation k321({3, 2, 1});
  if (beta.empty()) throw DomainError("c_for_basis_element: empty basis element");
  if (contains(beta, k321)) throw DomainError("c_for_basis_element: basis element contains 321");
  return beta.size() + 1;
}

}  // namespace stair
