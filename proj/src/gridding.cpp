#include "stair/gridding.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "stair/error.hpp"

namespace stair {

namespace {

void require_321_avoiding(const Permutation& pi, const char* op) {
  static const Permutation k321({3, 2, 1});
  if (contains(pi, k321)) {
    throw DomainError(std::string(op) + ": permutation contains 321: " + pi.str());
  }
}

// Axioms for a pair of entries a (left) and b (right).
bool pair_ok(int val_a, int cell_a, int val_b, int cell_b) {
  int lo = std::min(cell_a, cell_b);
  int hi = std::max(cell_a, cell_b);
  bool a_low = cell_a == lo;
  if (lo == hi) return val_a < val_b;
  if (hi == lo + 1) {
    if (lo % 2 == 1) return a_low;  // cells 2i-1, 2i: higher cell to the right
    return (val_a < val_b) == a_low;  // cells 2i, 2i+1: higher cell above
  }
  return a_low && val_a < val_b;
}

}  // namespace

int GriddedPermutation::max_cell() const {
  int m = 0;
  for (int c : cell) m = std::max(m, c);
  return m;
}

std::vector<int> GriddedPermutation::cell_positions(int k) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(cell.size()); ++i) {
    if (cell[i] == k) out.push_back(i);
  }
  return out;
}

bool is_staircase_gridding(const Permutation& perm, const std::vector<int>& cell) {
  if (static_cast<int>(cell.size()) != perm.size()) return false;
  for (int i = 0; i < perm.size(); ++i) {
    if (cell[i] < 1) return false;
    for (int j = i + 1; j < perm.size(); ++j) {
      if (!pair_ok(perm[i], cell[i], perm[j], cell[j])) return false;
    }
  }
  return true;
}

std::vector<GriddedPermutation> all_staircase_griddings(const Permutation& pi, int max_cell) {
  require_321_avoiding(pi, "all_staircase_griddings");
  std::vector<GriddedPermutation> out;
  std::vector<int> cell(pi.size(), 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == pi.size()) {
      out.push_back({pi, cell});
      return;
    }
    for (int c = 1; c <= max_cell; ++c) {
      bool ok = true;
      for (int j = 0; j < pos && ok; ++j) ok = pair_ok(pi[j], cell[j], pi[pos], c);
      if (!ok) continue;
      cell[pos] = c;
      rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

// Odd cells take the longest increasing prefix (by position) of what is
// left; even cells take the longest run of smallest remaining values whose
// positions increase.
GriddedPermutation greedy_gridding(const Permutation& pi) {
  require_321_avoiding(pi, "greedy_gridding");
  const int n = pi.size();
  std::vector<int> cell(n, 0);
  std::vector<int> pos_of(n + 1);
  for (int i = 0; i < n; ++i) pos_of[pi[i]] = i;
  int assigned = 0;
  for (int k = 1; assigned < n; ++k) {
    if (k % 2 == 1) {
      int last = 0;
      for (int i = 0; i < n; ++i) {
        if (cell[i]) continue;
        if (pi[i] < last) break;
        cell[i] = k;
        last = pi[i];
        ++assigned;
      }
    } else {
      int last = -1;
      for (int v = 1; v <= n; ++v) {
        int i = pos_of[v];
        if (cell[i]) continue;
        if (i < last) break;
        cell[i] = k;
        last = i;
        ++assigned;
      }
    }
  }
  return {pi, cell};
}

std::vector<std::pair<int, int>> domino_entries(const GriddedPermutation& g, int i) {
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p < g.perm.size(); ++p) {
    if (g.cell[p] == i || g.cell[p] == i + 1) out.emplace_back(p, g.cell[p]);
  }
  if (i % 2 == 1) {
    std::sort(out.begin(), out.end(),
              [&](const auto& a, const auto& b) { return g.perm[a.first] < g.perm[b.first]; });
  }
  return out;
}

bool satisfies_G1_G2(const GriddedPermutation& g) {
  if (!is_staircase_gridding(g.perm, g.cell)) {
    throw DomainError("satisfies_G1_G2: not a staircase gridding");
  }
  const int m = g.max_cell();
  for (int i = 1; i <= m; ++i) {
    auto upper = domino_entries(g, i + 1);
    if (!upper.empty() && upper.front().second != i + 1) return false;  // (G1)
    auto lower = domino_entries(g, i);
    auto first = std::find_if(lower.begin(), lower.end(),
                              [&](const auto& e) { return e.second == i + 1; });
    if (first == lower.end()) continue;
    bool followed = std::any_of(first, lower.end(), [&](const auto& e) { return e.second == i; });
    if (!followed) return false;  // (G2)
  }
  return true;
}

std::string render_gridding(const GriddedPermutation& g) {
  std::string out;
  for (int i = 0; i < g.perm.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(g.perm[i]) + '@' + std::to_string(g.cell[i]);
  }
  return out;
}

std::string gridding_dot(const GriddedPermutation& g) {
  std::ostringstream os;
  os << "graph gridding {\n  node [shape=circle];\n";
  for (int k = 1; k <= g.max_cell(); ++k) {
    auto pos = g.cell_positions(k);
    if (pos.empty()) continue;
    os << "  subgraph cluster_" << k << " {\n    label=\"cell " << k << "\";\n";
    for (int p : pos) {
      os << "    e" << p << " [label=\"" << g.perm[p] << "\", pos=\"" << p + 1 << ','
         << g.perm[p] << "!\"];\n";
    }
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace stair
