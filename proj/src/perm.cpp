#include "stair/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "stair/error.hpp"

namespace stair {

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  std::vector<bool> seen(values_.size() + 1, false);
  for (int v : values_) {
    if (v < 1 || v > size() || seen[v]) {
      throw std::invalid_argument("not a permutation of 1..n: " + str());
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

std::string Permutation::str() const {
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values_[i]);
  }
  return out;
}

namespace {

std::vector<int> parse_int_list(std::string_view text, const char* what) {
  std::vector<int> out;
  bool has_separator = false;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') has_separator = true;
  }
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (!has_separator && token.size() > 1) {
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
      throw ParseError(std::string("unexpected character '") + ch + "' in " + what);
    }
  }
  flush();
  return out;
}

}  // namespace

Permutation parse_permutation(std::string_view text) {
  std::vector<int> v = parse_int_list(text, "permutation");
  try {
    return Permutation(std::move(v));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::vector<Permutation> parse_basis(std::string_view text) {
  std::vector<Permutation> basis;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view part = text.substr(start, end - start);
    bool blank = std::all_of(part.begin(), part.end(),
                             [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (!blank) basis.push_back(parse_permutation(part));
    start = end + 1;
  }
  return basis;
}

Permutation standardize(const std::vector<int>& seq) {
  std::vector<int> order(seq.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return seq[a] < seq[b]; });
  std::vector<int> out(seq.size());
  for (std::size_t r = 0; r < order.size(); ++r) out[order[r]] = static_cast<int>(r) + 1;
  return Permutation(std::move(out));
}

namespace {

// Backtracking: place pattern entry k at some index after `from`, keeping
// the relative order with all earlier placed entries.
bool embed(const std::vector<int>& seq, const Permutation& sigma, int k, int from,
           std::vector<int>& chosen) {
  const int m = sigma.size();
  if (k == m) return true;
  const int n = static_cast<int>(seq.size());
  for (int i = from; i <= n - (m - k); ++i) {
    bool ok = true;
    for (int j = 0; j < k && ok; ++j) {
      ok = (sigma[j] < sigma[k]) == (seq[chosen[j]] < seq[i]);
    }
    if (!ok) continue;
    chosen[k] = i;
    if (embed(seq, sigma, k + 1, i + 1, chosen)) return true;
  }
  return false;
}

}  // namespace

std::vector<int> find_embedding(const std::vector<int>& seq, const Permutation& sigma) {
  std::vector<int> chosen(sigma.size());
  if (sigma.size() > static_cast<int>(seq.size())) return {};
  if (!embed(seq, sigma, 0, 0, chosen)) return {};
  return chosen;
}

bool contains(const std::vector<int>& seq, const Permutation& sigma) {
  if (sigma.empty()) return true;
  return !find_embedding(seq, sigma).empty();
}

bool contains(const Permutation& pi, const Permutation& sigma) {
  return contains(pi.values(), sigma);
}

bool avoids_all(const Permutation& pi, const std::vector<Permutation>& basis) {
  return std::none_of(basis.begin(), basis.end(),
                      [&](const Permutation& b) { return contains(pi, b); });
}

std::vector<int> left_to_right_maxima(const Permutation& pi) {
  std::vector<int> out;
  int best = 0;
  for (int i = 0; i < pi.size(); ++i) {
    if (pi[i] > best) {
      best = pi[i];
      out.push_back(i + 1);
    }
  }
  return out;
}

bool is_dyck_word(std::string_view steps) {
  int height = 0;
  for (char s : steps) {
    if (s == 'u') {
      ++height;
    } else if (s == 'd') {
      if (--height < 0) return false;
    } else {
      return false;
    }
  }
  return height == 0;
}

// The d-step of position p is preceded by exactly max(pi(1..p)) u-steps.
std::string dyck_encode(const Permutation& pi) {
  static const Permutation k321({3, 2, 1});
  if (contains(pi, k321)) throw DomainError("dyck_encode: permutation contains 321: " + pi.str());
  std::string out;
  int emitted = 0;
  int prefix_max = 0;
  for (int i = 0; i < pi.size(); ++i) {
    prefix_max = std::max(prefix_max, pi[i]);
    out.append(prefix_max - emitted, 'u');
    emitted = prefix_max;
    out += 'd';
  }
  return out;
}

Permutation dyck_decode(std::string_view steps) {
  if (!is_dyck_word(steps)) throw ParseError("not a Dyck word: " + std::string(steps));
  const int n = static_cast<int>(steps.size() / 2);
  std::vector<int> values(n, 0);
  std::vector<bool> used(n + 1, false);
  int ups = 0;
  int prev_max = 0;
  int pos = 0;
  for (char s : steps) {
    if (s == 'u') {
      ++ups;
      continue;
    }
    if (ups > prev_max) {
      values[pos] = ups;
      used[ups] = true;
      prev_max = ups;
    }
    ++pos;
  }
  int next = 1;
  for (int i = 0; i < n; ++i) {
    if (values[i]) continue;
    while (used[next]) ++next;
    values[i] = next;
    used[next] = true;
  }
  return Permutation(std::move(values));
}

bool InversionGraph::adjacent(int u, int v) const {
  return std::find(adjacency[u].begin(), adjacency[u].end(), v) != adjacency[u].end();
}

InversionGraph inversion_graph(const Permutation& pi) {
  InversionGraph g;
  g.n = pi.size();
  g.adjacency.resize(g.n);
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      if (pi[i] > pi[j]) {
        g.edges.emplace_back(i, j);
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
      }
    }
  }
  return g;
}

namespace {

bool connected(const InversionGraph& g) {
  if (g.n == 0) return true;
  std::vector<bool> seen(g.n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.adjacency[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == g.n;
}

}  // namespace

bool is_path_graph(const InversionGraph& g) {
  if (g.n == 0) return false;
  if (static_cast<int>(g.edges.size()) != g.n - 1 || !connected(g)) return false;
  for (int v = 0; v < g.n; ++v) {
    if (g.degree(v) > 2) return false;
  }
  return true;
}

bool is_double_ended_fork(const InversionGraph& g) {
  if (g.n < 6 || static_cast<int>(g.edges.size()) != g.n - 1 || !connected(g)) return false;
  std::vector<int> branch;
  int leaves = 0;
  for (int v = 0; v < g.n; ++v) {
    int d = g.degree(v);
    if (d == 3) {
      branch.push_back(v);
    } else if (d == 1) {
      ++leaves;
    } else if (d != 2) {
      return false;
    }
  }
  if (branch.size() != 2 || leaves != 4) return false;
  // Each branch vertex carries two pendant leaves; walk the spine between them.
  for (int b : branch) {
    int pendant = 0;
    for (int w : g.adjacency[b]) pendant += g.degree(w) == 1;
    if (pendant != 2) return false;
  }
  int prev = branch[0];
  int cur = -1;
  for (int w : g.adjacency[branch[0]]) {
    if (g.degree(w) != 1) cur = w;
  }
  int spine = 2;
  while (cur != branch[1]) {
    if (cur < 0 || g.degree(cur) != 2) return false;
    int next = g.adjacency[cur][0] == prev ? g.adjacency[cur][1] : g.adjacency[cur][0];
    prev = cur;
    cur = next;
    ++spine;
  }
  return spine + 4 == g.n;
}

std::vector<Permutation> sum_components(const Permutation& pi) {
  std::vector<Permutation> parts;
  int start = 0;
  int prefix_max = 0;
  for (int i = 0; i < pi.size(); ++i) {
    prefix_max = std::max(prefix_max, pi[i]);
    if (prefix_max == i + 1) {
      std::vector<int> part;
      for (int j = start; j <= i; ++j) part.push_back(pi[j] - start);
      parts.emplace_back(std::move(part));
      start = i + 1;
    }
  }
  return parts;
}

// Variant A follows 2 4 1 6 3 8 5 ..., variant B follows 3 1 5 2 7 4 9 ...;
// the last one or two entries close the path.
Permutation increasing_oscillation(int n, Oscillation variant) {
  if (n < 4) throw DomainError("increasing_oscillation: n must be at least 4");
  auto a_term = [](int j) { return j == 1 ? 2 : (j % 2 == 0 ? j + 2 : j - 2); };
  auto b_term = [](int j) { return j == 2 ? 1 : (j % 2 == 1 ? j + 2 : j - 2); };
  std::vector<int> v;
  const bool even = n % 2 == 0;
  const bool single_tail = (variant == Oscillation::A) == even;
  const int body = single_tail ? n - 1 : n - 2;
  for (int j = 1; j <= body; ++j) v.push_back(variant == Oscillation::A ? a_term(j) : b_term(j));
  if (single_tail) {
    v.push_back(n - 1);
  } else {
    v.push_back(n);
    v.push_back(n - 2);
  }
  return Permutation(std::move(v));
}

void for_each_321_avoider(int n, const std::function<bool(const std::vector<int>&)>& keep,
                          const std::function<void(const Permutation&)>& visit) {
  std::vector<int> prefix;
  std::vector<bool> used(n + 1, false);
  // A new entry v creates a 321 iff some earlier entry is the smaller end of
  // an inversion with value above v.
  std::vector<int> low_inversion{0};
  std::vector<int> prefix_max{0};
  std::function<void()> rec = [&] {
    if (static_cast<int>(prefix.size()) == n) {
      visit(Permutation(prefix));
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (used[v] || v < low_inversion.back()) continue;
      prefix.push_back(v);
      if (!keep || keep(prefix)) {
        used[v] = true;
        low_inversion.push_back(v < prefix_max.back() ? std::max(low_inversion.back(), v)
                                                       : low_inversion.back());
        prefix_max.push_back(std::max(prefix_max.back(), v));
        rec();
        prefix_max.pop_back();
        low_inversion.pop_back();
        used[v] = false;
      }
      prefix.pop_back();
    }
  };
  rec();
}

std::vector<Permutation> u_members(int n) {
  std::vector<Permutation> out;
  if (n < 6) return out;
  // The final degree of an entry is fixed once it is placed: every smaller
  // value not yet used must come later.  That prunes the scan to entries
  // of degree 1..3 with at most two 3s and four 1s.
  auto keep = [n](const std::vector<int>& prefix) {
    const int k = static_cast<int>(prefix.size());
    int deg3 = 0;
    int deg1 = 0;
    int prefix_max = 0;
    for (int i = 0; i < k; ++i) {
      int smaller_before = 0;
      for (int j = 0; j < i; ++j) smaller_before += prefix[j] < prefix[i];
      int degree = (i - smaller_before) + (prefix[i] - 1 - smaller_before);
      if (degree < 1 || degree > 3) return false;
      deg3 += degree == 3;
      deg1 += degree == 1;
      prefix_max = std::max(prefix_max, prefix[i]);
    }
    if (deg3 > 2 || deg1 > 4) return false;
    return k == n || prefix_max != k;  // sum-indecomposable
  };
  for_each_321_avoider(n, keep, [&](const Permutation& p) {
    if (is_double_ended_fork(inversion_graph(p))) out.push_back(p);
  });
  return out;
}

std::vector<Permutation> enumerate_av(const std::vector<Permutation>& basis, int n) {
  std::vector<Permutation> out;
  for (const Permutation& b : basis) {
    if (b.empty()) return out;
  }
  std::vector<int> prefix;
  std::vector<bool> used(n + 1, false);
  std::function<void()> rec = [&] {
    if (static_cast<int>(prefix.size()) == n) {
      out.emplace_back(prefix);
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (used[v]) continue;
      prefix.push_back(v);
      bool ok = std::none_of(basis.begin(), basis.end(),
                             [&](const Permutation& b) { return contains(prefix, b); });
      if (ok) {
        used[v] = true;
        rec();
        used[v] = false;
      }
      prefix.pop_back();
    }
  };
  rec();
  return out;
}

}  // namespace stair
