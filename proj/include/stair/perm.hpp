#ifndef STAIR_PERM_HPP
#define STAIR_PERM_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stair {

// One-line notation; values are 1..n, indices are 0-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> values);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(values_.size()); }
  bool empty() const { return values_.empty(); }
  int operator[](int i) const { return values_[i]; }
  const std::vector<int>& values() const { return values_; }

  std::string str() const;

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> values_;
};

// Accepts "2 3 1 4", "2,3,1,4" and the compact "2314" (one digit per entry).
Permutation parse_permutation(std::string_view text);
// Semicolon separated list, e.g. "231;2143".
std::vector<Permutation> parse_basis(std::string_view text);

// Order-isomorphic permutation of a sequence of distinct integers.
Permutation standardize(const std::vector<int>& seq);

// Positions (0-based, increasing) of some occurrence of sigma in seq, or empty.
std::vector<int> find_embedding(const std::vector<int>& seq, const Permutation& sigma);
bool contains(const std::vector<int>& seq, const Permutation& sigma);
bool contains(const Permutation& pi, const Permutation& sigma);
bool avoids_all(const Permutation& pi, const std::vector<Permutation>& basis);

// 1-based indices of the left-to-right maxima.
std::vector<int> left_to_right_maxima(const Permutation& pi);

bool is_dyck_word(std::string_view steps);
std::string dyck_encode(const Permutation& pi);
Permutation dyck_decode(std::string_view steps);

struct InversionGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // (i, j) with i < j, 0-based entry indices
  std::vector<std::vector<int>> adjacency;

  int degree(int v) const { return static_cast<int>(adjacency[v].size()); }
  bool adjacent(int u, int v) const;
};

InversionGraph inversion_graph(const Permutation& pi);
bool is_path_graph(const InversionGraph& g);
bool is_double_ended_fork(const InversionGraph& g);

std::vector<Permutation> sum_components(const Permutation& pi);

enum class Oscillation { A, B };
Permutation increasing_oscillation(int n, Oscillation variant);

// Depth-first generation of the 321-avoiders of length n in lexicographic
// order.  `keep(prefix)` may veto a prefix (and so its whole subtree).
void for_each_321_avoider(int n, const std::function<bool(const std::vector<int>&)>& keep,
                          const std::function<void(const Permutation&)>& visit);

std::vector<Permutation> u_members(int n);
std::vector<Permutation> enumerate_av(const std::vector<Permutation>& basis, int n);

}  // namespace stair

#endif  // STAIR_PERM_HPP
