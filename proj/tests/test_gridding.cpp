#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stair/encode.hpp"
#include "stair/error.hpp"
#include "stair/gridding.hpp"

using namespace stair;

namespace {

Permutation P(const char* s) { return parse_permutation(s); }

const char* kFig2 = "2 3 1 4 7 8 5 11 6 9 12 10 14 13 15";

std::vector<int> values_in_cell(const GriddedPermutation& g, int k) {
  std::vector<int> out;
  for (int p : g.cell_positions(k)) out.push_back(g.perm[p]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("greedy gridding of a six-cell permutation") {
  auto g = greedy_gridding(P(kFig2));
  CHECK(g.max_cell() == 6);
  CHECK(values_in_cell(g, 1) == std::vector<int>{2, 3});
  CHECK(values_in_cell(g, 2) == std::vector<int>{1, 4, 5, 6});
  CHECK(values_in_cell(g, 3) == std::vector<int>{7, 8, 11});
  CHECK(values_in_cell(g, 4) == std::vector<int>{9, 10});
  CHECK(values_in_cell(g, 5) == std::vector<int>{12, 14});
  CHECK(values_in_cell(g, 6) == std::vector<int>{13, 15});
  CHECK(satisfies_G1_G2(g));
}

TEST_CASE("simple greedy griddings") {
  auto g = greedy_gridding(P("123"));
  CHECK(g.cell == std::vector<int>{1, 1, 1});
  CHECK(omnibus(greedy_gridding(P("2314"))) == PosWord{2, 1, 1, 2});
  CHECK_THROWS_AS(greedy_gridding(P("321")), DomainError);
  CHECK(greedy_gridding(Permutation()).cell.empty());
}

TEST_CASE("all_staircase_griddings") {
  auto gs = all_staircase_griddings(P("2314"), 4);
  bool has_2112 = false, has_3323 = false;
  for (const auto& g : gs) {
    auto w = omnibus(g);
    has_2112 |= w == PosWord{2, 1, 1, 2};
    has_3323 |= w == PosWord{3, 3, 2, 3};
  }
  CHECK(has_2112);
  CHECK(has_3323);
  CHECK(all_staircase_griddings(Permutation(), 3).size() == 1);
  CHECK(all_staircase_griddings(P("1"), 3).size() == 3);
  CHECK_THROWS_AS(all_staircase_griddings(P("321"), 3), DomainError);
}

TEST_CASE("3323 gridding is not greedy") {
  for (const auto& g : all_staircase_griddings(P("2314"), 4)) {
    if (omnibus(g) == PosWord{3, 3, 2, 3}) CHECK_FALSE(satisfies_G1_G2(g));
  }
  GriddedPermutation one{P("1"), {1}};
  CHECK(satisfies_G1_G2(one));
}

TEST_CASE("greedy characterization over all small griddings") {
  for (int n = 0; n <= 7; ++n) {
    for (const auto& pi : enumerate_av({P("321")}, n)) {
      auto greedy = greedy_gridding(pi);
      // Nonempty cells of the greedy gridding form an initial segment.
      for (int k = 1; k <= greedy.max_cell(); ++k) CHECK_FALSE(greedy.cell_positions(k).empty());
      int greedy_hits = 0;
      for (const auto& g : all_staircase_griddings(pi, std::max(2 * n, 1))) {
        bool is_greedy = g == greedy;
        greedy_hits += is_greedy;
        CHECK(satisfies_G1_G2(g) == is_greedy);
      }
      CHECK(greedy_hits == 1);
    }
  }
}

TEST_CASE("cell orders coincide") {
  for (const auto& pi : enumerate_av({P("321")}, 6)) {
    for (const auto& g : all_staircase_griddings(pi, 6)) {
      for (int k = 1; k <= 6; ++k) {
        auto pos = g.cell_positions(k);
        for (std::size_t a = 1; a < pos.size(); ++a) CHECK(g.perm[pos[a - 1]] < g.perm[pos[a]]);
      }
    }
  }
}

TEST_CASE("rendering") {
  CHECK(render_gridding(greedy_gridding(P("2314"))) == "2@1 3@1 1@2 4@2");
  CHECK(gridding_dot(greedy_gridding(P("12"))).find("graph gridding") != std::string::npos);
}
