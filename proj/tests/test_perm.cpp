#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "stair/error.hpp"
#include "stair/perm.hpp"

using namespace stair;

namespace {

Permutation P(const char* s) { return parse_permutation(s); }

// Naive containment: try every subset of positions.
bool naive_contains(const Permutation& pi, const Permutation& sigma) {
  const int n = pi.size(), k = sigma.size();
  if (k == 0) return true;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> sub;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) sub.push_back(pi[i]);
    }
    if (standardize(sub) == sigma) return true;
  }
  return false;
}

std::vector<Permutation> all_perms(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  std::vector<Permutation> out;
  do out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

const long long kCatalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};

}  // namespace

TEST_CASE("parsing and validation") {
  CHECK(P("2 3 1 4").values() == std::vector<int>{2, 3, 1, 4});
  CHECK(P("2,3,1,4") == P("2314"));
  CHECK(P("").empty());
  CHECK_THROWS_AS(P("2 2 1"), ParseError);
  CHECK_THROWS_AS(P("1 3"), ParseError);
  CHECK_THROWS_AS(P("1 x"), ParseError);
  auto b = parse_basis("231;2143");
  REQUIRE(b.size() == 2);
  CHECK(b[1] == P("2143"));
}

TEST_CASE("containment examples") {
  CHECK(contains(P("251634"), P("4123")));
  CHECK(contains(P("251634"), Permutation()));
  CHECK_FALSE(contains(P("2314"), P("321")));
  CHECK(avoids_all(P("2314"), {P("321")}));
  CHECK_FALSE(avoids_all(P("321"), {P("321")}));
  CHECK_FALSE(avoids_all(P("2341"), {P("321"), P("2341")}));
  auto emb = find_embedding(P("251634").values(), P("4123"));
  REQUIRE(emb.size() == 4);
  std::vector<int> sub;
  for (int i : emb) sub.push_back(P("251634")[i]);
  CHECK(standardize(sub) == P("4123"));
}

TEST_CASE("containment agrees with subset oracle") {
  std::vector<Permutation> patterns;
  for (int k = 1; k <= 4; ++k) {
    auto ps = all_perms(k);
    patterns.insert(patterns.end(), ps.begin(), ps.end());
  }
  std::mt19937 rng(7);
  for (int n = 0; n <= 8; ++n) {
    auto perms = all_perms(n);
    std::shuffle(perms.begin(), perms.end(), rng);
    if (perms.size() > 60) perms.resize(60);
    for (const auto& pi : perms) {
      for (const auto& s : patterns) CHECK(contains(pi, s) == naive_contains(pi, s));
    }
  }
}

TEST_CASE("left-to-right maxima") {
  CHECK(left_to_right_maxima(P("31562487")) == std::vector<int>{1, 3, 4, 7});
  CHECK(left_to_right_maxima(P("1234")) == std::vector<int>{1, 2, 3, 4});
  CHECK(left_to_right_maxima(Permutation()).empty());
}

TEST_CASE("Dyck encoding") {
  CHECK(dyck_encode(P("31562487")) == "uuudduududdduudd");
  CHECK(dyck_decode("uuudduududdduudd") == P("31562487"));
  CHECK(dyck_encode(P("1")) == "ud");
  CHECK(dyck_encode(P("1234")) == "udududud");
  CHECK(dyck_decode("ud") == P("1"));
  CHECK(dyck_decode("uudd") == P("21"));
  CHECK(dyck_encode(Permutation()).empty());
  CHECK_THROWS_AS(dyck_encode(P("321")), DomainError);
  CHECK_THROWS(dyck_decode("udd"));
  CHECK_THROWS(dyck_decode("du"));
  CHECK(is_dyck_word("uudd"));
  CHECK_FALSE(is_dyck_word("dudu"));
}

TEST_CASE("Dyck round trip and Catalan enumeration") {
  for (int n = 0; n <= 9; ++n) {
    auto av = enumerate_av({P("321")}, n);
    CHECK(static_cast<long long>(av.size()) == kCatalan[n]);
    std::set<std::string> words;
    for (const auto& pi : av) {
      auto d = dyck_encode(pi);
      CHECK(dyck_decode(d) == pi);
      words.insert(d);
    }
    CHECK(words.size() == av.size());
  }
  CHECK(enumerate_av({P("321")}, 10).size() == 16796);
}

TEST_CASE("enumerate_av") {
  auto s3 = enumerate_av({P("321")}, 3);
  CHECK(s3.size() == 5);  // all of S_3 except 321
  CHECK(std::is_sorted(s3.begin(), s3.end()));
  CHECK(enumerate_av({P("321"), P("123")}, 5).empty());
  CHECK(enumerate_av({P("321"), P("123")}, 4).size() == 4);
  for (int n = 1; n <= 8; ++n) {
    CHECK(enumerate_av({P("321"), P("312")}, n).size() == (1u << (n - 1)));
  }
}

TEST_CASE("inversion graphs") {
  CHECK(inversion_graph(P("21")).edges.size() == 1);
  CHECK(inversion_graph(P("123")).edges.empty());
  for (int n = 4; n <= 20; ++n) {
    for (auto v : {Oscillation::A, Oscillation::B}) {
      auto osc = increasing_oscillation(n, v);
      CHECK_FALSE(contains(osc, P("321")));
      CHECK(is_path_graph(inversion_graph(osc)));
    }
  }
  CHECK(increasing_oscillation(6, Oscillation::A) == P("241635"));
  CHECK(increasing_oscillation(5, Oscillation::B) == P("31524"));
  CHECK_THROWS(increasing_oscillation(3, Oscillation::A));
}

TEST_CASE("induced subgraph property") {
  std::mt19937 rng(11);
  for (int n = 3; n <= 7; ++n) {
    for (const auto& pi : enumerate_av({P("321")}, n)) {
      if (rng() % 4) continue;
      auto gp = inversion_graph(pi);
      for (const auto& sigma : enumerate_av({P("321")}, 3)) {
        auto emb = find_embedding(pi.values(), sigma);
        if (emb.empty()) continue;
        auto gs = inversion_graph(sigma);
        for (int a = 0; a < 3; ++a) {
          for (int b = a + 1; b < 3; ++b) CHECK(gp.adjacent(emb[a], emb[b]) == gs.adjacent(a, b));
        }
      }
    }
  }
}

TEST_CASE("sum components") {
  CHECK(sum_components(P("123")) == std::vector<Permutation>{P("1"), P("1"), P("1")});
  CHECK(sum_components(P("21")) == std::vector<Permutation>{P("21")});
  CHECK(sum_components(P("2134")) == std::vector<Permutation>{P("21"), P("1"), P("1")});
  CHECK(sum_components(Permutation()).empty());
}

TEST_CASE("double-ended forks and U") {
  const char* fig12[] = {"2 3 5 1 7 4 9 6 10 11 8", "4 1 2 6 3 8 5 11 7 9 10",
                         "2 3 5 1 7 4 10 6 8 9", "4 1 2 6 3 8 5 9 10 7"};
  for (const char* s : fig12) CHECK(is_double_ended_fork(inversion_graph(P(s))));
  CHECK_FALSE(is_double_ended_fork(inversion_graph(increasing_oscillation(8, Oscillation::A))));
  InversionGraph star;
  star.n = 5;
  star.adjacency.assign(5, {});
  for (int v = 1; v < 5; ++v) {
    star.edges.push_back({0, v});
    star.adjacency[0].push_back(v);
    star.adjacency[v].push_back(0);
  }
  CHECK_FALSE(is_double_ended_fork(star));
  CHECK(u_members(4).empty());

  auto u11 = u_members(11);
  CHECK(std::binary_search(u11.begin(), u11.end(), P(fig12[0])));
  CHECK(std::binary_search(u11.begin(), u11.end(), P(fig12[1])));
  auto u10 = u_members(10);
  CHECK(std::binary_search(u10.begin(), u10.end(), P(fig12[2])));
  CHECK(std::binary_search(u10.begin(), u10.end(), P(fig12[3])));
}

TEST_CASE("u_members agrees with exhaustive scan") {
  for (int n = 1; n <= 10; ++n) {
    std::vector<Permutation> scan;
    for (const auto& pi : enumerate_av({P("321")}, n)) {
      if (is_double_ended_fork(inversion_graph(pi))) scan.push_back(pi);
    }
    CHECK(u_members(n) == scan);
  }
}
