#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "stair/encode.hpp"
#include "stair/error.hpp"
#include "stair/gridding.hpp"
#include "stair/lang.hpp"

using namespace stair;

namespace {

template <class T>
std::shared_ptr<const T> share(T a) {
  return std::make_shared<const T>(std::move(a));
}

const Permutation k321({3, 2, 1});

std::vector<Permutation> av321(int n) { return enumerate_av({k321}, n); }

Word marked_all(const PanelCodec& codec, const Word& w) {
  Word out;
  for (Symbol s : w) out.push_back(codec.mark(s));
  return out;
}

std::vector<bool> weights_for(const PanelCodec& codec) {
  std::vector<bool> w(codec.plain()->size(), true);
  w[codec.hash()] = false;
  return w;
}

// Encodings of at most max_len symbols of words in L_c^infinity, by brute
// force over SAC words.  Encodings only grow as letters are appended.
std::set<Word> eta_images(int c, int max_len) {
  PanelCodec codec(c);
  std::set<Word> out;
  std::vector<PosWord> layer{{}};
  while (!layer.empty()) {
    std::vector<PosWord> next;
    for (const auto& w : layer) {
      if (!in_Lc_infinity(w, c)) continue;
      const Word e = codec.word(eta(w, c));
      if (static_cast<int>(e.size()) > max_len) continue;
      out.insert(e);
      const int top = w.empty() ? max_len + 1 : w.back() + 1;
      for (int v = 1; v <= top; ++v) {
        PosWord x = w;
        x.push_back(v);
        next.push_back(x);
      }
    }
    layer = std::move(next);
  }
  return out;
}

// Panel words with at most n letters other than #.
Automaton at_most_letters(const PanelCodec& codec, int n) {
  Automaton a(codec.plain());
  for (int i = 0; i <= n; ++i) a.add_state(true);
  a.initial = {0};
  for (int i = 0; i <= n; ++i) {
    a.add_edge(i, codec.hash(), i);
    for (Symbol s = 0; s < codec.letters() && i < n; ++s) a.add_edge(i, s, i + 1);
  }
  return a;
}

}  // namespace

TEST_CASE("P_c agrees with check_P") {
  const int c = 3;
  PanelCodec codec(c);
  const Automaton p = automaton_Pc(c);
  const int letters = codec.letters();
  std::vector<Word> layer{{}};
  long checked = 0;
  for (int len = 0; len <= 6; ++len) {
    std::vector<Word> next;
    for (const Word& w : layer) {
      PanelWord panel;
      for (Symbol s : w) panel.push_back(codec.decode(s).letter);
      CHECK(accepts(p, w) == check_P(panel, c));
      ++checked;
      if (len == 6) continue;
      for (Symbol s = 0; s < letters; ++s) {
        Word x = w;
        x.push_back(s);
        next.push_back(x);
      }
    }
    layer = std::move(next);
  }
  CHECK(checked > 9000);
  const PanelEncoding e = parse_encoding("1231>1>1212321>#");
  Word p0 = PanelCodec(4).word({e[0]});
  p0.pop_back();
  CHECK(accepts(automaton_Pc(4), p0));
}

TEST_CASE("L_c^eta matches eta images at c = 2") {
  const int c = 2;
  PanelCodec codec(c);
  const Automaton l = automaton_Lc_eta(c);
  const auto images = eta_images(c, 10);
  const auto got = accepted_words(l, 10);
  CHECK(std::set<Word>(got.begin(), got.end()) == images);
  CHECK(images.size() > 50);
  // The forward (L3)+(L4) automaton agrees with the reversed one in context.
  for (int cc = 2; cc <= 4; ++cc) {
    const Automaton l2 = complement(automaton_L2_violation(cc));
    CHECK(equivalent(intersect(automaton_L34_forward(cc), l2), automaton_Lc_eta(cc)));
  }
}

TEST_CASE("L_4^eta accepts the corrected worked example") {
  PanelCodec codec(4);
  const PosWord w = parse_word("2312312232345231233412123212343");
  const Word e = codec.word(eta(w, 4));
  CHECK(accepts(automaton_Lc_eta(4), e));
  // Panel counts mismatch: right(p0) = 1 but left(p1) = 0.
  CHECK_FALSE(accepts(automaton_Lc_eta(4), codec.word(parse_encoding("11>#12###"))));
}

TEST_CASE("first/last marker") {
  PanelCodec codec(3);
  const Word in = codec.word(parse_encoding("1121#"));
  const auto out = stair::apply(transducer_mark_first_last(3), in);
  REQUIRE(out.size() == 1);
  Word expect = in;
  for (int i : {0, 2, 3}) expect[i] = codec.mark(expect[i]);
  CHECK(*out.begin() == expect);
  const Word once = codec.word(parse_encoding("12#"));
  CHECK(*stair::apply(transducer_mark_first_last(3), once).begin() == marked_all(codec, once));
}

TEST_CASE("mark exactly k gives binomially many outputs") {
  auto ab = make_alphabet({"a", "b", "#"});
  const Word w{0, 1, 2, 0, 0, 2, 1};
  const long binom[] = {1, 5, 10, 10, 5, 1};
  for (int k = 0; k <= 5; ++k) {
    const auto out = stair::apply(transducer_mark_exactly_k(ab, k), w);
    CHECK(static_cast<long>(out.size()) == binom[k]);
    if (k == 0) CHECK(*out.begin() == w);
  }
  CHECK(stair::apply(transducer_mark_exactly_k(ab, 6), w).empty());
}

TEST_CASE("panel to domino: streaming, window and direct agree") {
  for (int c = 2; c <= 4; ++c) {
    PanelCodec codec(c);
    auto streaming = transducer_panel_to_domino(c, 8);
    auto window = transducer_panel_to_domino_window(c, 8);
    for (int n = 0; n <= 6; ++n) {
      for (const auto& pi : av321(n)) {
        const PosWord w = omnibus(greedy_gridding(pi));
        if (!in_Lc_infinity(w, c)) continue;
        const Word x = marked_all(codec, codec.word(eta(w, c)));
        const auto a = stair::apply(*streaming, x), b = stair::apply(*window, x);
        REQUIRE(a.size() == 1);
        CHECK(domino_string(*a.begin()) == domino_encoding(w));
        CHECK(a == b);
      }
    }
  }
  CHECK(stair::apply(*transducer_panel_to_domino(2, 2), Word{}) == std::set<Word>{Word{}});
}

TEST_CASE("extremes transducer matches the first/last marking") {
  for (int c = 2; c <= 2; ++c) {
    auto l = lazy_view(share(automaton_Lc_eta(c)));
    auto r = lazy_view(share(automaton_greedy_domino()));
    auto composed = lazy_compose(lazy_view(share(transducer_mark_first_last(c))), transducer_panel_to_domino(c, 2));
    const Automaton via_marks = minimize(materialize(*lazy_product(l, lazy_preimage(composed, r))));
    const Automaton via_extremes =
        minimize(materialize(*lazy_product(l, lazy_preimage(transducer_extremes_to_domino(c), r))));
    CHECK(equivalent(via_marks, via_extremes));
    CHECK(equivalent(via_extremes, automaton_Gc_eta(c)));
  }
}

TEST_CASE("domino to Dyck") {
  CHECK(dyck_segment("*oo***", "oo**o*o", "oo**o") == "duduuududduuudd");
  CHECK(stair::apply(*transducer_domino_to_dyck(3), Word{}) == std::set<Word>{Word{}});
  auto t = transducer_domino_to_dyck(8);
  for (int n = 1; n <= 7; ++n) {
    for (const auto& pi : av321(n)) {
      const std::string d = domino_encoding(omnibus(greedy_gridding(pi)));
      const auto out = stair::apply(*t, domino_word(d));
      REQUIRE(out.size() == 1);
      CHECK(dyck_string(*out.begin()) == dyck_encode(pi));
    }
  }
}

TEST_CASE("G_c^eta recognizes greedy griddings") {
  CHECK(accepts(automaton_Gc_eta(3), PanelCodec(3).word(eta(parse_word("2112"), 3))));
  CHECK_FALSE(accepts(automaton_Gc_eta(4), PanelCodec(4).word(eta(parse_word("3323"), 4))));
  for (int c = 2; c <= 3; ++c) {
    PanelCodec codec(c);
    const Automaton g = automaton_Gc_eta(c);
    auto lazy = lazy_Gc_eta(c);
    for (int n = 0; n <= 5; ++n) {
      for (const auto& pi : av321(n)) {
        const auto greedy = greedy_gridding(pi);
        for (const auto& grid : all_staircase_griddings(pi, 2 * n)) {
          const PosWord w = omnibus(grid);
          if (!in_Lc_infinity(w, c)) continue;
          const Word x = codec.word(eta(w, c));
          CHECK(accepts(g, x) == (grid == greedy));
          CHECK(lazy_accepts(*lazy, x) == (grid == greedy));
        }
      }
    }
  }
}

TEST_CASE("G_c^eta counts are Catalan") {
  const long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429};
  for (int n = 1; n <= 7; ++n) {
    PanelCodec codec(n + 1);
    auto g = lazy_Gc_eta(n + 1);
    CHECK(lazy_count_by_weight(*g, weights_for(codec), n, n + 2)[n] == catalan[n]);
  }
}

TEST_CASE("greedy panel encodings are bijective") {
  for (int n = 0; n <= 6; ++n) {
    for (const auto& pi : av321(n)) CHECK(permutation_of_encoding(greedy_panel_encoding(pi, 3)) == pi);
  }
}

TEST_CASE("stripped panels respect the marking bound") {
  for (int c = 2; c <= 4; ++c) {
    for (int n = 1; n <= 7; ++n) {
      for (const auto& pi : av321(n)) {
        const PosWord w = omnibus(greedy_gridding(pi));
        if (!in_Lc_infinity(w, c)) continue;
        for (const auto& panel : eta(w, c)) {
          int decorated = 0;
          for (const auto& l : panel) decorated += l.decorated();
          CHECK(decorated <= 2 * (c - 1));
        }
      }
    }
  }
}

TEST_CASE("G_c,>=beta") {
  const Permutation p123({1, 2, 3});
  const Automaton a = automaton_Gc_geq_beta(4, p123);
  PanelCodec codec(4);
  auto lazy = lazy_view(share(a));
  const auto counts = lazy_count_by_weight(*lazy, weights_for(codec), 7, 9);
  for (int n = 0; n <= 7; ++n) {
    long expect = 0;
    for (const auto& pi : av321(n)) expect += contains(pi, p123);
    CHECK(counts[n] == expect);
  }
  // Every nonempty permutation contains 1.
  const Automaton one = automaton_Gc_geq_beta(2, Permutation({1}));
  const Automaton g = automaton_Gc_eta(2);
  CHECK(equivalent(one, intersect(g, complement(epsilon_language(g.alphabet)))));
  CHECK_THROWS_AS(automaton_Gc_geq_beta(4, k321), DomainError);
}

TEST_CASE("U Dyck language") {
  const Automaton u = automaton_U_dyck(6, 18);
  CHECK(accepts(u, dyck_word(dyck_encode(parse_permutation("2 3 5 1 7 4 9 6 10 11 8")))));
  CHECK_FALSE(accepts(u, dyck_word("udududududududud")));
  for (int n = 6; n <= 18; ++n) {
    std::set<Word> expect;
    for (const auto& mu : u_members(n)) expect.insert(dyck_word(dyck_encode(mu)));
    std::set<Word> got;
    for (const Word& w : accepted_words(u, 2 * n)) {
      if (w.size() == static_cast<std::size_t>(2 * n)) got.insert(w);
    }
    CHECK(got == expect);
  }
  const Automaton u9 = automaton_U_dyck(9);
  CHECK(count_words(u9, 16) == 0);
  CHECK(count_words(u9, 18) == 2);
}

TEST_CASE("W_q membership") {
  CHECK_THROWS_AS(automaton_Wq(3, 6, 1000), DomainError);
  for (int q : {6, 7}) {
    auto w = lazy_Wq(3, q);
    PanelCodec codec(3);
    for (int n = 0; n <= 7; ++n) {
      for (const auto& pi : av321(n)) {
        bool expect = true;
        for (int m = q; m <= n && expect; ++m) {
          for (const auto& mu : u_members(m)) expect = expect && !contains(pi, mu);
        }
        CHECK(lazy_accepts(*w, codec.word(greedy_panel_encoding(pi, 3))) == expect);
      }
    }
  }
}

TEST_CASE("class automata count the class and decode bijectively") {
  for (const char* text : {"312", "231", "123", "12"}) {
    const auto basis = parse_basis(text);
    const int c = default_c(basis);
    PanelCodec codec(c);
    const Automaton a = minimize(intersect(automaton_class(basis), at_most_letters(codec, 8)));
    auto full = basis;
    full.push_back(k321);
    std::vector<std::set<Permutation>> seen(9);
    for (const Word& w : accepted_words(a, 2 * 8 + c)) {
      const Permutation pi = permutation_of_encoding(codec.encoding(w));
      CHECK(avoids_all(pi, full));
      CHECK(seen[pi.size()].insert(pi).second);
    }
    for (int n = 0; n <= 8; ++n) CHECK(seen[n].size() == enumerate_av(full, n).size());
  }
  CHECK(automaton_class({Permutation({1})}).num_states() == 1);
  CHECK_THROWS_AS(automaton_class({}), DomainError);
}
