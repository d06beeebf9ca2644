#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "stair/error.hpp"
#include "stair/fsm.hpp"

using namespace stair;

namespace {

AlphabetPtr abc() { return make_alphabet({"a", "b", "c"}); }

std::vector<Word> all_words(int k, int max_len) {
  std::vector<Word> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (static_cast<int>(out[i].size()) == max_len) continue;
    for (Symbol s = 0; s < k; ++s) {
      Word w = out[i];
      w.push_back(s);
      out.push_back(w);
    }
  }
  return out;
}

// Random NFA with epsilon moves.
Automaton random_nfa(AlphabetPtr a, std::mt19937& rng, int n) {
  Automaton out(a);
  for (int i = 0; i < n; ++i) out.add_state(rng() % 3 == 0);
  out.initial.push_back(0);
  if (rng() % 2) out.initial.push_back(rng() % n);
  for (int i = 0; i < 2 * n; ++i) {
    const Symbol sym = rng() % 5 == 0 ? kEpsilon : static_cast<Symbol>(rng() % a->size());
    out.add_edge(rng() % n, sym, rng() % n);
  }
  return out;
}

// "contains x" for a symbol x.
Automaton contains_symbol(AlphabetPtr a, Symbol x) {
  Automaton out(a);
  out.add_state(false);
  out.add_state(true);
  out.initial.push_back(0);
  for (Symbol s = 0; s < a->size(); ++s) {
    out.add_edge(0, s, 0);
    out.add_edge(1, s, 1);
  }
  out.add_edge(0, x, 1);
  return out;
}

// Marks exactly one letter: a -> a' (output alphabet doubles the input).
Transducer mark_one(AlphabetPtr in, AlphabetPtr out) {
  Transducer t(in, out);
  t.add_state(false);
  t.add_state(true);
  t.initial.push_back(0);
  for (Symbol s = 0; s < in->size(); ++s) {
    t.add_arc(0, s, {s}, 0);
    t.add_arc(1, s, {s}, 1);
    t.add_arc(0, s, {s + in->size()}, 1);
  }
  return t;
}

Transducer erase_marks(AlphabetPtr marked, AlphabetPtr plain) {
  Transducer t(marked, plain);
  t.initial.push_back(t.add_state(true));
  for (Symbol s = 0; s < marked->size(); ++s) t.add_arc(0, s, {s % plain->size()}, 0);
  return t;
}

}  // namespace

TEST_CASE("alphabet") {
  auto a = abc();
  CHECK(a->at("b") == 1);
  CHECK_THROWS_AS(a->at("z"), std::invalid_argument);
  CHECK(a->spell(a->word({"a", "c"})) == "a c");
  CHECK(same_alphabet(a, abc()));
  CHECK_FALSE(same_alphabet(a, make_alphabet({"a"})));
}

TEST_CASE("boolean operations on random automata") {
  std::mt19937 rng(1);
  auto a = abc();
  auto words = all_words(3, 6);
  for (int trial = 0; trial < 40; ++trial) {
    Automaton x = random_nfa(a, rng, 2 + trial % 5);
    Automaton y = random_nfa(a, rng, 2 + trial % 4);
    Automaton u = union_of(x, y), i = intersect(x, y), cx = complement(x), cat = concat(x, y), st = star(x);
    Automaton rx = reverse(x), dx = determinize(x), mx = minimize(x), tx = trim(x);
    CHECK(dx.is_deterministic());
    CHECK(mx.is_deterministic());
    CHECK(minimize(mx).num_states() == mx.num_states());
    CHECK(is_empty(intersect(x, complement(x))));
    CHECK(equivalent(reverse(reverse(x)), x));
    CHECK(equivalent(mx, x));
    for (const Word& w : words) {
      const bool ax = accepts(x, w), ay = accepts(y, w);
      CHECK(accepts(u, w) == (ax || ay));
      CHECK(accepts(i, w) == (ax && ay));
      CHECK(accepts(cx, w) == !ax);
      CHECK(accepts(dx, w) == ax);
      CHECK(accepts(mx, w) == ax);
      CHECK(accepts(tx, w) == ax);
      Word r(w.rbegin(), w.rend());
      CHECK(accepts(rx, r) == ax);
      if (w.size() <= 4) {
        bool split = false;
        for (std::size_t k = 0; k <= w.size() && !split; ++k) {
          split = accepts(x, Word(w.begin(), w.begin() + k)) && accepts(y, Word(w.begin() + k, w.end()));
        }
        CHECK(accepts(cat, w) == split);
      }
    }
    // Star: w in x* iff w splits into nonempty x-words.
    for (const Word& w : all_words(3, 4)) {
      std::vector<bool> ok(w.size() + 1, false);
      ok[0] = true;
      for (std::size_t e = 1; e <= w.size(); ++e) {
        for (std::size_t b = 0; b < e && !ok[e]; ++b) {
          ok[e] = ok[b] && accepts(x, Word(w.begin() + b, w.begin() + e));
        }
      }
      CHECK(accepts(st, w) == ok[w.size()]);
    }
    for (int n = 0; n <= 5; ++n) {
      long brute = 0;
      for (const Word& w : words) brute += static_cast<int>(w.size()) == n && accepts(x, w);
      CHECK(count_words(x, n) == brute);
    }
  }
}

TEST_CASE("determinize contains-x") {
  auto a = abc();
  auto x = contains_symbol(a, 2);
  auto d = determinize(x);
  for (const Word& w : all_words(3, 6)) {
    bool has = std::find(w.begin(), w.end(), 2) != w.end();
    CHECK(accepts(d, w) == has);
  }
  CHECK(minimize(d).num_states() == 2);
}

TEST_CASE("trim and counting") {
  auto a = make_alphabet({"a"});
  Automaton x = star(singleton(a, {0}));
  for (int n = 0; n <= 6; ++n) CHECK(count_words(x, n) == 1);
  Automaton y(a);
  y.initial.push_back(y.add_state(true));
  y.add_state(true);  // unreachable
  CHECK(trim(y).num_states() == 1);
  CHECK(accepts(y, {}));
  CHECK_THROWS_AS(accepts(y, {3}), std::invalid_argument);
  CHECK(is_empty(empty_language(a)));
  CHECK_THROWS_AS(union_of(x, universal_language(abc())), std::invalid_argument);
  auto u = finite_language(abc(), {{0, 1}, {2}});
  CHECK(accepted_words(u, 3) == std::vector<Word>{{2}, {0, 1}});
}

TEST_CASE("Dyck prefix counting") {
  auto ud = make_alphabet({"u", "d"});
  // Heights 0..8.
  Automaton a(ud);
  for (int h = 0; h <= 8; ++h) a.add_state(h == 0);
  a.initial.push_back(0);
  for (int h = 0; h < 8; ++h) {
    a.add_edge(h, 0, h + 1);
    a.add_edge(h + 1, 1, h);
  }
  const long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
  for (int n = 0; n <= 8; ++n) CHECK(count_words(a, 2 * n) == catalan[n]);
}

TEST_CASE("transducers") {
  auto in = make_alphabet({"a", "b"});
  auto out = make_alphabet({"a", "b", "a'", "b'"});
  Transducer m1 = mark_one(in, out);
  CHECK(stair::apply(m1, {0, 1}) == std::set<Word>{{2, 1}, {0, 3}});
  CHECK(stair::apply(m1, {}).empty());

  Transducer id = identity_transducer(in);
  Transducer er = erase_marks(out, in);
  Transducer both = compose(m1, er);
  for (const Word& w : all_words(2, 5)) {
    auto r = stair::apply(both, w);
    if (w.empty()) {
      CHECK(r.empty());
    } else {
      CHECK(r == std::set<Word>{w});
    }
    // Composition agrees with sequential application.
    std::set<Word> seq;
    for (const Word& u : stair::apply(m1, w)) {
      for (const Word& v : stair::apply(er, u)) seq.insert(v);
    }
    CHECK(r == seq);
  }

  std::mt19937 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    Automaton x = random_nfa(in, rng, 4);
    CHECK(equivalent(image(id, x), x));
    Automaton img = image(m1, x);
    Automaton y = random_nfa(out, rng, 4);
    Automaton pre = preimage(m1, y);
    for (const Word& w : all_words(2, 4)) {
      auto outs = stair::apply(m1, w);
      bool hit = false;
      for (const Word& o : outs) hit |= accepts(y, o);
      CHECK(accepts(pre, w) == hit);
      for (const Word& o : outs) {
        if (accepts(x, w)) CHECK(accepts(img, o));
      }
      // image of a singleton is exactly apply.
      Automaton single = image(m1, singleton(in, w));
      for (const Word& o : all_words(4, static_cast<int>(w.size()))) {
        CHECK(accepts(single, o) == (outs.count(o) > 0));
      }
    }
  }
  CHECK_THROWS_AS(compose(m1, m1), std::invalid_argument);
}

TEST_CASE("multi-symbol outputs and epsilon reads") {
  auto a = make_alphabet({"x", "y"});
  Transducer t(a, a);
  t.add_state(false);
  t.add_state(true);
  t.initial.push_back(0);
  t.add_arc(0, 0, {1, 1}, 0);   // x -> yy
  t.add_arc(0, kEpsilon, {0}, 1);  // end with x
  t.add_arc(0, 1, {}, 0);       // y -> nothing
  CHECK(stair::apply(t, {0, 1, 0}) == std::set<Word>{{1, 1, 1, 1, 0}});
  Transducer tt = compose(t, t);
  for (const Word& w : all_words(2, 4)) {
    std::set<Word> seq;
    for (const Word& u : stair::apply(t, w)) {
      for (const Word& v : stair::apply(t, u)) seq.insert(v);
    }
    CHECK(stair::apply(tt, w) == seq);
  }
  Automaton img = image(t, singleton(a, {0}));
  CHECK(accepts(img, {1, 1, 0}));
  CHECK_FALSE(accepts(img, {1, 1}));
  Transducer loop(a, a);
  loop.initial.push_back(loop.add_state(true));
  loop.add_arc(0, kEpsilon, {0}, 0);
  CHECK_THROWS_AS(stair::apply(loop, {}), DomainError);
}

TEST_CASE("lazy layer agrees with explicit operations") {
  std::mt19937 rng(9);
  auto a = abc();
  for (int trial = 0; trial < 30; ++trial) {
    auto x = std::make_shared<const Automaton>(random_nfa(a, rng, 5));
    auto y = std::make_shared<const Automaton>(minimize(random_nfa(a, rng, 4)));
    auto dx = lazy_determinize(lazy_view(x));
    auto inter = lazy_product(dx, lazy_view(y));
    auto diff = lazy_product(dx, lazy_view(y), ProductMode::Difference);
    Automaton mi = materialize(*inter);
    Automaton md = materialize(*diff);
    CHECK(equivalent(mi, intersect(*x, *y)));
    CHECK(equivalent(md, intersect(*x, complement(*y))));
    for (const Word& w : all_words(3, 5)) {
      CHECK(lazy_accepts(*inter, w) == (accepts(*x, w) && accepts(*y, w)));
    }
    auto counts = lazy_count_by_weight(*dx, {true, true, false}, 4, 3);
    for (int n = 0; n <= 4; ++n) {
      long brute = 0;
      for (const Word& w : all_words(3, 7)) {
        int weight = 0, free = 0;
        for (Symbol s : w) (s == 2 ? free : weight)++;
        brute += weight == n && free <= 3 && accepts(*x, w);
      }
      CHECK(counts[n] == brute);
    }
  }
}

TEST_CASE("lazy preimage and composition") {
  auto in = make_alphabet({"a", "b"});
  auto out = make_alphabet({"a", "b", "a'", "b'"});
  auto m1 = std::make_shared<const Transducer>(mark_one(in, out));
  auto er = std::make_shared<const Transducer>(erase_marks(out, in));
  std::mt19937 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    auto y = std::make_shared<const Automaton>(remove_epsilon(random_nfa(out, rng, 4)));
    auto pre = lazy_preimage(lazy_view(m1), lazy_view(y));
    Automaton explicit_pre = preimage(*m1, *y);
    CHECK(equivalent(materialize(*pre), explicit_pre));
    auto z = std::make_shared<const Automaton>(remove_epsilon(random_nfa(in, rng, 3)));
    auto comp = lazy_preimage(lazy_compose(lazy_view(m1), lazy_view(er)), lazy_view(z));
    CHECK(equivalent(materialize(*comp), preimage(compose(*m1, *er), *z)));
  }
}

TEST_CASE("keyed DFA and materialize bound") {
  auto a = make_alphabet({"+", "-"});
  // Counter that rejects below zero.
  KeyedDfa<int> dfa(
      a, 0, [](const int& h, Symbol s) -> std::optional<int> {
        int n = h + (s == 0 ? 1 : -1);
        if (n < 0 || n > 3) return std::nullopt;
        return n;
      },
      [](const int& h) { return h == 0; });
  Automaton m = materialize(dfa);
  CHECK(m.num_states() == 4);
  CHECK(accepts(m, {0, 1, 0, 0, 1, 1}));
  CHECK_THROWS_AS(materialize(dfa, 2), DomainError);
}

TEST_CASE("serialization") {
  auto a = abc();
  std::mt19937 rng(3);
  Automaton x = random_nfa(a, rng, 5);
  Automaton back = automaton_from_json(to_json(x));
  CHECK(equivalent(back, x));
  CHECK(to_json(back) == to_json(x));
  CHECK(to_dot(x).find("digraph") == 0);
  CHECK_THROWS_AS(automaton_from_json("{"), ParseError);
  CHECK_THROWS_AS(automaton_from_json(R"({"alphabet":["a"],"states":1,"initial":[3],"accepting":[],"transitions":[]})"),
                  ParseError);
  auto in = make_alphabet({"a", "b"});
  Transducer t = identity_transducer(in);
  CHECK(to_json(t).find("\"output_alphabet\"") != std::string::npos);
  CHECK(to_dot(t).find("a/a") != std::string::npos);
}
