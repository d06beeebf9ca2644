#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "stair/encode.hpp"
#include "stair/error.hpp"
#include "stair/gridding.hpp"
#include "stair/lang.hpp"

namespace stair {

namespace {

template <class T>
std::shared_ptr<const T> share(T a) { return std::make_shared<const T>(std::move(a)); }

// The epsilon-NFA L ∩ T^-1(R) before determinization.
LazyPtr g_product(int c) {
  if (c < 2) throw DomainError("G: c must be at least 2");
  auto greedy = lazy_preimage(transducer_extremes_to_domino(c), lazy_view(share(automaton_greedy_domino())));
  return lazy_product(lazy_view(share(automaton_Lc_eta(c))), greedy);
}

// A plain-alphabet automaton read through the marks.
class MarkLift : public LazyAutomaton {
 public:
  MarkLift(LazyPtr inner, int c) : inner_(std::move(inner)), codec_(c) {}
  AlphabetPtr alphabet() const override { return codec_.marked(); }
  std::vector<State> initial_states() override { return inner_->initial_states(); }
  bool is_accepting(State s) override { return inner_->is_accepting(s); }
  bool has_epsilon() const override { return inner_->has_epsilon(); }
  void successors(State s, Symbol sym, std::vector<State>& out) override {
    inner_->successors(s, sym == kEpsilon ? sym : unmark(sym), out);
  }
  Symbol unmark(Symbol sym) const {
    const PanelSymbol d = codec_.decode(sym);
    return d.hash ? codec_.hash() : codec_.symbol(d.letter);
  }

 private:
  LazyPtr inner_;
  PanelCodec codec_;
};

// Exactly k marked letters, or at most k when `exact` is false.
Automaton mark_count(const PanelCodec& codec, int k, bool exact) {
  Automaton a(codec.marked());
  for (int i = 0; i <= k; ++i) a.add_state(!exact || i == k);
  a.initial = {0};
  for (int i = 0; i <= k; ++i) {
    for (Symbol s = 0; s < codec.marked()->size(); ++s) {
      const bool marked = codec.decode(s).marked;
      if (!marked) a.add_edge(i, s, i);
      else if (i < k) a.add_edge(i, s, i + 1);
    }
  }
  return a;
}

// Erases the marks; the result is over the plain alphabet.
Automaton unmark(const Automaton& a, int c) {
  MarkLift lift(nullptr, c);
  PanelCodec codec(c);
  Automaton out(codec.plain());
  out.edges.resize(a.num_states());
  out.accepting = a.accepting;
  out.initial = a.initial;
  for (State s = 0; s < a.num_states(); ++s) {
    for (const Edge& e : a.edges[s]) out.add_edge(s, e.sym == kEpsilon ? e.sym : lift.unmark(e.sym), e.to);
  }
  return out;
}

// Words of G with a marking of at most `marks` letters (exactly, when
// `exact`) that the panel-to-Dyck pipeline sends into `dyck`.  The marked
// product is deterministic up to the closing flush, so it is minimized
// before the marks are erased.
Automaton marked_witness(int c, const Automaton& g, int marks, bool exact, int per_value, int per_cell,
                         const Automaton& dyck, std::size_t max_states) {
  Automaton marked = [&] {
    PanelCodec codec(c);
    auto t = lazy_compose(transducer_panel_to_domino(c, per_value, exact ? std::optional<int>(marks) : std::nullopt),
                          transducer_domino_to_dyck(per_cell));
    auto pre = lazy_preimage(t, lazy_view(share(minimize(dyck))));
    auto lifted = std::make_shared<MarkLift>(lazy_view(share(g)), c);
    auto prod = lazy_product(lazy_product(lifted, lazy_view(share(mark_count(codec, marks, exact)))), pre);
    return materialize(*prod, max_states);
  }();
  marked = minimize(marked);
  // Determinized through reversal (Brzozowski).
  const Automaton backward = minimize(reverse(unmark(marked, c)));
  return minimize(reverse(backward));
}

const Automaton& cached_G(int c) {
  static std::map<int, Automaton> cache;
  auto it = cache.find(c);
  if (it == cache.end()) {
    auto p = g_product(c);
    it = cache.emplace(c, minimize(materialize(*p))).first;
  }
  return it->second;
}

// Materialized for c <= 5, lazy beyond.
LazyPtr G_view(int c) { return c <= 5 ? lazy_view(share(cached_G(c))) : lazy_Gc_eta(c); }

void check_basis(const std::vector<Permutation>& basis) {
  if (basis.empty()) throw DomainError("basis must be nonempty");
  const Permutation p321({3, 2, 1});
  for (const auto& b : basis) {
    if (b.empty()) throw DomainError("basis elements must be nonempty");
    if (contains(b, p321)) throw DomainError("basis element " + b.str() + " contains 321");
  }
}

}  // namespace

LazyPtr lazy_Gc_eta(int c) { return lazy_determinize(g_product(c)); }

Automaton automaton_Gc_eta(int c) { return cached_G(c); }

LazyPtr lazy_Gc_geq_beta(int c, const Permutation& beta) {
  return lazy_view(share(automaton_Gc_geq_beta(c, beta)));
}

Automaton automaton_Gc_geq_beta(int c, const Permutation& beta) {
  check_basis({beta});
  const int k = beta.size();
  return marked_witness(c, cached_G(c), k, true, k, k, singleton(dyck_alphabet(), dyck_word(dyck_encode(beta))),
                        50'000'000);
}

Automaton automaton_U_dyck(int q, int verify_up_to) {
  if (q < 1) throw DomainError("U: q must be positive");
  // Members are a (uudd)^j b for finitely many (a, b).  A run of uudd at
  // (a, j, b) is taken as the pumping point when a (uudd)^(j+1) b is also a
  // member; every member is kept as is, so short sporadic ones survive.
  constexpr int kInferUpTo = 12;
  const std::string unit = "uudd";
  std::set<std::string> seen;
  for (int n = 1; n <= kInferUpTo + 2; ++n) {
    for (const auto& mu : u_members(n)) seen.insert(dyck_encode(mu));
  }
  auto ab = dyck_alphabet();
  const Automaton loop = star(singleton(ab, dyck_word(unit)));
  Automaton lang = empty_language(ab);
  for (const auto& s : seen) {
    if (s.size() > 2 * static_cast<std::size_t>(kInferUpTo)) continue;
    lang = union_of(lang, singleton(ab, dyck_word(s)));
    for (std::size_t i = 0; i + unit.size() <= s.size(); ++i) {
      for (std::size_t j = 1; s.compare(i + 4 * (j - 1), 4, unit) == 0; ++j) {
        const std::string head = s.substr(0, i + 4 * j), tail = s.substr(i + 4 * j);
        if (seen.count(head + unit + tail)) lang = union_of(lang, concat(concat(singleton(ab, dyck_word(head)), loop), singleton(ab, dyck_word(tail))));
        if (i + 4 * j + 4 > s.size()) break;
      }
    }
  }
  Automaton longer(ab);
  for (int i = 0; i <= 2 * q; ++i) longer.add_state(i == 2 * q);
  longer.initial = {0};
  for (int i = 0; i < 2 * q; ++i) {
    for (Symbol s : {0, 1}) longer.add_edge(i, s, i + 1);
  }
  for (Symbol s : {0, 1}) longer.add_edge(2 * q, s, 2 * q);
  Automaton out = minimize(intersect(lang, longer));

  for (int n = 1; n <= verify_up_to; ++n) {
    const auto members = u_members(n);
    const std::size_t expected = n >= q ? members.size() : 0;
    if (count_words(out, 2 * n) != static_cast<unsigned long>(expected)) {
      throw std::logic_error("U_dyck: inferred language disagrees with u_members at n = " + std::to_string(n));
    }
    if (n < q) continue;
    for (const auto& mu : members) {
      if (!accepts(out, dyck_word(dyck_encode(mu)))) {
        throw std::logic_error("U_dyck: inferred language misses " + mu.str());
      }
    }
  }
  return out;
}

LazyPtr lazy_Wq(int c, int q) {
  const int per_value = 5 * (c - 1);
  auto t = lazy_compose(lazy_compose(transducer_mark_bounded(c, per_value), transducer_panel_to_domino(c, per_value)),
                        transducer_domino_to_dyck(5));
  auto u = lazy_preimage(t, lazy_view(share(automaton_U_dyck(q))));
  return lazy_product(G_view(c), lazy_determinize(u), ProductMode::Difference);
}

Automaton automaton_Wq(int c, int q, std::size_t max_states) {
  auto w = lazy_Wq(c, q);
  return minimize(materialize(*w, max_states));
}

int default_c(const std::vector<Permutation>& basis) {
  check_basis(basis);
  int shortest = basis.front().size();
  for (const auto& b : basis) shortest = std::min(shortest, b.size());
  return std::max(2, 1 + shortest);
}

LazyPtr lazy_class(const std::vector<Permutation>& basis, std::optional<int> q, std::optional<int> c) {
  const int cc = c ? *c : default_c(basis);
  check_basis(basis);
  LazyPtr acc = q ? lazy_Wq(cc, *q) : G_view(cc);
  for (const auto& beta : basis) acc = lazy_product(acc, lazy_Gc_geq_beta(cc, beta), ProductMode::Difference);
  return acc;
}

Automaton automaton_class(const std::vector<Permutation>& basis, std::optional<int> q, std::optional<int> c,
                          std::size_t max_states) {
  auto l = lazy_class(basis, q, c);
  return minimize(materialize(*l, max_states));
}

PanelEncoding greedy_panel_encoding(const Permutation& pi, int c) {
  return eta(omnibus(greedy_gridding(pi)), c);
}

Permutation permutation_of_encoding(const PanelEncoding& e) { return phi(eta_inverse(e)); }

}  // namespace stair
