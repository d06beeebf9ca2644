#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "stair/error.hpp"
#include "stair/lang.hpp"

namespace stair {

PanelCodec::PanelCodec(int c) : c_(c) {
  if (c < 2) throw std::invalid_argument("panel alphabet needs c >= 2");
  std::vector<std::string> names;
  for (int v = 1; v <= c - 1; ++v) names.push_back(std::to_string(v));
  names.insert(names.end(), {"1<", "1>", "1<>", "#"});
  plain_ = make_alphabet(names);
  std::vector<std::string> marked = names;
  for (int s = 0; s < letters(); ++s) marked.push_back(names[s] + "'");
  marked_ = make_alphabet(marked);
}

Symbol PanelCodec::symbol(const DecoratedLetter& l, bool marked) const {
  Symbol s;
  if (l.left || l.right) {
    if (l.value != 1) throw DomainError("decorated panel letters have value 1");
    s = l.left && l.right ? c_ + 1 : (l.left ? c_ - 1 : c_);
  } else {
    if (l.value < 1 || l.value > c_ - 1) throw DomainError("panel letter " + std::to_string(l.value) + " outside 1..c-1");
    s = l.value - 1;
  }
  return marked ? mark(s) : s;
}

PanelSymbol PanelCodec::decode(Symbol s) const {
  PanelSymbol out;
  if (s == hash()) {
    out.hash = true;
    return out;
  }
  if (s > hash()) {
    out.marked = true;
    s -= letters() + 1;
  }
  if (s < c_ - 1) {
    out.letter = {s + 1, false, false};
  } else {
    out.letter = {1, s != c_, s != c_ - 1};
  }
  return out;
}

Word PanelCodec::word(const PanelEncoding& e) const {
  Word w;
  for (const PanelWord& p : e) {
    for (const DecoratedLetter& l : p) w.push_back(symbol(l));
    w.push_back(hash());
  }
  return w;
}

PanelEncoding PanelCodec::encoding(const Word& w) const {
  PanelEncoding e(1);
  for (Symbol s : w) {
    auto d = decode(s);
    if (d.hash) {
      e.emplace_back();
    } else {
      e.back().push_back(d.letter);
    }
  }
  if (!e.back().empty()) throw DomainError("panel word does not end with #");
  e.pop_back();
  return e;
}

AlphabetPtr domino_alphabet() {
  static const AlphabetPtr a = make_alphabet({"o", "*", "#"});
  return a;
}

AlphabetPtr dyck_alphabet() {
  static const AlphabetPtr a = make_alphabet({"u", "d"});
  return a;
}

Word domino_word(const std::string& ascii) {
  Word w;
  for (char ch : ascii) {
    if (ch == 'o') w.push_back(0);
    else if (ch == '*') w.push_back(1);
    else if (ch == '#') w.push_back(2);
    else throw ParseError(std::string("unexpected character '") + ch + "' in domino word");
  }
  return w;
}

std::string domino_string(const Word& w) {
  std::string s;
  for (Symbol x : w) s += "o*#"[x];
  return s;
}

Word dyck_word(const std::string& ud) {
  Word w;
  for (char ch : ud) {
    if (ch == 'u') w.push_back(0);
    else if (ch == 'd') w.push_back(1);
    else throw ParseError(std::string("unexpected character '") + ch + "' in Dyck word");
  }
  return w;
}

std::string dyck_string(const Word& w) {
  std::string s;
  for (Symbol x : w) s += "ud"[x];
  return s;
}

namespace {

// (last value, lefts, rights, after a right letter, open left factor
// still waiting for c-1 or a right letter).
using PKey = std::tuple<int, int, int, bool, bool>;

struct PKeyHash {
  std::size_t operator()(const PKey& k) const {
    auto [a, b, c, d, e] = k;
    return std::hash<long>()((((long(a) * 64 + b) * 64 + c) * 2 + d) * 2 + e);
  }
};

}  // namespace

Automaton automaton_Pc(int c) {
  PanelCodec codec(c);
  KeyedDfa<PKey, PKeyHash> dfa(
      codec.plain(), PKey{0, 0, 0, false, false},
      [&](const PKey& k, Symbol s) -> std::optional<PKey> {
        if (s == codec.hash()) return std::nullopt;
        auto [last, lefts, rights, after_right, pending] = k;
        const DecoratedLetter l = codec.decode(s).letter;
        if (last == 0 && l.value != 1) return std::nullopt;         // (P2)
        if (last != 0 && l.value > last + 1) return std::nullopt;   // (P1)
        if (after_right && l.value != 1) return std::nullopt;       // (P4)
        if (l.left) {                                               // (P5)
          if (pending) return std::nullopt;
          pending = true;
        }
        if (l.value == c - 1 || l.right) pending = false;
        lefts += l.left;
        rights += l.right;
        if (lefts >= c || rights >= c) return std::nullopt;         // (P3)
        return PKey{l.value, lefts, rights, l.right, pending};
      },
      [](const PKey& k) { return !std::get<4>(k); });
  return minimize(materialize(dfa));
}

// States: 0 = start of p0, 1 = inside p0, 2 = start of a later panel,
// 3 = inside a later panel, 4 = ACC, then C_r (5 + r) and D_{r,l}.
Automaton automaton_L2_violation(int c) {
  PanelCodec codec(c);
  Automaton a(codec.plain());
  const State start0 = a.add_state(), mid0 = a.add_state(), start = a.add_state(), mid = a.add_state();
  const State acc = a.add_state(true);
  std::vector<State> C(c);
  for (int r = 0; r < c; ++r) C[r] = a.add_state();
  std::vector<std::vector<State>> D(c, std::vector<State>(c));
  for (int r = 0; r < c; ++r) {
    for (int l = 0; l <= r; ++l) D[r][l] = a.add_state(l == 0 && r > 0);  // p_j was the last panel
  }
  a.initial.push_back(start0);
  const Symbol h = codec.hash();
  for (Symbol s = 0; s < h; ++s) {
    const DecoratedLetter l = codec.decode(s).letter;
    a.add_edge(start0, s, l.left ? acc : mid0);
    a.add_edge(mid0, s, l.left ? acc : mid0);
    a.add_edge(start, s, mid);
    a.add_edge(mid, s, mid);
    for (int r = 0; r < c; ++r) {
      const int nr = r + l.right;
      a.add_edge(C[r], s, nr >= c ? acc : C[nr]);
      for (int q = 0; q <= r; ++q) {
        const int nl = q + l.left;
        a.add_edge(D[r][q], s, nl > r ? acc : D[r][nl]);
      }
    }
  }
  for (State s : {start0, mid0, start, mid}) a.add_edge(s, h, start);
  for (int r = 0; r < c; ++r) {
    a.add_edge(C[r], h, D[r][0]);
    for (int q = 0; q < r; ++q) a.add_edge(D[r][q], h, acc);
  }
  // Guess the panel whose right letters are counted.
  a.add_edge(start0, kEpsilon, C[0]);
  a.add_edge(start, kEpsilon, C[0]);
  for (Symbol s = 0; s <= h; ++s) a.add_edge(acc, s, acc);
  return a;
}

// Reads an encoding backwards.  State (t, seen): t is the number of #
// read so far, capped at c, so the panel being read has index m - t and
// its letters must not exceed t; seen records a letter equal to t.
Automaton automaton_L34_reversed(int c) {
  PanelCodec codec(c);
  KeyedDfa<int> dfa(
      codec.plain(), 0,
      [&](const int& k, Symbol s) -> std::optional<int> {
        int t = k / 2;
        bool seen = k % 2;
        if (s == codec.hash()) {
          t = std::min(t + 1, c);
        } else {
          const int v = codec.decode(s).letter.value;
          if (t == 0) return std::nullopt;
          if (t <= c - 1) {
            if (v > t) return std::nullopt;
            seen = seen || v == t;
          }
        }
        return 2 * t + seen;
      },
      [](const int& k) { return k == 0 || k % 2 == 1; });
  return materialize(dfa);
}

// Forward form of (L3)+(L4): r = (largest j + v seen) - (panels read),
// capped below at -1; accept when r = 0 at a panel boundary.
Automaton automaton_L34_forward(int c) {
  PanelCodec codec(c);
  KeyedDfa<int> dfa(
      codec.plain(), 0,
      [&](const int& r, Symbol s) -> std::optional<int> {
        if (s == codec.hash()) return std::max(r - 1, -1);
        return std::max(r, codec.decode(s).letter.value);
      },
      [](const int& r) { return r == 0; });
  return intersect(materialize(dfa), star(concat(automaton_Pc(c), singleton(codec.plain(), {codec.hash()}))));
}

Automaton automaton_Lc_eta(int c) {
  PanelCodec codec(c);
  const Automaton panels = minimize(star(concat(automaton_Pc(c), singleton(codec.plain(), {codec.hash()}))));
  const Automaton l2 = minimize(complement(automaton_L2_violation(c)));
  const Automaton l34 = minimize(reverse(automaton_L34_reversed(c)));
  return minimize(intersect(intersect(panels, l2), l34));
}

namespace {

// Per-value gadget: 0 start, 1 first seen (last still to come), 2 last seen.
Transducer mark_value_gadget(const PanelCodec& codec, int value) {
  Transducer t(codec.marked(), codec.marked());
  const State start = t.add_state(true), first = t.add_state(false), last = t.add_state(true);
  t.initial.push_back(start);
  for (Symbol s = 0; s < codec.marked()->size(); ++s) {
    const PanelSymbol d = codec.decode(s);
    if (d.hash) {
      t.add_arc(start, s, {s}, start);
      t.add_arc(last, s, {s}, start);
      continue;
    }
    if (d.letter.value != value || d.marked) {
      for (State q : {start, first, last}) t.add_arc(q, s, {s}, q);
      continue;
    }
    const Symbol m = codec.mark(s);
    t.add_arc(start, s, {m}, first);
    t.add_arc(start, s, {m}, last);
    t.add_arc(first, s, {s}, first);
    t.add_arc(first, s, {m}, last);
  }
  return t;
}

}  // namespace

Transducer transducer_mark_first_last(int c) {
  PanelCodec codec(c);
  // Embed the plain alphabet, then run one gadget per value.
  Transducer t(codec.plain(), codec.marked());
  t.initial.push_back(t.add_state(true));
  for (Symbol s = 0; s < codec.plain()->size(); ++s) t.add_arc(0, s, {s}, 0);
  for (int v = 1; v <= c - 1; ++v) t = compose(t, mark_value_gadget(codec, v));
  return t;
}

Transducer transducer_mark_exactly_k(const AlphabetPtr& alphabet, int k, const std::vector<std::string>& punctuation) {
  if (k < 0) throw std::invalid_argument("mark_exactly_k: k must be nonnegative");
  std::vector<std::string> names = alphabet->names();
  std::vector<Symbol> marked_of(alphabet->size(), kEpsilon);
  for (Symbol s = 0; s < alphabet->size(); ++s) {
    const auto& n = alphabet->name(s);
    if (std::find(punctuation.begin(), punctuation.end(), n) == punctuation.end()) {
      marked_of[s] = static_cast<Symbol>(names.size());
      names.push_back(n + "'");
    }
  }
  Transducer t(alphabet, make_alphabet(names));
  for (int i = 0; i <= k; ++i) t.add_state(i == k);
  t.initial.push_back(0);
  for (int i = 0; i <= k; ++i) {
    for (Symbol s = 0; s < alphabet->size(); ++s) {
      t.add_arc(i, s, {s}, i);
      if (marked_of[s] != kEpsilon && i < k) t.add_arc(i, s, {marked_of[s]}, i + 1);
    }
  }
  return t;
}

LazyTransducerPtr transducer_mark_bounded(int c, int per_value) {
  auto codec = std::make_shared<PanelCodec>(c);
  // Key: marks used so far in the current panel, one byte per value.
  using T = KeyedTransducer<std::string>;
  return std::make_shared<T>(
      codec->plain(), codec->marked(), std::string(c - 1, '\0'),
      [codec, per_value](const std::string& k, Symbol s, std::vector<T::KeyMove>& out) {
        if (s == kEpsilon) return;
        if (s == codec->hash()) {
          out.push_back({{s}, std::string(k.size(), '\0')});
          return;
        }
        out.push_back({{s}, k});
        const int v = codec->decode(s).letter.value;
        if (k[v - 1] < per_value) {
          std::string n = k;
          ++n[v - 1];
          out.push_back({{codec->mark(s)}, n});
        }
      },
      [](const std::string&) { return true; });
}

}  // namespace stair
