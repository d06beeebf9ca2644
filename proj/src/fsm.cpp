#include "stair/fsm.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "stair/error.hpp"

namespace stair {

Alphabet::Alphabet(const std::vector<std::string>& names) {
  for (const auto& n : names) intern(n);
}

Symbol Alphabet::intern(const std::string& name) {
  auto [it, fresh] = index_.try_emplace(name, static_cast<Symbol>(names_.size()));
  if (fresh) names_.push_back(name);
  return it->second;
}

Symbol Alphabet::at(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::invalid_argument("symbol '" + name + "' not in alphabet");
  return it->second;
}

std::optional<Symbol> Alphabet::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Word Alphabet::word(const std::vector<std::string>& names) const {
  Word w;
  for (const auto& n : names) w.push_back(at(n));
  return w;
}

std::string Alphabet::spell(const Word& w, const std::string& sep) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += sep;
    out += name(w[i]);
  }
  return out;
}

AlphabetPtr make_alphabet(const std::vector<std::string>& names) {
  return std::make_shared<Alphabet>(names);
}

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  return a == b || (a && b && a->names() == b->names());
}

State Automaton::add_state(bool accept) {
  edges.emplace_back();
  accepting.push_back(accept);
  return static_cast<State>(edges.size() - 1);
}

void Automaton::add_edge(State from, Symbol sym, State to) {
  if (from >= edges.size() || to >= edges.size()) throw std::out_of_range("add_edge: unknown state");
  if (sym != kEpsilon && (sym < 0 || sym >= alphabet->size())) {
    throw std::invalid_argument("add_edge: symbol outside alphabet");
  }
  edges[from].push_back({sym, to});
}

std::size_t Automaton::num_edges() const {
  std::size_t n = 0;
  for (const auto& e : edges) n += e.size();
  return n;
}

bool Automaton::is_deterministic() const {
  if (initial.size() > 1) return false;
  std::vector<char> seen(alphabet->size());
  for (const auto& out : edges) {
    std::fill(seen.begin(), seen.end(), 0);
    for (const Edge& e : out) {
      if (e.sym == kEpsilon || seen[e.sym]) return false;
      seen[e.sym] = 1;
    }
  }
  return true;
}

std::optional<State> Automaton::step(State s, Symbol sym) const {
  for (const Edge& e : edges[s]) {
    if (e.sym == sym) return e.to;
  }
  return std::nullopt;
}

namespace {

void require_same(const Automaton& a, const Automaton& b, const char* op) {
  if (!same_alphabet(a.alphabet, b.alphabet)) {
    throw std::invalid_argument(std::string(op) + ": alphabet mismatch");
  }
}

// Sorted epsilon closure of a set of states.
std::vector<State> closure(const Automaton& a, std::vector<State> set) {
  // Called once per subset, so avoid anything proportional to the automaton.
  std::unordered_set<State> in(set.begin(), set.end());
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (const Edge& e : a.edges[set[i]]) {
      if (e.sym == kEpsilon && in.insert(e.to).second) set.push_back(e.to);
    }
  }
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

// Offsets b's states by a.num_states() and appends them to a.
State append_states(Automaton& a, const Automaton& b) {
  const State off = static_cast<State>(a.num_states());
  for (State s = 0; s < b.num_states(); ++s) {
    a.add_state(b.accepting[s]);
  }
  for (State s = 0; s < b.num_states(); ++s) {
    for (const Edge& e : b.edges[s]) a.edges[off + s].push_back({e.sym, off + e.to});
  }
  return off;
}

}  // namespace

Automaton empty_language(AlphabetPtr a) { return Automaton(std::move(a)); }

Automaton epsilon_language(AlphabetPtr a) {
  Automaton out(std::move(a));
  out.initial.push_back(out.add_state(true));
  return out;
}

Automaton universal_language(AlphabetPtr a) {
  Automaton out = epsilon_language(std::move(a));
  for (Symbol s = 0; s < out.alphabet->size(); ++s) out.add_edge(0, s, 0);
  return out;
}

Automaton singleton(AlphabetPtr a, const Word& w) { return finite_language(std::move(a), {w}); }

Automaton finite_language(AlphabetPtr a, const std::vector<Word>& words) {
  // A trie.
  Automaton out(std::move(a));
  out.initial.push_back(out.add_state());
  for (const Word& w : words) {
    State s = 0;
    for (Symbol sym : w) {
      auto next = out.step(s, sym);
      if (!next) {
        next = out.add_state();
        out.add_edge(s, sym, *next);
      }
      s = *next;
    }
    out.accepting[s] = true;
  }
  return out;
}

Automaton union_of(const Automaton& a, const Automaton& b) {
  require_same(a, b, "union");
  Automaton out = a;
  const State off = append_states(out, b);
  for (State s : b.initial) out.initial.push_back(off + s);
  return out;
}

Automaton intersect(const Automaton& a0, const Automaton& b0) {
  require_same(a0, b0, "intersect");
  const Automaton a = remove_epsilon(a0);
  const Automaton b = remove_epsilon(b0);
  Automaton out(a.alphabet);
  Interner<std::pair<State, State>, PairHash> ids;
  std::deque<State> queue;
  auto visit = [&](State x, State y) {
    auto [id, fresh] = ids.insert({x, y});
    if (fresh) {
      out.add_state(a.accepting[x] && b.accepting[y]);
      queue.push_back(id);
    }
    return id;
  };
  for (State x : a.initial) {
    for (State y : b.initial) out.initial.push_back(visit(x, y));
  }
  while (!queue.empty()) {
    const State id = queue.front();
    queue.pop_front();
    const auto [x, y] = ids.key(id);
    for (const Edge& ea : a.edges[x]) {
      for (const Edge& eb : b.edges[y]) {
        if (ea.sym != eb.sym) continue;
        const State to = visit(ea.to, eb.to);
        out.edges[id].push_back({ea.sym, to});
      }
    }
  }
  return out;
}

Automaton complement(const Automaton& a) {
  Automaton d = determinize(a);
  // Complete with a sink.
  const State sink = d.add_state(false);
  if (d.initial.empty()) d.initial.push_back(sink);
  const int k = d.alphabet->size();
  for (State s = 0; s < d.num_states(); ++s) {
    std::vector<char> has(k);
    for (const Edge& e : d.edges[s]) has[e.sym] = 1;
    for (Symbol sym = 0; sym < k; ++sym) {
      if (!has[sym]) d.edges[s].push_back({sym, sink});
    }
    d.accepting[s] = !d.accepting[s];
  }
  return d;
}

Automaton concat(const Automaton& a, const Automaton& b) {
  require_same(a, b, "concat");
  Automaton out = a;
  const State off = append_states(out, b);
  for (State s = 0; s < a.num_states(); ++s) {
    if (!a.accepting[s]) continue;
    out.accepting[s] = false;
    for (State t : b.initial) out.edges[s].push_back({kEpsilon, off + t});
  }
  return out;
}

Automaton star(const Automaton& a) {
  Automaton out(a.alphabet);
  const State start = out.add_state(true);
  const State off = append_states(out, a);
  out.initial = {start};
  for (State t : a.initial) out.edges[start].push_back({kEpsilon, off + t});
  for (State s = 0; s < a.num_states(); ++s) {
    if (a.accepting[s]) out.edges[off + s].push_back({kEpsilon, start});
  }
  return out;
}

Automaton reverse(const Automaton& a) {
  Automaton out(a.alphabet);
  for (State s = 0; s < a.num_states(); ++s) out.add_state(false);
  for (State s = 0; s < a.num_states(); ++s) {
    for (const Edge& e : a.edges[s]) out.edges[e.to].push_back({e.sym, s});
    if (a.accepting[s]) out.initial.push_back(s);
  }
  for (State s : a.initial) out.accepting[s] = true;
  return out;
}

Automaton remove_epsilon(const Automaton& a) {
  bool any = false;
  for (const auto& out : a.edges) {
    for (const Edge& e : out) any |= e.sym == kEpsilon;
  }
  if (!any) return a;
  Automaton out(a.alphabet);
  for (State s = 0; s < a.num_states(); ++s) out.add_state(false);
  for (State s = 0; s < a.num_states(); ++s) {
    for (State t : closure(a, {s})) {
      out.accepting[s] = out.accepting[s] || a.accepting[t];
      for (const Edge& e : a.edges[t]) {
        if (e.sym != kEpsilon) out.edges[s].push_back(e);
      }
    }
    auto& v = out.edges[s];
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  out.initial = a.initial;
  return out;
}

Automaton determinize(const Automaton& a) {
  if (a.is_deterministic()) return a;
  Automaton out(a.alphabet);
  Interner<std::vector<State>, VectorHash> ids;
  std::deque<State> queue;
  auto visit = [&](std::vector<State> set) {
    set = closure(a, std::move(set));
    auto [id, fresh] = ids.insert(set);
    if (fresh) {
      bool acc = std::any_of(set.begin(), set.end(), [&](State s) { return a.accepting[s]; });
      out.add_state(acc);
      queue.push_back(id);
    }
    return id;
  };
  if (!a.initial.empty()) out.initial.push_back(visit(a.initial));
  const int k = a.alphabet->size();
  std::vector<std::vector<State>> targets(k);
  while (!queue.empty()) {
    const State id = queue.front();
    queue.pop_front();
    for (auto& t : targets) t.clear();
    for (State s : ids.key(id)) {
      for (const Edge& e : a.edges[s]) {
        if (e.sym != kEpsilon) targets[e.sym].push_back(e.to);
      }
    }
    for (Symbol sym = 0; sym < k; ++sym) {
      if (targets[sym].empty()) continue;
      auto& t = targets[sym];
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
      const State to = visit(t);
      out.edges[id].push_back({sym, to});
    }
  }
  return out;
}

Automaton trim(const Automaton& a) {
  const std::size_t n = a.num_states();
  std::vector<char> fwd(n), bwd(n);
  std::vector<State> stack(a.initial.begin(), a.initial.end());
  for (State s : stack) fwd[s] = 1;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (const Edge& e : a.edges[s]) {
      if (!fwd[e.to]) {
        fwd[e.to] = 1;
        stack.push_back(e.to);
      }
    }
  }
  std::vector<std::vector<State>> rev(n);
  for (State s = 0; s < n; ++s) {
    for (const Edge& e : a.edges[s]) rev[e.to].push_back(s);
  }
  for (State s = 0; s < n; ++s) {
    if (a.accepting[s]) {
      bwd[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (State p : rev[s]) {
      if (!bwd[p]) {
        bwd[p] = 1;
        stack.push_back(p);
      }
    }
  }
  std::vector<State> id(n, UINT32_MAX);
  Automaton out(a.alphabet);
  for (State s = 0; s < n; ++s) {
    if (fwd[s] && bwd[s]) id[s] = out.add_state(a.accepting[s]);
  }
  for (State s = 0; s < n; ++s) {
    if (id[s] == UINT32_MAX) continue;
    for (const Edge& e : a.edges[s]) {
      if (id[e.to] != UINT32_MAX) out.edges[id[s]].push_back({e.sym, id[e.to]});
    }
  }
  for (State s : a.initial) {
    if (id[s] != UINT32_MAX) out.initial.push_back(id[s]);
  }
  return out;
}

// Hopcroft partition refinement on the trimmed DFA completed with an
// implicit dead block.
Automaton minimize(const Automaton& input) {
  const Automaton d = trim(determinize(trim(input)));
  const std::size_t n = d.num_states();
  const int k = d.alphabet->size();
  if (n == 0) return d;
  const State dead = static_cast<State>(n);
  const std::size_t total = n + 1;
  std::vector<State> delta(total * k, dead);
  for (State s = 0; s < n; ++s) {
    for (const Edge& e : d.edges[s]) delta[s * k + e.sym] = e.to;
  }
  // Inverse transitions in CSR form, keyed by target * k + symbol.
  std::vector<std::uint32_t> inv_start(total * k + 1, 0);
  for (std::size_t i = 0; i < total * k; ++i) ++inv_start[delta[i] * k + i % k + 1];
  for (std::size_t i = 0; i < total * k; ++i) inv_start[i + 1] += inv_start[i];
  std::vector<State> inv(total * k);
  {
    std::vector<std::uint32_t> fill(inv_start.begin(), inv_start.end() - 1);
    for (std::size_t i = 0; i < total * k; ++i) inv[fill[delta[i] * k + i % k]++] = static_cast<State>(i / k);
  }

  // Partition refinement over an array of states; each block is a
  // contiguous range [first, last) of `elems`, and splitting moves the
  // marked states to the front of their range.
  std::vector<State> elems(total), pos(total);
  std::vector<int> block(total);
  std::vector<std::size_t> first, last, marks;
  {
    std::size_t i = 0;
    for (int pass = 0; pass < 2; ++pass) {
      const std::size_t from = i;
      for (State s = 0; s < total; ++s) {
        if ((s < n && d.accepting[s]) == (pass == 0)) {
          elems[i] = s;
          pos[s] = static_cast<State>(i++);
          block[s] = static_cast<int>(first.size());
        }
      }
      if (i > from) {
        first.push_back(from);
        last.push_back(i);
        marks.push_back(0);
      }
    }
  }
  std::vector<int> work;
  std::vector<char> in_work(first.size(), 1);
  for (int b = 0; b < static_cast<int>(first.size()); ++b) work.push_back(b);
  std::vector<State> members;
  std::vector<int> touched;
  while (!work.empty()) {
    const int splitter = work.back();
    work.pop_back();
    in_work[splitter] = 0;
    members.assign(elems.begin() + first[splitter], elems.begin() + last[splitter]);
    for (Symbol a = 0; a < k; ++a) {
      touched.clear();
      for (State t : members) {
        const std::size_t key = static_cast<std::size_t>(t) * k + a;
        for (std::uint32_t i = inv_start[key]; i < inv_start[key + 1]; ++i) {
          const State s = inv[i];
          const int b = block[s];
          const std::size_t slot = first[b] + marks[b];
          if (pos[s] < slot) continue;  // already marked
          if (marks[b] == 0) touched.push_back(b);
          const State other = elems[slot];
          std::swap(elems[slot], elems[pos[s]]);
          pos[other] = pos[s];
          pos[s] = static_cast<State>(slot);
          ++marks[b];
        }
      }
      for (int b : touched) {
        const std::size_t m = marks[b];
        marks[b] = 0;
        if (m == last[b] - first[b]) continue;
        const int nb = static_cast<int>(first.size());
        first.push_back(first[b]);
        last.push_back(first[b] + m);
        marks.push_back(0);
        first[b] += m;
        for (std::size_t i = first[nb]; i < last[nb]; ++i) block[elems[i]] = nb;
        in_work.push_back(0);
        if (in_work[b]) {
          work.push_back(nb);
          in_work[nb] = 1;
        } else {
          const int smaller = last[b] - first[b] <= last[nb] - first[nb] ? b : nb;
          work.push_back(smaller);
          in_work[smaller] = 1;
        }
      }
    }
  }
  // Rebuild, dropping the dead block; states numbered in BFS order from
  // the initial state so the result is canonical.
  const int dead_block = block[dead];
  Automaton out(d.alphabet);
  std::vector<State> id(first.size(), UINT32_MAX);
  std::deque<int> queue;
  auto visit = [&](int b) {
    if (id[b] == UINT32_MAX) {
      id[b] = out.add_state(d.accepting[elems[first[b]]]);
      queue.push_back(b);
    }
    return id[b];
  };
  const int start = block[d.initial.front()];
  if (start == dead_block) return empty_language(d.alphabet);
  out.initial.push_back(visit(start));
  while (!queue.empty()) {
    const int b = queue.front();
    queue.pop_front();
    const State rep = elems[first[b]];
    for (Symbol a = 0; a < k; ++a) {
      const int tb = block[delta[rep * k + a]];
      if (tb == dead_block) continue;
      const State to = visit(tb);
      out.edges[id[b]].push_back({a, to});
    }
  }
  return out;
}

bool accepts(const Automaton& a, const Word& w) {
  for (Symbol s : w) {
    if (s < 0 || s >= a.alphabet->size()) throw std::invalid_argument("accepts: foreign symbol");
  }
  std::vector<State> cur = closure(a, a.initial);
  for (Symbol sym : w) {
    std::vector<State> next;
    for (State s : cur) {
      for (const Edge& e : a.edges[s]) {
        if (e.sym == sym) next.push_back(e.to);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur = closure(a, std::move(next));
    if (cur.empty()) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [&](State s) { return a.accepting[s]; });
}

bool is_empty(const Automaton& a) { return trim(a).num_states() == 0; }

bool equivalent(const Automaton& a, const Automaton& b) {
  require_same(a, b, "equivalent");
  return is_empty(intersect(a, complement(b))) && is_empty(intersect(b, complement(a)));
}

mpz_class count_words(const Automaton& a, int n) {
  const Automaton d = trim(determinize(a));
  if (d.num_states() == 0) return 0;
  std::vector<mpz_class> cur(d.num_states(), 0), next(d.num_states());
  cur[d.initial.front()] = 1;
  for (int step = 0; step < n; ++step) {
    std::fill(next.begin(), next.end(), 0);
    for (State s = 0; s < d.num_states(); ++s) {
      if (cur[s] == 0) continue;
      for (const Edge& e : d.edges[s]) next[e.to] += cur[s];
    }
    std::swap(cur, next);
  }
  mpz_class total = 0;
  for (State s = 0; s < d.num_states(); ++s) {
    if (d.accepting[s]) total += cur[s];
  }
  return total;
}

std::vector<Word> accepted_words(const Automaton& a, int n) {
  const Automaton d = trim(determinize(a));
  std::vector<Word> out;
  if (d.num_states() == 0) return out;
  // Breadth first by length; edges sorted so each layer is lexicographic.
  std::vector<std::pair<Word, State>> layer{{Word{}, d.initial.front()}};
  for (int len = 0; len <= n; ++len) {
    std::vector<std::pair<Word, State>> next;
    for (const auto& [w, s] : layer) {
      if (d.accepting[s]) out.push_back(w);
      if (len == n) continue;
      auto edges = d.edges[s];
      std::sort(edges.begin(), edges.end());
      for (const Edge& e : edges) {
        Word x = w;
        x.push_back(e.sym);
        next.push_back({std::move(x), e.to});
      }
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace stair
