#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "stair/error.hpp"
#include "stair/fsm.hpp"

namespace stair {

State Transducer::add_state(bool accept) {
  arcs.emplace_back();
  accepting.push_back(accept);
  return static_cast<State>(arcs.size() - 1);
}

void Transducer::add_arc(State from, Symbol in, Word out, State to) {
  if (from >= arcs.size() || to >= arcs.size()) throw std::out_of_range("add_arc: unknown state");
  if (in != kEpsilon && (in < 0 || in >= in_alphabet->size())) {
    throw std::invalid_argument("add_arc: input symbol outside alphabet");
  }
  for (Symbol s : out) {
    if (s < 0 || s >= out_alphabet->size()) throw std::invalid_argument("add_arc: output symbol outside alphabet");
  }
  arcs[from].push_back({in, std::move(out), to});
}

Transducer identity_transducer(AlphabetPtr a) {
  Transducer t(a, a);
  t.initial.push_back(t.add_state(true));
  for (Symbol s = 0; s < a->size(); ++s) t.add_arc(0, s, {s}, 0);
  return t;
}

std::set<Word> apply(const Transducer& t, const Word& w) {
  // Configurations (state, consumed, output); the output bound turns an
  // output-producing epsilon cycle into an error instead of a hang.
  const std::size_t bound = 8 * w.size() + 64;
  std::set<std::tuple<State, std::size_t, Word>> seen;
  std::deque<std::tuple<State, std::size_t, Word>> queue;
  std::set<Word> results;
  for (State s : t.initial) {
    if (seen.insert({s, 0, {}}).second) queue.push_back({s, 0, {}});
  }
  while (!queue.empty()) {
    auto [s, pos, out] = queue.front();
    queue.pop_front();
    if (pos == w.size() && t.accepting[s]) results.insert(out);
    for (const Arc& a : t.arcs[s]) {
      std::size_t npos = pos;
      if (a.in != kEpsilon) {
        if (pos == w.size() || a.in != w[pos]) continue;
        ++npos;
      }
      Word nout = out;
      nout.insert(nout.end(), a.out.begin(), a.out.end());
      if (nout.size() > bound) throw DomainError("apply: unbounded output (epsilon cycle)");
      if (seen.insert({a.to, npos, nout}).second) queue.push_back({a.to, npos, std::move(nout)});
    }
  }
  return results;
}

std::set<Word> apply(LazyTransducer& t, const Word& w) {
  const std::size_t bound = 8 * w.size() + 64;
  std::set<std::tuple<State, std::size_t, Word>> seen;
  std::deque<std::tuple<State, std::size_t, Word>> queue;
  std::set<Word> results;
  for (State s : t.initial_states()) {
    if (seen.insert({s, 0, {}}).second) queue.push_back({s, 0, {}});
  }
  std::vector<LazyTransducer::Move> moves;
  while (!queue.empty()) {
    auto [s, pos, out] = queue.front();
    queue.pop_front();
    if (pos == w.size() && t.is_accepting(s)) results.insert(out);
    for (int consume = 0; consume < 2; ++consume) {
      if (consume && pos == w.size()) break;
      moves.clear();
      t.moves(s, consume ? w[pos] : kEpsilon, moves);
      for (auto& m : moves) {
        Word nout = out;
        nout.insert(nout.end(), m.out.begin(), m.out.end());
        if (nout.size() > bound) throw DomainError("apply: unbounded output (epsilon cycle)");
        if (seen.insert({m.to, pos + consume, nout}).second) queue.push_back({m.to, pos + consume, std::move(nout)});
      }
    }
  }
  return results;
}

namespace {

// States of `a` reached from `from` by reading `w` (epsilon-free a).
std::vector<State> run_word(const Automaton& a, State from, const Word& w) {
  std::vector<State> cur{from};
  for (Symbol sym : w) {
    std::vector<State> next;
    for (State s : cur) {
      for (const Edge& e : a.edges[s]) {
        if (e.sym == sym) next.push_back(e.to);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur = std::move(next);
    if (cur.empty()) break;
  }
  return cur;
}

}  // namespace

Automaton image(const Transducer& t, const Automaton& a0) {
  if (!same_alphabet(t.in_alphabet, a0.alphabet)) throw std::invalid_argument("image: alphabet mismatch");
  const Automaton a = remove_epsilon(a0);
  Automaton out(t.out_alphabet);
  Interner<std::pair<State, State>, PairHash> ids;
  std::deque<State> queue;
  auto visit = [&](State ts, State as) {
    auto [id, fresh] = ids.insert({ts, as});
    if (fresh) {
      const State s = out.add_state(t.accepting[ts] && a.accepting[as]);
      (void)s;
      queue.push_back(id);
    }
    return id;
  };
  // Product ids coincide with out-state ids until the first chain state is
  // added, so chain states are created after exploration.
  std::vector<std::tuple<State, Word, State>> pending;
  for (State ts : t.initial) {
    for (State as : a.initial) out.initial.push_back(visit(ts, as));
  }
  while (!queue.empty()) {
    const State id = queue.front();
    queue.pop_front();
    const auto [ts, as] = ids.key(id);
    for (const Arc& arc : t.arcs[ts]) {
      if (arc.in == kEpsilon) {
        pending.push_back({id, arc.out, visit(arc.to, as)});
        continue;
      }
      for (const Edge& e : a.edges[as]) {
        if (e.sym == arc.in) pending.push_back({id, arc.out, visit(arc.to, e.to)});
      }
    }
  }
  for (const auto& [from, word, to] : pending) {
    if (word.empty()) {
      out.edges[from].push_back({kEpsilon, to});
      continue;
    }
    State cur = from;
    for (std::size_t i = 0; i < word.size(); ++i) {
      const State next = i + 1 == word.size() ? to : out.add_state(false);
      out.edges[cur].push_back({word[i], next});
      cur = next;
    }
  }
  return out;
}

Automaton preimage(const Transducer& t, const Automaton& y0) {
  if (!same_alphabet(t.out_alphabet, y0.alphabet)) throw std::invalid_argument("preimage: alphabet mismatch");
  const Automaton y = remove_epsilon(y0);
  Automaton out(t.in_alphabet);
  Interner<std::pair<State, State>, PairHash> ids;
  std::deque<State> queue;
  auto visit = [&](State ts, State ys) {
    auto [id, fresh] = ids.insert({ts, ys});
    if (fresh) {
      out.add_state(t.accepting[ts] && y.accepting[ys]);
      queue.push_back(id);
    }
    return id;
  };
  for (State ts : t.initial) {
    for (State ys : y.initial) out.initial.push_back(visit(ts, ys));
  }
  while (!queue.empty()) {
    const State id = queue.front();
    queue.pop_front();
    const auto [ts, ys] = ids.key(id);
    for (const Arc& arc : t.arcs[ts]) {
      for (State yn : run_word(y, ys, arc.out)) {
        const State to = visit(arc.to, yn);
        out.edges[id].push_back({arc.in, to});
      }
    }
  }
  return out;
}

namespace {

// Equivalent transducer whose arcs write at most one symbol.
Transducer split_outputs(const Transducer& t) {
  Transducer out(t.in_alphabet, t.out_alphabet);
  for (State s = 0; s < t.num_states(); ++s) out.add_state(t.accepting[s]);
  out.initial = t.initial;
  for (State s = 0; s < t.num_states(); ++s) {
    for (const Arc& a : t.arcs[s]) {
      if (a.out.size() <= 1) {
        out.arcs[s].push_back(a);
        continue;
      }
      State cur = s;
      for (std::size_t i = 0; i < a.out.size(); ++i) {
        const State next = i + 1 == a.out.size() ? a.to : out.add_state(false);
        out.arcs[cur].push_back({i == 0 ? a.in : kEpsilon, {a.out[i]}, next});
        cur = next;
      }
    }
  }
  return out;
}

}  // namespace

Transducer compose(const Transducer& t1_in, const Transducer& t2) {
  if (!same_alphabet(t1_in.out_alphabet, t2.in_alphabet)) {
    throw std::invalid_argument("compose: t1 output alphabet differs from t2 input alphabet");
  }
  const Transducer t1 = split_outputs(t1_in);
  Transducer out(t1.in_alphabet, t2.out_alphabet);
  Interner<std::pair<State, State>, PairHash> ids;
  std::deque<State> queue;
  auto visit = [&](State a, State b) {
    auto [id, fresh] = ids.insert({a, b});
    if (fresh) {
      out.add_state(t1.accepting[a] && t2.accepting[b]);
      queue.push_back(id);
    }
    return id;
  };
  for (State a : t1.initial) {
    for (State b : t2.initial) out.initial.push_back(visit(a, b));
  }
  while (!queue.empty()) {
    const State id = queue.front();
    queue.pop_front();
    const auto [s1, s2] = ids.key(id);
    for (const Arc& a2 : t2.arcs[s2]) {
      if (a2.in == kEpsilon) {
        const State to = visit(s1, a2.to);
        out.arcs[id].push_back({kEpsilon, a2.out, to});
      }
    }
    for (const Arc& a1 : t1.arcs[s1]) {
      if (a1.out.empty()) {
        const State to = visit(a1.to, s2);
        out.arcs[id].push_back({a1.in, {}, to});
        continue;
      }
      for (const Arc& a2 : t2.arcs[s2]) {
        if (a2.in != a1.out[0]) continue;
        const State to = visit(a1.to, a2.to);
        out.arcs[id].push_back({a1.in, a2.out, to});
      }
    }
  }
  return out;
}

// JSON: {"alphabet": [...], "states": n, "initial": [...], "accepting": [...],
//        "transitions": [[from, symbol-or-null, to], ...]}
std::string to_json(const Automaton& a) {
  nlohmann::json j;
  j["alphabet"] = a.alphabet->names();
  j["states"] = a.num_states();
  j["initial"] = a.initial;
  std::vector<State> acc;
  for (State s = 0; s < a.num_states(); ++s) {
    if (a.accepting[s]) acc.push_back(s);
  }
  j["accepting"] = acc;
  nlohmann::json tr = nlohmann::json::array();
  for (State s = 0; s < a.num_states(); ++s) {
    auto edges = a.edges[s];
    std::sort(edges.begin(), edges.end());
    for (const Edge& e : edges) {
      tr.push_back({s, e.sym == kEpsilon ? nlohmann::json(nullptr) : nlohmann::json(a.alphabet->name(e.sym)), e.to});
    }
  }
  j["transitions"] = tr;
  return j.dump();
}

Automaton automaton_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("automaton JSON: ") + e.what());
  }
  try {
    Automaton a(make_alphabet(j.at("alphabet").get<std::vector<std::string>>()));
    const std::size_t n = j.at("states").get<std::size_t>();
    for (std::size_t s = 0; s < n; ++s) a.add_state(false);
    for (State s : j.at("initial").get<std::vector<State>>()) {
      if (s >= n) throw ParseError("automaton JSON: initial state out of range");
      a.initial.push_back(s);
    }
    for (State s : j.at("accepting").get<std::vector<State>>()) {
      if (s >= n) throw ParseError("automaton JSON: accepting state out of range");
      a.accepting[s] = true;
    }
    for (const auto& t : j.at("transitions")) {
      const Symbol sym = t.at(1).is_null() ? kEpsilon : a.alphabet->at(t.at(1).get<std::string>());
      a.add_edge(t.at(0).get<State>(), sym, t.at(2).get<State>());
    }
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("automaton JSON: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw ParseError(std::string("automaton JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("automaton JSON: ") + e.what());
  }
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const Automaton& a, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n";
  for (State s = 0; s < a.num_states(); ++s) {
    os << "  q" << s << " [shape=" << (a.accepting[s] ? "doublecircle" : "circle") << "];\n";
  }
  for (State s : a.initial) os << "  start" << s << " [shape=point];\n  start" << s << " -> q" << s << ";\n";
  for (State s = 0; s < a.num_states(); ++s) {
    // Parallel edges are merged into one label.
    std::map<State, std::vector<std::string>> labels;
    for (const Edge& e : a.edges[s]) labels[e.to].push_back(e.sym == kEpsilon ? "ε" : a.alphabet->name(e.sym));
    for (auto& [to, ls] : labels) {
      std::sort(ls.begin(), ls.end());
      std::string joined;
      for (const auto& l : ls) joined += (joined.empty() ? "" : ",") + l;
      os << "  q" << s << " -> q" << to << " [label=\"" << dot_escape(joined) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string to_json(const Transducer& t) {
  nlohmann::json j;
  j["input_alphabet"] = t.in_alphabet->names();
  j["output_alphabet"] = t.out_alphabet->names();
  j["states"] = t.num_states();
  j["initial"] = t.initial;
  std::vector<State> acc;
  for (State s = 0; s < t.num_states(); ++s) {
    if (t.accepting[s]) acc.push_back(s);
  }
  j["accepting"] = acc;
  nlohmann::json tr = nlohmann::json::array();
  for (State s = 0; s < t.num_states(); ++s) {
    for (const Arc& a : t.arcs[s]) {
      std::vector<std::string> out;
      for (Symbol o : a.out) out.push_back(t.out_alphabet->name(o));
      tr.push_back({s, a.in == kEpsilon ? nlohmann::json(nullptr) : nlohmann::json(t.in_alphabet->name(a.in)), out, a.to});
    }
  }
  j["transitions"] = tr;
  return j.dump();
}

std::string to_dot(const Transducer& t, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n";
  for (State s = 0; s < t.num_states(); ++s) {
    os << "  q" << s << " [shape=" << (t.accepting[s] ? "doublecircle" : "circle") << "];\n";
  }
  for (State s : t.initial) os << "  start" << s << " [shape=point];\n  start" << s << " -> q" << s << ";\n";
  for (State s = 0; s < t.num_states(); ++s) {
    for (const Arc& a : t.arcs[s]) {
      std::string label = a.in == kEpsilon ? "ε" : t.in_alphabet->name(a.in);
      label += "/";
      label += a.out.empty() ? "ε" : t.out_alphabet->spell(a.out, "");
      os << "  q" << s << " -> q" << a.to << " [label=\"" << dot_escape(label) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace stair
