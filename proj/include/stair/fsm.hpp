#ifndef STAIR_FSM_HPP
#define STAIR_FSM_HPP

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace stair {

using Symbol = std::int32_t;
using State = std::uint32_t;
using Word = std::vector<Symbol>;

inline constexpr Symbol kEpsilon = -1;

// Interned symbol table.  Symbols are dense integers 0..size()-1.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(const std::vector<std::string>& names);

  Symbol intern(const std::string& name);
  // Throws std::invalid_argument for an unknown name.
  Symbol at(const std::string& name) const;
  std::optional<Symbol> find(const std::string& name) const;
  const std::string& name(Symbol s) const { return names_.at(static_cast<std::size_t>(s)); }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

  Word word(const std::vector<std::string>& names) const;
  std::string spell(const Word& w, const std::string& sep = " ") const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> index_;
};

using AlphabetPtr = std::shared_ptr<Alphabet>;

AlphabetPtr make_alphabet(const std::vector<std::string>& names);
// Same pointer, or same symbol names in the same order.
bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);

struct Edge {
  Symbol sym;  // kEpsilon for an empty move
  State to;
  bool operator<(const Edge& o) const { return sym != o.sym ? sym < o.sym : to < o.to; }
  bool operator==(const Edge&) const = default;
};

// Nondeterministic automaton with epsilon moves.
struct Automaton {
  AlphabetPtr alphabet;
  std::vector<std::vector<Edge>> edges;
  std::vector<State> initial;
  std::vector<bool> accepting;

  Automaton() = default;
  explicit Automaton(AlphabetPtr a) : alphabet(std::move(a)) {}

  State add_state(bool accept = false);
  void add_edge(State from, Symbol sym, State to);
  std::size_t num_states() const { return edges.size(); }
  std::size_t num_edges() const;
  bool is_deterministic() const;
  // For deterministic automata: target of (s, sym), if any.
  std::optional<State> step(State s, Symbol sym) const;
};

Automaton empty_language(AlphabetPtr a);
Automaton epsilon_language(AlphabetPtr a);
Automaton universal_language(AlphabetPtr a);
Automaton singleton(AlphabetPtr a, const Word& w);
Automaton finite_language(AlphabetPtr a, const std::vector<Word>& words);

Automaton union_of(const Automaton& a, const Automaton& b);
Automaton intersect(const Automaton& a, const Automaton& b);
// Complement relative to the automaton's own alphabet.
Automaton complement(const Automaton& a);
Automaton concat(const Automaton& a, const Automaton& b);
Automaton star(const Automaton& a);
Automaton reverse(const Automaton& a);

Automaton remove_epsilon(const Automaton& a);
Automaton determinize(const Automaton& a);
// Minimal complete-less DFA: determinizes if needed, drops the dead state.
Automaton minimize(const Automaton& a);
Automaton trim(const Automaton& a);

bool accepts(const Automaton& a, const Word& w);
bool is_empty(const Automaton& a);
bool equivalent(const Automaton& a, const Automaton& b);
mpz_class count_words(const Automaton& a, int n);
// Every accepted word of length <= n, in length-lexicographic order.
std::vector<Word> accepted_words(const Automaton& a, int n);

// Transducer arcs read one symbol (or nothing) and write a word.
struct Arc {
  Symbol in;  // kEpsilon for an empty read
  Word out;
  State to;
  bool operator==(const Arc&) const = default;
};

struct Transducer {
  AlphabetPtr in_alphabet;
  AlphabetPtr out_alphabet;
  std::vector<std::vector<Arc>> arcs;
  std::vector<State> initial;
  std::vector<bool> accepting;

  Transducer() = default;
  Transducer(AlphabetPtr in, AlphabetPtr out) : in_alphabet(std::move(in)), out_alphabet(std::move(out)) {}

  State add_state(bool accept = false);
  void add_arc(State from, Symbol in, Word out, State to);
  std::size_t num_states() const { return arcs.size(); }
};

Transducer identity_transducer(AlphabetPtr a);

// All outputs of accepting runs on w.  Throws DomainError if an epsilon
// cycle makes the output set unbounded.
std::set<Word> apply(const Transducer& t, const Word& w);
Automaton image(const Transducer& t, const Automaton& a);
Automaton preimage(const Transducer& t, const Automaton& a);
// compose(t1, t2) maps x to t2(t1(x)).
Transducer compose(const Transducer& t1, const Transducer& t2);

std::string to_json(const Automaton& a);
Automaton automaton_from_json(const std::string& text);
std::string to_dot(const Automaton& a, const std::string& name = "A");
std::string to_json(const Transducer& t);
std::string to_dot(const Transducer& t, const std::string& name = "T");

// ---------------------------------------------------------------------------
// On-demand construction.  Lazy objects hand out dense state ids for their
// own structured states; wrappers intern pairs and subsets the same way.

class LazyAutomaton {
 public:
  virtual ~LazyAutomaton() = default;
  virtual AlphabetPtr alphabet() const = 0;
  virtual std::vector<State> initial_states() = 0;
  virtual bool is_accepting(State s) = 0;
  // Appends the targets of s on sym; sym may be kEpsilon.
  virtual void successors(State s, Symbol sym, std::vector<State>& out) = 0;
  virtual bool has_epsilon() const { return true; }
};

class LazyTransducer {
 public:
  struct Move {
    Word out;
    State to;
  };
  virtual ~LazyTransducer() = default;
  virtual AlphabetPtr in_alphabet() const = 0;
  virtual AlphabetPtr out_alphabet() const = 0;
  virtual std::vector<State> initial_states() = 0;
  virtual bool is_accepting(State s) = 0;
  // Appends the moves of s reading sym; sym may be kEpsilon.
  virtual void moves(State s, Symbol sym, std::vector<Move>& out) = 0;
};

using LazyPtr = std::shared_ptr<LazyAutomaton>;
using LazyTransducerPtr = std::shared_ptr<LazyTransducer>;

// Interns keys to consecutive ids.
template <class Key, class Hash = std::hash<Key>>
class Interner {
 public:
  std::pair<State, bool> insert(const Key& k) {
    auto [it, fresh] = ids_.try_emplace(k, static_cast<State>(keys_.size()));
    if (fresh) keys_.push_back(k);
    return {it->second, fresh};
  }
  const Key& key(State s) const { return keys_[s]; }
  std::size_t size() const { return keys_.size(); }

 private:
  std::unordered_map<Key, State, Hash> ids_;
  std::vector<Key> keys_;
};

struct PairHash {
  std::size_t operator()(const std::pair<State, State>& p) const {
    return std::hash<std::uint64_t>()((std::uint64_t(p.first) << 32) | p.second);
  }
};

struct VectorHash {
  std::size_t operator()(const std::vector<State>& v) const {
    std::size_t h = v.size();
    for (State s : v) h ^= s + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

LazyPtr lazy_view(std::shared_ptr<const Automaton> a);
LazyTransducerPtr lazy_view(std::shared_ptr<const Transducer> t);

// Deterministic automaton given by a step function on structured keys.
template <class Key, class Hash = std::hash<Key>>
class KeyedDfa : public LazyAutomaton {
 public:
  using Step = std::function<std::optional<Key>(const Key&, Symbol)>;
  using Accept = std::function<bool(const Key&)>;

  KeyedDfa(AlphabetPtr a, Key init, Step step, Accept accept)
      : alphabet_(std::move(a)), step_(std::move(step)), accept_(std::move(accept)) {
    keys_.insert(init);
  }
  AlphabetPtr alphabet() const override { return alphabet_; }
  std::vector<State> initial_states() override { return {0}; }
  bool is_accepting(State s) override { return accept_(keys_.key(s)); }
  bool has_epsilon() const override { return false; }
  void successors(State s, Symbol sym, std::vector<State>& out) override {
    if (sym == kEpsilon) return;
    auto next = step_(keys_.key(s), sym);
    if (next) out.push_back(keys_.insert(*next).first);
  }
  const Key& key(State s) const { return keys_.key(s); }

 private:
  AlphabetPtr alphabet_;
  Step step_;
  Accept accept_;
  Interner<Key, Hash> keys_;
};

// Transducer given by a move function on structured keys.
template <class Key, class Hash = std::hash<Key>>
class KeyedTransducer : public LazyTransducer {
 public:
  using KeyMove = std::pair<Word, Key>;
  using Step = std::function<void(const Key&, Symbol, std::vector<KeyMove>&)>;
  using Accept = std::function<bool(const Key&)>;

  KeyedTransducer(AlphabetPtr in, AlphabetPtr out, Key init, Step step, Accept accept)
      : in_(std::move(in)), out_(std::move(out)), step_(std::move(step)), accept_(std::move(accept)) {
    keys_.insert(init);
  }
  AlphabetPtr in_alphabet() const override { return in_; }
  AlphabetPtr out_alphabet() const override { return out_; }
  std::vector<State> initial_states() override { return {0}; }
  bool is_accepting(State s) override { return accept_(keys_.key(s)); }
  void moves(State s, Symbol sym, std::vector<Move>& out) override {
    buf_.clear();
    step_(keys_.key(s), sym, buf_);
    for (auto& [w, k] : buf_) out.push_back({std::move(w), keys_.insert(k).first});
  }
  const Key& key(State s) const { return keys_.key(s); }
  std::size_t explored() const { return keys_.size(); }

 private:
  AlphabetPtr in_, out_;
  Step step_;
  Accept accept_;
  Interner<Key, Hash> keys_;
  std::vector<KeyMove> buf_;
};

enum class ProductMode { Intersection, Difference };

// Synchronous product; an epsilon move of either side leaves the other
// in place.  Difference requires b to be deterministic and epsilon-free
// (its missing moves count as rejection).
LazyPtr lazy_product(LazyPtr a, LazyPtr b, ProductMode mode = ProductMode::Intersection);
// Subset construction over an epsilon-NFA; the empty subset is never produced.
LazyPtr lazy_determinize(LazyPtr a);
// {x : some output of t on x is accepted by y}; y must be epsilon-free.
LazyPtr lazy_preimage(LazyTransducerPtr t, LazyPtr y);
// x -> t2(t1(x)).  Moves of t2 that read nothing are taken only between
// whole outputs of t1.
LazyTransducerPtr lazy_compose(LazyTransducerPtr t1, LazyTransducerPtr t2);

std::set<Word> apply(LazyTransducer& t, const Word& w);

// Explores every reachable state.  Throws DomainError beyond max_states.
Automaton materialize(LazyAutomaton& a, std::size_t max_states = 5'000'000);
bool lazy_accepts(LazyAutomaton& a, const Word& w);

// Number of accepted words by weight, for a deterministic epsilon-free lazy
// automaton: result[n] counts accepted words with n weighted symbols, for
// n <= max_weight.  Runs of unweighted symbols are bounded by max_free.
std::vector<mpz_class> lazy_count_by_weight(LazyAutomaton& a, const std::vector<bool>& weighted,
                                            int max_weight, int max_free);

}  // namespace stair

#endif  // STAIR_FSM_HPP
