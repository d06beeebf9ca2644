// On-demand automata.  Lazy objects cache what they have explored, so they
// are single-threaded; materialized results are plain values.
#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "stair/error.hpp"
#include "stair/fsm.hpp"

namespace stair {

namespace {

class ExplicitView : public LazyAutomaton {
 public:
  explicit ExplicitView(std::shared_ptr<const Automaton> a) : a_(std::move(a)) {
    for (const auto& out : a_->edges) {
      for (const Edge& e : out) eps_ |= e.sym == kEpsilon;
    }
  }
  AlphabetPtr alphabet() const override { return a_->alphabet; }
  std::vector<State> initial_states() override { return a_->initial; }
  bool is_accepting(State s) override { return a_->accepting[s]; }
  bool has_epsilon() const override { return eps_; }
  void successors(State s, Symbol sym, std::vector<State>& out) override {
    for (const Edge& e : a_->edges[s]) {
      if (e.sym == sym) out.push_back(e.to);
    }
  }

 private:
  std::shared_ptr<const Automaton> a_;
  bool eps_ = false;
};

class ExplicitTransducerView : public LazyTransducer {
 public:
  explicit ExplicitTransducerView(std::shared_ptr<const Transducer> t) : t_(std::move(t)) {}
  AlphabetPtr in_alphabet() const override { return t_->in_alphabet; }
  AlphabetPtr out_alphabet() const override { return t_->out_alphabet; }
  std::vector<State> initial_states() override { return t_->initial; }
  bool is_accepting(State s) override { return t_->accepting[s]; }
  void moves(State s, Symbol sym, std::vector<Move>& out) override {
    for (const Arc& a : t_->arcs[s]) {
      if (a.in == sym) out.push_back({a.out, a.to});
    }
  }

 private:
  std::shared_ptr<const Transducer> t_;
};

constexpr State kDead = UINT32_MAX;

class Product : public LazyAutomaton {
 public:
  Product(LazyPtr a, LazyPtr b, ProductMode mode) : a_(std::move(a)), b_(std::move(b)), mode_(mode) {
    if (!same_alphabet(a_->alphabet(), b_->alphabet())) throw std::invalid_argument("product: alphabet mismatch");
    if (mode_ == ProductMode::Difference && b_->has_epsilon()) {
      throw std::invalid_argument("product: difference needs an epsilon-free subtrahend");
    }
  }
  AlphabetPtr alphabet() const override { return a_->alphabet(); }
  bool has_epsilon() const override { return a_->has_epsilon() || b_->has_epsilon(); }
  std::vector<State> initial_states() override {
    std::vector<State> out;
    auto bi = b_->initial_states();
    if (mode_ == ProductMode::Difference) {
      if (bi.size() > 1) throw std::invalid_argument("product: difference needs a deterministic subtrahend");
      if (bi.empty()) bi.push_back(kDead);
    }
    for (State x : a_->initial_states()) {
      for (State y : bi) out.push_back(ids_.insert({x, y}).first);
    }
    return out;
  }
  bool is_accepting(State s) override {
    const auto [x, y] = ids_.key(s);
    const bool in_b = y != kDead && b_->is_accepting(y);
    return a_->is_accepting(x) && (mode_ == ProductMode::Intersection ? in_b : !in_b);
  }
  void successors(State s, Symbol sym, std::vector<State>& out) override {
    const auto [x, y] = ids_.key(s);
    if (sym == kEpsilon) {
      // One side moves, the other waits.
      xs_.clear();
      a_->successors(x, kEpsilon, xs_);
      for (State nx : xs_) out.push_back(ids_.insert({nx, y}).first);
      if (y == kDead) return;
      ys_.clear();
      b_->successors(y, kEpsilon, ys_);
      for (State ny : ys_) out.push_back(ids_.insert({x, ny}).first);
      return;
    }
    xs_.clear();
    a_->successors(x, sym, xs_);
    if (xs_.empty()) return;
    ys_.clear();
    if (y != kDead) b_->successors(y, sym, ys_);
    if (mode_ == ProductMode::Difference) {
      if (ys_.size() > 1) throw std::invalid_argument("product: difference needs a deterministic subtrahend");
      if (ys_.empty()) ys_.push_back(kDead);
    }
    for (State nx : xs_) {
      for (State ny : ys_) out.push_back(ids_.insert({nx, ny}).first);
    }
  }

 private:
  LazyPtr a_, b_;
  ProductMode mode_;
  Interner<std::pair<State, State>, PairHash> ids_;
  std::vector<State> xs_, ys_;
};

class Determinize : public LazyAutomaton {
 public:
  explicit Determinize(LazyPtr a) : a_(std::move(a)) {}
  AlphabetPtr alphabet() const override { return a_->alphabet(); }
  bool has_epsilon() const override { return false; }
  std::vector<State> initial_states() override {
    auto set = closure(a_->initial_states());
    if (set.empty()) return {};
    return {ids_.insert(set).first};
  }
  bool is_accepting(State s) override {
    if (s >= accept_.size()) accept_.resize(ids_.size(), -1);
    if (accept_[s] < 0) {
      const auto& set = ids_.key(s);
      accept_[s] = std::any_of(set.begin(), set.end(), [&](State x) { return a_->is_accepting(x); });
    }
    return accept_[s];
  }
  void successors(State s, Symbol sym, std::vector<State>& out) override {
    if (sym == kEpsilon) return;
    std::vector<State> next;
    const std::vector<State> set = ids_.key(s);
    for (State x : set) a_->successors(x, sym, next);
    next = closure(std::move(next));
    if (!next.empty()) out.push_back(ids_.insert(next).first);
  }

 private:
  std::vector<State> closure(std::vector<State> set) {
    if (a_->has_epsilon()) {
      std::unordered_map<State, char> in;
      for (State s : set) in[s] = 1;
      for (std::size_t i = 0; i < set.size(); ++i) {
        scratch_.clear();
        a_->successors(set[i], kEpsilon, scratch_);
        for (State t : scratch_) {
          if (in.emplace(t, 1).second) set.push_back(t);
        }
      }
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
  }

  LazyPtr a_;
  Interner<std::vector<State>, VectorHash> ids_;
  std::vector<signed char> accept_;
  std::vector<State> scratch_;
};

class Preimage : public LazyAutomaton {
 public:
  Preimage(LazyTransducerPtr t, LazyPtr y) : t_(std::move(t)), y_(std::move(y)) {
    if (!same_alphabet(t_->out_alphabet(), y_->alphabet())) throw std::invalid_argument("preimage: alphabet mismatch");
    if (y_->has_epsilon()) throw std::invalid_argument("preimage: target must be epsilon-free");
  }
  AlphabetPtr alphabet() const override { return t_->in_alphabet(); }
  std::vector<State> initial_states() override {
    std::vector<State> out;
    auto ys = y_->initial_states();
    for (State t : t_->initial_states()) {
      for (State y : ys) out.push_back(ids_.insert({t, y}).first);
    }
    return out;
  }
  bool is_accepting(State s) override {
    const auto [t, y] = ids_.key(s);
    return t_->is_accepting(t) && y_->is_accepting(y);
  }
  void successors(State s, Symbol sym, std::vector<State>& out) override {
    const auto [t, y] = ids_.key(s);
    std::vector<LazyTransducer::Move> moves;
    t_->moves(t, sym, moves);
    for (const auto& m : moves) {
      std::vector<State> cur{y};
      for (Symbol o : m.out) {
        std::vector<State> next;
        for (State q : cur) y_->successors(q, o, next);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
        if (cur.empty()) break;
      }
      for (State q : cur) out.push_back(ids_.insert({m.to, q}).first);
    }
  }

 private:
  LazyTransducerPtr t_;
  LazyPtr y_;
  Interner<std::pair<State, State>, PairHash> ids_;
};

class Compose : public LazyTransducer {
 public:
  Compose(LazyTransducerPtr t1, LazyTransducerPtr t2) : t1_(std::move(t1)), t2_(std::move(t2)) {
    if (!same_alphabet(t1_->out_alphabet(), t2_->in_alphabet())) {
      throw std::invalid_argument("compose: t1 output alphabet differs from t2 input alphabet");
    }
  }
  AlphabetPtr in_alphabet() const override { return t1_->in_alphabet(); }
  AlphabetPtr out_alphabet() const override { return t2_->out_alphabet(); }
  std::vector<State> initial_states() override {
    std::vector<State> out;
    auto b = t2_->initial_states();
    for (State x : t1_->initial_states()) {
      for (State y : b) out.push_back(ids_.insert({x, y}).first);
    }
    return out;
  }
  bool is_accepting(State s) override {
    const auto [x, y] = ids_.key(s);
    return t1_->is_accepting(x) && t2_->is_accepting(y);
  }
  void moves(State s, Symbol sym, std::vector<Move>& out) override {
    const auto [x, y] = ids_.key(s);
    if (sym == kEpsilon) {
      std::vector<Move> m2;
      t2_->moves(y, kEpsilon, m2);
      for (auto& m : m2) out.push_back({std::move(m.out), ids_.insert({x, m.to}).first});
    }
    std::vector<Move> m1;
    t1_->moves(x, sym, m1);
    for (const auto& a : m1) {
      std::vector<Move> fed{{{}, y}};
      for (Symbol o : a.out) {
        std::vector<Move> next;
        for (const auto& f : fed) {
          std::vector<Move> m2;
          t2_->moves(f.to, o, m2);
          for (auto& m : m2) {
            Word w = f.out;
            w.insert(w.end(), m.out.begin(), m.out.end());
            next.push_back({std::move(w), m.to});
          }
        }
        fed = std::move(next);
        if (fed.empty()) break;
      }
      for (auto& f : fed) out.push_back({std::move(f.out), ids_.insert({a.to, f.to}).first});
    }
  }

 private:
  LazyTransducerPtr t1_, t2_;
  Interner<std::pair<State, State>, PairHash> ids_;
};

}  // namespace

LazyPtr lazy_view(std::shared_ptr<const Automaton> a) { return std::make_shared<ExplicitView>(std::move(a)); }

LazyTransducerPtr lazy_view(std::shared_ptr<const Transducer> t) {
  return std::make_shared<ExplicitTransducerView>(std::move(t));
}

LazyPtr lazy_product(LazyPtr a, LazyPtr b, ProductMode mode) {
  return std::make_shared<Product>(std::move(a), std::move(b), mode);
}

LazyPtr lazy_determinize(LazyPtr a) { return std::make_shared<Determinize>(std::move(a)); }

LazyPtr lazy_preimage(LazyTransducerPtr t, LazyPtr y) { return std::make_shared<Preimage>(std::move(t), std::move(y)); }

LazyTransducerPtr lazy_compose(LazyTransducerPtr t1, LazyTransducerPtr t2) {
  return std::make_shared<Compose>(std::move(t1), std::move(t2));
}

Automaton materialize(LazyAutomaton& a, std::size_t max_states) {
  Automaton out(a.alphabet());
  std::unordered_map<State, State> id;
  std::deque<State> queue;
  auto visit = [&](State s) {
    auto [it, fresh] = id.try_emplace(s, static_cast<State>(out.num_states()));
    if (fresh) {
      if (out.num_states() >= max_states) {
        throw DomainError("materialize: more than " + std::to_string(max_states) + " states");
      }
      out.add_state(a.is_accepting(s));
      queue.push_back(s);
    }
    return it->second;
  };
  for (State s : a.initial_states()) out.initial.push_back(visit(s));
  const int k = out.alphabet->size();
  const bool eps = a.has_epsilon();
  std::vector<State> succ;
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    const State from = id.at(s);
    for (Symbol sym = eps ? kEpsilon : 0; sym < k; ++sym) {
      succ.clear();
      a.successors(s, sym, succ);
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
      for (State t : succ) {
        const State to = visit(t);
        out.edges[from].push_back({sym, to});
      }
    }
  }
  return out;
}

bool lazy_accepts(LazyAutomaton& a, const Word& w) {
  auto close = [&](std::vector<State> set) {
    if (a.has_epsilon()) {
      for (std::size_t i = 0; i < set.size(); ++i) {
        std::vector<State> e;
        a.successors(set[i], kEpsilon, e);
        for (State t : e) {
          if (std::find(set.begin(), set.end(), t) == set.end()) set.push_back(t);
        }
      }
    }
    return set;
  };
  std::vector<State> cur = close(a.initial_states());
  for (Symbol sym : w) {
    if (sym < 0 || sym >= a.alphabet()->size()) throw std::invalid_argument("lazy_accepts: foreign symbol");
    std::vector<State> next;
    for (State s : cur) a.successors(s, sym, next);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur = close(std::move(next));
    if (cur.empty()) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [&](State s) { return a.is_accepting(s); });
}

std::vector<mpz_class> lazy_count_by_weight(LazyAutomaton& a, const std::vector<bool>& weighted, int max_weight,
                                            int max_free) {
  if (a.has_epsilon()) throw std::invalid_argument("lazy_count_by_weight: automaton has epsilon moves");
  const auto init = a.initial_states();
  if (init.size() > 1) throw std::invalid_argument("lazy_count_by_weight: automaton is not deterministic");
  std::vector<mpz_class> result(max_weight + 1, 0);
  if (init.empty()) return result;
  struct Key {
    State s;
    int w, f;
    bool operator<(const Key& o) const { return std::tie(s, w, f) < std::tie(o.s, o.w, o.f); }
  };
  std::map<Key, mpz_class> layer{{{init[0], 0, 0}, 1}};
  const int k = a.alphabet()->size();
  std::vector<State> succ;
  while (!layer.empty()) {
    std::map<Key, mpz_class> next;
    for (const auto& [key, count] : layer) {
      if (a.is_accepting(key.s)) result[key.w] += count;
      for (Symbol sym = 0; sym < k; ++sym) {
        const int w = key.w + (weighted[sym] ? 1 : 0);
        const int f = key.f + (weighted[sym] ? 0 : 1);
        if (w > max_weight || f > max_free) continue;
        succ.clear();
        a.successors(key.s, sym, succ);
        if (succ.size() > 1) throw std::invalid_argument("lazy_count_by_weight: automaton is not deterministic");
        for (State t : succ) next[{t, w, f}] += count;
      }
    }
    layer = std::move(next);
  }
  return result;
}

}  // namespace stair
