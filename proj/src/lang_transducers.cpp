#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "stair/error.hpp"
#include "stair/lang.hpp"

namespace stair {

namespace {

constexpr Symbol kO = 0, kStar = 1, kHash = 2;

// ---------------------------------------------------------------------------
// Streaming reassembly.  The state is the marked part of the partially
// rebuilt word: letters carry their value relative to the current panel,
// interleaved with slots where later panels will insert.  Old slots were
// opened by right letters of the previous panel; the k-th left letter of
// the current panel continues at the k-th old slot.

constexpr char kOldSlot = 'O';
constexpr char kNewSlot = 'N';

struct Reassembly {
  bool started = false;   // some # has been read
  bool boundary = true;   // last symbol was # (or nothing read)
  bool done = false;      // the closing factor has been written
  std::uint8_t cursor = 0;
  std::uint8_t placed = 0;  // marked letters so far
  std::string counts;     // marked letters per value in the current panel
  std::string tokens;     // letters as '0'+rel, slots as O/N

  std::string key() const {
    std::string k;
    k += char(started | boundary << 1 | done << 2);
    k += char(cursor);
    k += char(placed);
    k += counts;
    k += '|';
    k += tokens;
    return k;
  }
  static Reassembly parse(const std::string& k, int c) {
    Reassembly r;
    r.started = k[0] & 1;
    r.boundary = k[0] & 2;
    r.done = k[0] & 4;
    r.cursor = static_cast<std::uint8_t>(k[1]);
    r.placed = static_cast<std::uint8_t>(k[2]);
    r.counts = k.substr(3, c - 1);
    r.tokens = k.substr(3 + c - 1 + 1);
    return r;
  }
};

// Factor for the current panel: rel 0 is the lower letter, rel 1 the upper.
Word closing_factor(const std::string& tokens) {
  Word out;
  for (char t : tokens) {
    if (t == '0') out.push_back(kO);
    if (t == '1') out.push_back(kStar);
  }
  out.push_back(kHash);
  return out;
}

}  // namespace

namespace {

// Least reordering of tokens that keeps every dependent pair in order.
template <class Independent>
std::string least_linearization(const std::string& tokens, Independent independent) {
  std::string out;
  std::vector<bool> used(tokens.size(), false);
  for (std::size_t n = 0; n < tokens.size(); ++n) {
    std::size_t best = tokens.size();
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (used[i]) continue;
      bool free = true;
      for (std::size_t j = 0; j < i && free; ++j) free = used[j] || independent(tokens[j], tokens[i]);
      if (free && (best == tokens.size() || tokens[i] < tokens[best])) best = i;
    }
    used[best] = true;
    out += tokens[best];
  }
  return out;
}

// Reorders tokens with the cursor held in place by a mark '^'.
template <class Independent>
void canonicalize(Reassembly& r, Independent independent) {
  r.tokens.insert(r.tokens.begin() + r.cursor, '^');
  r.tokens = least_linearization(r.tokens, independent);
  const auto mark = r.tokens.find('^');
  r.tokens.erase(mark, 1);
  r.cursor = static_cast<std::uint8_t>(mark);
}

// Ends the current panel: returns its factor and shifts the state to the
// next panel, or nullopt if a right letter of the previous panel went
// unmatched.
std::optional<Word> close_panel(Reassembly& r, int c) {
  if (r.tokens.find(kOldSlot) != std::string::npos) return std::nullopt;
  Word w = closing_factor(r.tokens);
  std::string next;
  for (char t : r.tokens) {
    if (t == kNewSlot) next += kOldSlot;
    else if (t > '0') next += char(t - 1);
  }
  r.tokens = next;
  r.started = true;
  r.boundary = true;
  r.cursor = 0;
  r.counts.assign(c - 1, '\0');
  return w;
}

// Reads one letter; token is the character to store for it, or 0.
bool place(Reassembly& r, const DecoratedLetter& l, char token, int c) {
  r.boundary = false;
  if (l.left) {
    const auto slot = r.tokens.find(kOldSlot);
    if (slot == std::string::npos) return false;
    r.tokens.erase(slot, 1);
    r.cursor = static_cast<std::uint8_t>(slot);
  }
  if (token) {
    r.tokens.insert(r.tokens.begin() + r.cursor, token);
    ++r.cursor;
  }
  if (l.right) {
    if (std::count(r.tokens.begin(), r.tokens.end(), kNewSlot) >= c - 1) return false;
    r.tokens.insert(r.tokens.begin() + r.cursor, kNewSlot);
    ++r.cursor;
  }
  return true;
}

void flush(const Reassembly& r, int c, std::vector<KeyedTransducer<std::string>::KeyMove>& out) {
  if (!r.started || !r.boundary || r.tokens.find(kOldSlot) != std::string::npos) return;
  Reassembly f;
  f.done = true;
  f.started = true;
  f.counts.assign(c - 1, '\0');
  out.push_back({closing_factor(r.tokens), f.key()});
}

bool reassembly_accepts(const std::string& key, int c) {
  Reassembly r = Reassembly::parse(key, c);
  return r.done || !r.started;
}

}  // namespace

// Letters whose values differ by two or more never share a factor.
bool plain_independent(char a, char b) {
  auto letter = [](char t) { return t >= '0' && t <= '9'; };
  return letter(a) && letter(b) && std::abs(a - b) >= 2;
}

LazyTransducerPtr transducer_panel_to_domino(int c, int k, std::optional<int> total) {
  if (k < 1) throw std::invalid_argument("panel_to_domino: k must be positive");
  auto codec = std::make_shared<PanelCodec>(c);
  Reassembly init;
  init.counts.assign(c - 1, '\0');
  const int cap = total ? *total : -1;
  using T = KeyedTransducer<std::string>;
  return std::make_shared<T>(
      codec->marked(), domino_alphabet(), init.key(),
      [codec, c, k, cap](const std::string& key, Symbol s, std::vector<T::KeyMove>& out) {
        Reassembly r = Reassembly::parse(key, c);
        if (r.done) return;
        if (s == kEpsilon) return flush(r, c, out);
        const PanelSymbol d = codec->decode(s);
        const bool frozen = r.placed == cap;
        if (d.hash) {
          if (auto w = close_panel(r, c)) {
            r.tokens = least_linearization(r.tokens, plain_independent);
            out.push_back({*w, r.key()});
          }
          return;
        }
        const DecoratedLetter& l = d.letter;
        if (frozen) {
          // Slots only position later marked letters; none remain.
          if (d.marked) return;
          r.boundary = false;
          out.push_back({{}, r.key()});
          return;
        }
        if (d.marked) {
          // Under a total cap of at most k the per-value count cannot trip.
          if (cap < 0 || cap > k) {
            if (++r.counts[l.value - 1] > k) return;
          }
          ++r.placed;
        }
        if (!place(r, l, d.marked ? char('0' + l.value) : 0, c)) return;
        if (r.placed == cap) {
          std::erase_if(r.tokens, [](char t) { return t == kOldSlot || t == kNewSlot; });
          r.cursor = 0;
        }
        canonicalize(r, plain_independent);
        out.push_back({{}, r.key()});
      },
      [c](const std::string& key) { return reassembly_accepts(key, c); });
}

namespace {

// Extremes tokens: the value in the low bits of a role letter, '0'+v for a
// value seen once, 'a'+v for the leftmost and 'k'+v for the rightmost.
bool ex_letter(char t) { return (t >= '0' && t <= '9') || (t >= 'a' && t <= 't'); }
int ex_value(char t) { return t <= '9' ? t - '0' : t < 'k' ? t - 'a' : t - 'k'; }
bool ex_first(char t) { return t <= '9' || t < 'k'; }
char ex_token(int v, char role) { return char(role + v); }
char ex_role(char t) { return t <= '9' ? '0' : t < 'k' ? 'a' : 'k'; }

// Greedy domino words only compare the leftmost i+1 with the leftmost and
// rightmost i, so two letters commute unless they share a value or the
// larger one is a leftmost.  Slots and the cursor mark '^' commute with
// nothing.  Returns the least reordering.
bool ex_independent(char a, char b) {
  if (!ex_letter(a) || !ex_letter(b)) return false;
  const int va = ex_value(a), vb = ex_value(b);
  if (std::abs(va - vb) >= 2) return true;
  if (va == vb) return false;
  return !ex_first(va > vb ? a : b);
}

Word ex_factor(const std::string& tokens, bool satisfied) {
  Word out;
  for (char t : tokens) {
    if (!ex_letter(t)) continue;
    if (ex_value(t) == 0) out.push_back(kO);
    if (ex_value(t) == 1) out.push_back(kStar);
  }
  if (satisfied) out.insert(out.end(), {kStar, kO});
  out.push_back(kHash);
  return out;
}

}  // namespace

LazyTransducerPtr transducer_extremes_to_domino(int c) {
  if (c > 10) throw DomainError("extremes_to_domino: c must be at most 10");
  auto codec = std::make_shared<PanelCodec>(c);
  Reassembly init;
  init.counts.assign(c - 1, '\0');
  using T = KeyedTransducer<std::string>;
  return std::make_shared<T>(
      codec->plain(), domino_alphabet(), init.key(),
      [codec, c](const std::string& key, Symbol s, std::vector<T::KeyMove>& out) {
        Reassembly r = Reassembly::parse(key, c);
        if (r.done) return;
        const bool has_old = r.tokens.find(kOldSlot) != std::string::npos;
        if (s == kEpsilon) {
          if (!r.started || !r.boundary || has_old) return;
          Reassembly f;
          f.done = true;
          f.started = true;
          f.counts.assign(c - 1, '\0');
          out.push_back({ex_factor(r.tokens, r.counts[0]), f.key()});
          return;
        }
        const PanelSymbol d = codec->decode(s);
        // counts[v] is set once some v+1 precedes the rightmost v; that
        // stays true, so the rightmost v is no longer tracked.
        std::string& sat = r.counts;
        if (d.hash) {
          if (has_old) return;
          Word w = ex_factor(r.tokens, sat[0]);
          std::string next;
          for (char t : r.tokens) {
            if (t == kNewSlot) next += kOldSlot;
            else if (!ex_letter(t)) next += t;
            else if (ex_value(t) > 0) next += ex_token(ex_value(t) - 1, ex_role(t));
          }
          r.tokens = least_linearization(next, ex_independent);
          sat = sat.substr(1) + '\0';
          r.started = true;
          r.boundary = true;
          r.cursor = 0;
          out.push_back({w, r.key()});
          return;
        }
        const int v = d.letter.value;
        if (!place(r, d.letter, ex_token(v, '0'), c)) return;
        auto erase = [&r](std::size_t i) {
          r.tokens.erase(i, 1);
          if (i < r.cursor) --r.cursor;
        };
        auto positions = [&r](int value) {
          std::vector<std::size_t> at;
          for (std::size_t i = 0; i < r.tokens.size(); ++i) {
            if (ex_letter(r.tokens[i]) && ex_value(r.tokens[i]) == value) at.push_back(i);
          }
          return at;
        };
        auto at = positions(v);
        if (at.size() == 3) {
          erase(at[1]);
          at = {at[0], at[2] - 1};
        }
        if (at.size() == 2) {
          r.tokens[at[0]] = ex_token(v, 'a');
          r.tokens[at[1]] = ex_token(v, 'k');
        }
        for (int u = 0; u + 1 < c; ++u) {
          const auto lo = positions(u);
          if (lo.empty()) continue;
          if (sat[u]) {
            if (lo.size() == 2) erase(lo[1]);
            r.tokens[lo[0]] = ex_token(u, 'a');
            continue;
          }
          const auto hi = positions(u + 1);
          if (!hi.empty() && hi.front() < lo.back()) {
            sat[u] = 1;
            --u;  // revisit to drop the rightmost u
          }
        }
        canonicalize(r, ex_independent);
        out.push_back({{}, r.key()});
      },
      [c](const std::string& key) { return reassembly_accepts(key, c); });
}

namespace {

// ---------------------------------------------------------------------------
// Window variant.  A stripped panel keeps the marked or decorated letters.

struct Stripped {
  DecoratedLetter letter;
  bool marked = false;
};
using StrippedPanel = std::vector<Stripped>;

std::string serialize(const StrippedPanel& p) {
  std::string s;
  for (const Stripped& x : p) {
    s += char('0' + x.letter.value);
    s += char(x.letter.left | x.letter.right << 1 | x.marked << 2);
  }
  return s;
}

StrippedPanel deserialize(const std::string& s) {
  StrippedPanel p;
  for (std::size_t i = 0; i + 1 < s.size(); i += 2) {
    p.push_back({{s[i] - '0', bool(s[i + 1] & 1), bool(s[i + 1] & 2)}, bool(s[i + 1] & 4)});
  }
  return p;
}

// Split inverse on stripped words; nullopt when right(p) != left(r).
std::optional<StrippedPanel> join(const StrippedPanel& p, const StrippedPanel& r) {
  std::vector<StrippedPanel> s(1);
  std::vector<Stripped> lefts;
  for (const Stripped& x : r) {
    if (x.letter.left) {
      lefts.push_back(x);
      s.emplace_back();
    } else {
      s.back().push_back(x);
    }
  }
  const auto rights = std::count_if(p.begin(), p.end(), [](const Stripped& x) { return x.letter.right; });
  if (static_cast<std::size_t>(rights) != lefts.size()) return std::nullopt;
  StrippedPanel out;
  auto shifted = [&](const StrippedPanel& f) {
    for (Stripped x : f) {
      ++x.letter.value;
      out.push_back(x);
    }
  };
  shifted(s[0]);
  std::size_t next = 0;
  for (Stripped x : p) {
    const bool right = x.letter.right;
    x.letter.right = false;
    out.push_back(x);
    if (!right) continue;
    out.push_back({{2, false, false}, lefts[next].marked});
    shifted(s[++next]);
  }
  return out;
}

// window[0..c-1], oldest first; the newest panel's right letters lose
// their right decoration since nothing is inserted after them yet.
std::optional<Word> window_factor(std::vector<StrippedPanel> window, int c) {
  StrippedPanel r = window.back();
  for (Stripped& x : r) x.letter.right = false;
  for (int j = c - 2; j >= 0; --j) {
    auto joined = join(window[j], r);
    if (!joined) return std::nullopt;
    r = std::move(*joined);
  }
  Word out;
  for (const Stripped& x : r) {
    if (!x.marked) continue;
    if (x.letter.value == c - 1) out.push_back(kO);
    if (x.letter.value == c) out.push_back(kStar);
  }
  out.push_back(kHash);
  return out;
}

}  // namespace

LazyTransducerPtr transducer_panel_to_domino_window(int c, int k) {
  if (k < 1) throw std::invalid_argument("panel_to_domino: k must be positive");
  auto codec = std::make_shared<PanelCodec>(c);
  // Key: flags, then c-1 completed panels and the current one, '/' separated.
  auto split_key = [c](const std::string& key) {
    std::vector<std::string> parts;
    std::string cur;
    for (std::size_t i = 1; i < key.size(); ++i) {
      if (key[i] == '/') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += key[i];
      }
    }
    parts.push_back(cur);
    if (static_cast<int>(parts.size()) != c) throw std::logic_error("window key");
    return parts;
  };
  auto join_key = [](char flags, const std::vector<std::string>& parts) {
    std::string k(1, flags);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) k += '/';
      k += parts[i];
    }
    return k;
  };
  // flags: 1 started, 2 boundary, 4 done
  const std::string init = join_key(2, std::vector<std::string>(c));
  using T = KeyedTransducer<std::string>;
  return std::make_shared<T>(
      codec->marked(), domino_alphabet(), init,
      [=](const std::string& key, Symbol s, std::vector<T::KeyMove>& out) {
        const char flags = key[0];
        if (flags & 4) return;
        auto parts = split_key(key);
        auto window = [&](const std::vector<std::string>& ps) {
          std::vector<StrippedPanel> w;
          for (const auto& p : ps) w.push_back(deserialize(p));
          return w;
        };
        if (s == kEpsilon) {
          if (!(flags & 1) || !(flags & 2)) return;
          // Closing factor: the current panel is empty.
          auto f = window_factor(window(parts), c);
          if (!f) return;
          const auto last = deserialize(parts[c - 2]);
          if (std::any_of(last.begin(), last.end(), [](const Stripped& x) { return x.letter.right; })) return;
          out.push_back({*f, join_key(4 | 1, std::vector<std::string>(c))});
          return;
        }
        const PanelSymbol d = codec->decode(s);
        if (d.hash) {
          auto f = window_factor(window(parts), c);
          if (!f) return;
          std::vector<std::string> ps(parts.begin() + 1, parts.end());
          ps.push_back("");
          out.push_back({*f, join_key(1 | 2, ps)});
          return;
        }
        StrippedPanel cur = deserialize(parts.back());
        if (d.marked) {
          int same = 0;
          for (const Stripped& x : cur) same += x.marked && x.letter.value == d.letter.value;
          if (same >= k) return;
        }
        if (d.letter.left || d.letter.right || d.marked) cur.push_back({d.letter, d.marked});
        parts.back() = serialize(cur);
        out.push_back({{}, join_key(flags & 1, parts)});
      },
      [](const std::string& key) { return (key[0] & 4) || !(key[0] & 1); });
}

// ---------------------------------------------------------------------------
// Domino to Dyck.

std::string dyck_segment(const std::string& x, const std::string& y, const std::string& z) {
  // Lower row: x in value order (o = cell 2i-1, * = cell 2i); upper row:
  // z (o = cell 2i+1, * = cell 2i+2).  Column i is y in position order
  // (o = cell 2i, * = cell 2i+1).
  std::vector<int> lower_b, upper_c;
  for (int t = 0; t < static_cast<int>(x.size()); ++t) {
    if (x[t] == '*') lower_b.push_back(t);
  }
  for (int t = 0; t < static_cast<int>(z.size()); ++t) {
    if (z[t] == 'o') upper_c.push_back(static_cast<int>(x.size()) + t);
  }
  int top = -1;
  const auto last_a = x.rfind('o');
  if (last_a != std::string::npos) top = static_cast<int>(last_a);
  int raised = top;
  std::size_t nb = 0, nc = 0;
  std::string out;
  for (char e : y) {
    const int g = e == 'o' ? lower_b.at(nb++) : upper_c.at(nc++);
    top = std::max(top, g);
    for (; raised < top; ++raised) out += 'u';
    out += 'd';
  }
  return out;
}

namespace {

struct DyckReader {
  std::string x, y, cur;
  int completed = 0;  // factors read; 2 and 3 stand for any larger even or odd count
  bool done = false;

  std::string key() const {
    return std::string(1, char(done)) + char(completed) + x + '|' + y + '|' + cur;
  }
  static DyckReader parse(const std::string& k) {
    DyckReader r;
    r.done = k[0];
    r.completed = k[1];
    const auto a = k.find('|', 2), b = k.find('|', a + 1);
    r.x = k.substr(2, a - 2);
    r.y = k.substr(a + 1, b - a - 1);
    r.cur = k.substr(b + 1);
    return r;
  }
};

int count_of(const std::string& s, char ch) { return static_cast<int>(std::count(s.begin(), s.end(), ch)); }

Word to_dyck(const std::string& seg) {
  Word w;
  for (char ch : seg) w.push_back(ch == 'u' ? 0 : 1);
  return w;
}

}  // namespace

LazyTransducerPtr transducer_domino_to_dyck(int k) {
  if (k < 1) throw std::invalid_argument("domino_to_dyck: k must be positive");
  using T = KeyedTransducer<std::string>;
  return std::make_shared<T>(
      domino_alphabet(), dyck_alphabet(), DyckReader{}.key(),
      [k](const std::string& key, Symbol s, std::vector<T::KeyMove>& out) {
        DyckReader r = DyckReader::parse(key);
        if (r.done) return;
        // Cell counts must agree between neighbouring factors.
        const std::string& prev = r.completed % 2 ? r.y : r.x;
        const bool have_prev = r.completed > 0;
        if (s == kEpsilon) {
          if (!r.cur.empty() || r.completed % 2 == 0) return;
          if (count_of(r.y, '*') != 0) return;
          DyckReader f;
          f.done = true;
          out.push_back({to_dyck(dyck_segment(r.x, r.y, "")), f.key()});
          return;
        }
        if (s != kHash) {
          r.cur += s == kO ? 'o' : '*';
          if (count_of(r.cur, 'o') > k || count_of(r.cur, '*') > k) return;
          out.push_back({{}, r.key()});
          return;
        }
        if (r.completed == 0 && count_of(r.cur, 'o') != 0) return;
        if (have_prev && count_of(prev, '*') != count_of(r.cur, 'o')) return;
        Word w;
        if (r.completed % 2 == 0) {
          r.y = r.cur;
        } else {
          w = to_dyck(dyck_segment(r.x, r.y, r.cur));
          r.x = r.cur;
          r.y.clear();
        }
        r.cur.clear();
        if (++r.completed > 3) r.completed -= 2;
        out.push_back({w, r.key()});
      },
      [](const std::string& key) {
        DyckReader r = DyckReader::parse(key);
        if (r.done) return true;
        if (!r.cur.empty()) return false;
        if (r.completed == 0) return true;
        return r.completed % 2 == 0 && count_of(r.x, '*') == 0;
      });
}

// ---------------------------------------------------------------------------

Automaton automaton_greedy_domino() {
  // Key: index of the current factor (capped at 2), letters read in it,
  // first letter was o, "*o" seen, "*" seen, previous factor lacked "*o".
  struct K {
    int idx = 0;
    bool any = false, first_o = false, star_o = false, star = false, pending = false;
  };
  auto pack = [](const K& k) {
    return k.idx | k.any << 2 | k.first_o << 3 | k.star_o << 4 | k.star << 5 | k.pending << 6;
  };
  auto unpack = [](int v) {
    K k;
    k.idx = v & 3;
    k.any = v >> 2 & 1;
    k.first_o = v >> 3 & 1;
    k.star_o = v >> 4 & 1;
    k.star = v >> 5 & 1;
    k.pending = v >> 6 & 1;
    return k;
  };
  KeyedDfa<int> dfa(
      domino_alphabet(), 0,
      [&](const int& v, Symbol s) -> std::optional<int> {
        K k = unpack(v);
        if (!k.any && k.pending) return std::nullopt;  // the factor lacking *o was not the last
        if (s == kHash) {
          if (k.idx >= 2 && !k.any) return std::nullopt;
          K n;
          n.idx = std::min(k.idx + 1, 2);
          n.pending = k.idx >= 1 && !k.star_o;
          return pack(n);
        }
        if (k.idx >= 2 && !k.any && s != kO) return std::nullopt;
        k.first_o = k.any ? k.first_o : s == kO;
        k.any = true;
        if (s == kO && k.star) k.star_o = true;
        if (s == kStar) k.star = true;
        k.pending = false;
        return pack(k);
      },
      [&](const int& v) {
        K k = unpack(v);
        return !k.any && (v == 0 || k.idx >= 2);
      });
  return minimize(materialize(dfa));
}

}  // namespace stair
