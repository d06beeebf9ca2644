#include "stair/verify.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "stair/encode.hpp"
#include "stair/genfunc.hpp"
#include "stair/gridding.hpp"
#include "stair/lang.hpp"
#include "stair/panel.hpp"

namespace stair {

namespace {

template <class T>
std::shared_ptr<const T> share(T a) {
  return std::make_shared<const T>(std::move(a));
}

const Permutation k321({3, 2, 1});

struct Recorder {
  SuiteResult& r;
  void check(bool ok, const std::function<std::string()>& what) {
    ++r.checked;
    if (!ok && r.pass) {
      r.pass = false;
      r.detail = what();
    }
  }
};

std::vector<Permutation> av321(int n) { return enumerate_av({k321}, n); }

mpz_class catalan(int n) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), 2 * n, n);
  return b / (n + 1);
}

Word marked_all(const PanelCodec& codec, const Word& w) {
  Word out;
  for (Symbol s : w) out.push_back(codec.mark(s));
  return out;
}

// Every SAC word of length <= max_len over 1..max_letter, including the empty word.
void for_each_sac(int max_len, int max_letter, const std::function<void(const PosWord&)>& visit) {
  PosWord w;
  std::function<void()> rec = [&] {
    visit(w);
    if (static_cast<int>(w.size()) == max_len) return;
    const int top = w.empty() ? max_letter : std::min(max_letter, w.back() + 1);
    for (int v = 1; v <= top; ++v) {
      w.push_back(v);
      rec();
      w.pop_back();
    }
  };
  rec();
}

void check_roundtrip(Recorder& rec, const PosWord& w, int c) {
  rec.check(eta_inverse(eta(w, c), c) == w, [&] { return "eta round trip fails on " + format_word(w); });
  RemainderWord r = undecorated_letters(w);
  for (int i = 0; i < max_letter(w); ++i) {
    auto [p, rest] = split(r, c);
    rec.check(split_inverse(p, rest) == r, [&] { return "split inverse fails inside " + format_word(w); });
    r = std::move(rest);
  }
}

void suite_roundtrip(SuiteResult& res, const SuiteOptions& o) {
  Recorder rec{res};
  const int n = o.max_n.value_or(8);
  std::vector<int> cs = o.c ? std::vector<int>{*o.c} : std::vector<int>{2, 3, 4};
  for (int c : cs) {
    for_each_sac(n, 8, [&](const PosWord& w) {
      if (in_Lc_infinity(w, c)) check_roundtrip(rec, w, c);
    });
    // Longer random SAC walks.
    std::mt19937_64 rng(o.seed + c);
    for (int trial = 0; trial < 300; ++trial) {
      PosWord w{1 + static_cast<int>(rng() % 8)};
      const int len = n + 1 + static_cast<int>(rng() % 8);
      while (static_cast<int>(w.size()) < len) w.push_back(1 + static_cast<int>(rng() % std::min(8, w.back() + 1)));
      if (in_Lc_infinity(w, c)) check_roundtrip(rec, w, c);
    }
  }
  if (res.pass) res.detail = "eta and split round trips on SAC words, letters <= 8";
}

void suite_catalan(SuiteResult& res, const SuiteOptions& o) {
  Recorder rec{res};
  const int max_n = o.max_n.value_or(9);
  std::ostringstream counts;
  for (int n = 1; n <= max_n; ++n) {
    const int c = n + 1;
    PanelCodec codec(c);
    auto g = lazy_Gc_eta(c);
    const mpz_class got = lazy_count_by_weight(*g, panel_weights(c), n, n + 2)[n];
    std::set<PosWord> greedy;
    for (const auto& pi : av321(n)) greedy.insert(omnibus(greedy_gridding(pi)));
    rec.check(got == catalan(n), [&] { return "G count " + got.get_str() + " at n = " + std::to_string(n); });
    rec.check(greedy.size() == catalan(n), [&] { return "greedy enumeration miscounts at n = " + std::to_string(n); });
    counts << (n > 1 ? "," : "") << got.get_str();
  }
  if (res.pass) res.detail = "counts " + counts.str();
}

void suite_greedy(SuiteResult& res, const SuiteOptions& o) {
  Recorder rec{res};
  const int max_n = o.max_n.value_or(7);
  std::vector<int> cs = o.c ? std::vector<int>{*o.c} : std::vector<int>{2, 3};
  for (int c : cs) {
    PanelCodec codec(c);
    const Automaton g = automaton_Gc_eta(c);
    for (int n = 0; n <= max_n; ++n) {
      for (const auto& pi : av321(n)) {
        const auto greedy = greedy_gridding(pi);
        for (const auto& grid : all_staircase_griddings(pi, 2 * n)) {
          const PosWord w = omnibus(grid);
          if (!in_Lc_infinity(w, c)) continue;
          rec.check(accepts(g, codec.word(eta(w, c))) == (grid == greedy),
                    [&] { return "c = " + std::to_string(c) + ", gridding " + render_gridding(grid); });
        }
      }
    }
  }
  if (res.pass) res.detail = std::to_string(res.checked) + " griddings";
}

void suite_dyck(SuiteResult& res, const SuiteOptions& o) {
  Recorder rec{res};
  const int max_n = o.max_n.value_or(7);
  rec.check(dyck_encode(Permutation({3, 1, 5, 6, 2, 4, 8, 7})) == "uuudduududdduudd", [] { return "dyck_encode(31562487)"; });
  rec.check(dyck_segment("*oo***", "oo**o*o", "oo**o") == "duduuududduuudd", [] { return "segment of the reference triple"; });
  auto d2d = transducer_domino_to_dyck(max_n);
  const int c = o.c.value_or(3);
  PanelCodec codec(c);
  auto panels = lazy_compose(transducer_panel_to_domino(c, max_n), transducer_domino_to_dyck(max_n));
  for (int n = 1; n <= max_n; ++n) {
    for (const auto& pi : av321(n)) {
      const PosWord w = omnibus(greedy_gridding(pi));
      const auto out = stair::apply(*d2d, domino_word(domino_encoding(w)));
      rec.check(out.size() == 1 && dyck_string(*out.begin()) == dyck_encode(pi),
                [&] { return "domino to Dyck on " + pi.str(); });
      if (!in_Lc_infinity(w, c)) continue;
      const auto full = stair::apply(*panels, marked_all(codec, codec.word(eta(w, c))));
      rec.check(full.size() == 1 && dyck_string(*full.begin()) == dyck_encode(pi),
                [&] { return "panel to Dyck on " + pi.str(); });
    }
  }
  if (res.pass) res.detail = std::to_string(res.checked) + " checks";
}

void suite_u(SuiteResult& res, const SuiteOptions& o) {
  Recorder rec{res};
  const int max_n = o.max_n.value_or(14);
  for (const char* s : {"2 3 5 1 7 4 9 6 10 11 8", "4 1 2 6 3 8 5 11 7 9 10", "2 3 5 1 7 4 10 6 8 9",
                        "4 1 2 6 3 8 5 9 10 7"}) {
    rec.check(is_double_ended_fork(inversion_graph(parse_permutation(s))), [&] { return std::string("not a fork: ") + s; });
  }
  std::vector<Permutation> all;
  for (int n = 1; n <= max_n; ++n) {
    for (const auto& mu : u_members(n)) all.push_back(mu);
  }
  for (const auto& a : all) {
    rec.check(!contains(a, k321), [&] { return a.str() + " contains 321"; });
    for (const auto& b : all) {
      if (a.size() < b.size() || a == b) continue;
      rec.check(!contains(a, b), [&] { return a.str() + " contains " + b.str(); });
    }
  }
  const Automaton u = automaton_U_dyck(1, 16);
  const auto words = accepted_words(u, 32);
  for (int n = 6; n <= 16; ++n) {
    std::set<Word> expect, got;
    for (const auto& mu : u_members(n)) expect.insert(dyck_word(dyck_encode(mu)));
    for (const Word& w : words) {
      if (w.size() == static_cast<std::size_t>(2 * n)) got.insert(w);
    }
    rec.check(got == expect, [&] { return "U Dyck language differs at n = " + std::to_string(n); });
  }
  if (res.pass) res.detail = std::to_string(all.size()) + " members up to n = " + std::to_string(max_n);
}

void suite_wq(SuiteResult& res, const SuiteOptions& o) {
  Recorder rec{res};
  const int max_n = o.max_n.value_or(7);
  const int c = o.c.value_or(3);
  const std::vector<int> qs = o.q.empty() ? std::vector<int>{10, 11} : o.q;
  PanelCodec codec(c);
  std::vector<std::vector<Permutation>> members(max_n + 1);
  for (int m = 1; m <= max_n; ++m) members[m] = u_members(m);
  for (int q : qs) {
    auto w = lazy_Wq(c, q);
    for (int n = 0; n <= max_n; ++n) {
      for (const auto& pi : av321(n)) {
        bool expect = true;
        for (int m = q; m <= n; ++m) {
          for (const auto& mu : members[m]) expect = expect && !contains(pi, mu);
        }
        const PosWord word = omnibus(greedy_gridding(pi));
        if (!in_Lc_infinity(word, c)) continue;
        rec.check(lazy_accepts(*w, codec.word(eta(word, c))) == expect,
                  [&] { return "q = " + std::to_string(q) + ", " + pi.str(); });
      }
    }
  }
  if (res.pass) res.detail = std::to_string(res.checked) + " memberships, c = " + std::to_string(c);
}

void suite_classes(SuiteResult& res, const SuiteOptions& o) {
  Recorder rec{res};
  const int max_n = o.max_n.value_or(9);
  std::vector<std::vector<Permutation>> bases = o.bases;
  if (bases.empty()) {
    for (const char* b : {"312", "231", "2143", "3142", "123"}) bases.push_back(parse_basis(b));
  }
  std::ostringstream summary;
  for (const auto& basis : bases) {
    const RationalFunction f = gf_class(basis, std::nullopt, o.c);
    const auto series = series_coefficients(f, max_n);
    auto full = basis;
    full.push_back(k321);
    std::string name;
    for (const auto& b : basis) name += (name.empty() ? "" : ";") + b.str();
    for (int n = 0; n <= max_n; ++n) {
      const std::size_t expect = enumerate_av(full, n).size();
      rec.check(series[n] == mpq_class(static_cast<unsigned long>(expect)),
                [&] { return "basis " + name + ", n = " + std::to_string(n); });
    }
    summary << (summary.tellp() ? "; " : "") << name << ": " << f.str();
  }
  if (res.pass) res.detail = summary.str();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"roundtrip", "catalan", "greedy", "dyck", "u", "wq", "classes"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  static const std::map<std::string, void (*)(SuiteResult&, const SuiteOptions&)> suites{
      {"roundtrip", suite_roundtrip}, {"catalan", suite_catalan}, {"greedy", suite_greedy}, {"dyck", suite_dyck},
      {"u", suite_u},                 {"wq", suite_wq},           {"classes", suite_classes}};
  auto it = suites.find(name);
  if (it == suites.end()) throw std::invalid_argument("unknown suite '" + name + "'");
  SuiteResult res;
  res.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  it->second(res, options);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace stair
