#ifndef STAIR_LANG_HPP
#define STAIR_LANG_HPP

#include <optional>
#include <string>
#include <vector>

#include "stair/fsm.hpp"
#include "stair/panel.hpp"
#include "stair/perm.hpp"

namespace stair {

// Symbol layout for the panel alphabet of a given c:
//   0..c-2   the values 1..c-1
//   c-1      1<
//   c        1>
//   c+1      1<>
//   c+2      #
// The marked alphabet appends a primed copy of every letter except #, in
// the same order, so symbol s and s + (c+3) are the plain and marked forms.
struct PanelSymbol {
  bool hash = false;
  DecoratedLetter letter;
  bool marked = false;
};

class PanelCodec {
 public:
  explicit PanelCodec(int c);

  int c() const { return c_; }
  const AlphabetPtr& plain() const { return plain_; }
  const AlphabetPtr& marked() const { return marked_; }
  Symbol hash() const { return c_ + 2; }
  int letters() const { return c_ + 2; }  // non-# symbols per copy

  Symbol symbol(const DecoratedLetter& l, bool marked = false) const;
  PanelSymbol decode(Symbol s) const;  // valid for either alphabet
  Symbol mark(Symbol s) const { return s == hash() ? s : (s >= letters() + 1 ? s : s + letters() + 1); }

  Word word(const PanelEncoding& e) const;
  PanelEncoding encoding(const Word& w) const;

 private:
  int c_;
  AlphabetPtr plain_, marked_;
};

AlphabetPtr domino_alphabet();  // o, *, #
AlphabetPtr dyck_alphabet();    // u, d
Word domino_word(const std::string& ascii);
std::string domino_string(const Word& w);
Word dyck_word(const std::string& ud);
std::string dyck_string(const Word& w);

// (P1)-(P5) over the panel alphabet (the # symbol is never read).
Automaton automaton_Pc(int c);
// (L1)-(L4).
Automaton automaton_Lc_eta(int c);
// Pieces of the (L1)-(L4) construction, exposed for testing.
Automaton automaton_L2_violation(int c);
Automaton automaton_L34_reversed(int c);
Automaton automaton_L34_forward(int c);

// Marks the first and last occurrence of each value in each panel word.
Transducer transducer_mark_first_last(int c);
// Marks exactly k letters other than punctuation.  Output alphabet is the
// input names followed by primed copies of the non-punctuation names.
Transducer transducer_mark_exactly_k(const AlphabetPtr& alphabet, int k, const std::vector<std::string>& punctuation = {"#"});
// Marks at most `per_value` letters of each value in each panel word.
LazyTransducerPtr transducer_mark_bounded(int c, int per_value);

// Marked panel words to the domino encoding of the marked letters.  At most
// k marked letters of any one value per panel.  With `total`, at most that
// many marked letters overall, and once they are all read the decorations
// are no longer checked (the output is unchanged on words of L_c^eta).
LazyTransducerPtr transducer_panel_to_domino(int c, int k, std::optional<int> total = std::nullopt);
// Deterministic: the domino encoding of the subword formed by the leftmost
// and rightmost letter of each value.  Its output lies in the greedy domino
// language exactly when that of mark_first_last then panel_to_domino does.
LazyTransducerPtr transducer_extremes_to_domino(int c);
// The sliding-window variant: each domino factor is computed from the
// stripped panels of a window of c panels by a chain of split inverses.
LazyTransducerPtr transducer_panel_to_domino_window(int c, int k);
// Domino words to Dyck paths, at most k entries per cell.
LazyTransducerPtr transducer_domino_to_dyck(int k);

// One Dyck segment from the triple (d_{2i-1}, d_{2i}, d_{2i+1}) in ASCII.
std::string dyck_segment(const std::string& x, const std::string& y, const std::string& z);

// Domino words of greedy griddings: d_i nonempty beginning with o for
// 2 <= i <= m, and d_i containing the subword *o for 1 <= i <= m-1.
Automaton automaton_greedy_domino();

LazyPtr lazy_Gc_eta(int c);
Automaton automaton_Gc_eta(int c);

LazyPtr lazy_Gc_geq_beta(int c, const Permutation& beta);
Automaton automaton_Gc_geq_beta(int c, const Permutation& beta);

// Dyck words of U members of length >= q, inferred from u_members and
// checked against it for lengths up to verify_up_to.
Automaton automaton_U_dyck(int q, int verify_up_to = 16);

LazyPtr lazy_Wq(int c, int q);
// Materialized W_q.  The marking bound makes this very large; it throws
// DomainError once max_states is exceeded.  Membership should use lazy_Wq.
Automaton automaton_Wq(int c, int q, std::size_t max_states = 2'000'000);

// Class Av(321, basis), optionally intersected with W_q.  c defaults to
// 1 + the shortest basis length.
LazyPtr lazy_class(const std::vector<Permutation>& basis, std::optional<int> q = std::nullopt,
                   std::optional<int> c = std::nullopt);
Automaton automaton_class(const std::vector<Permutation>& basis, std::optional<int> q = std::nullopt,
                          std::optional<int> c = std::nullopt, std::size_t max_states = 5'000'000);

int default_c(const std::vector<Permutation>& basis);

// Panel encoding of the greedy gridding of pi.
PanelEncoding greedy_panel_encoding(const Permutation& pi, int c);
// Inverse of the above.
Permutation permutation_of_encoding(const PanelEncoding& e);

}  // namespace stair

#endif  // STAIR_LANG_HPP
