#include "stair/genfunc.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "stair/error.hpp"
#include "stair/lang.hpp"

namespace stair {

Polynomial::Polynomial(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  strip();
}

Polynomial Polynomial::constant(const mpq_class& c) { return Polynomial({c}); }
Polynomial Polynomial::x() { return Polynomial({0, 1}); }

void Polynomial::strip() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpq_class Polynomial::operator[](int i) const {
  return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : mpq_class(0);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<mpq_class> r(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * mpq_class(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpq_class> r(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(const mpq_class& c) const {
  std::vector<mpq_class> r = coeffs_;
  for (auto& v : r) v *= c;
  return Polynomial(std::move(r));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<mpq_class> rem = coeffs_;
  const int dd = d.degree();
  std::vector<mpq_class> q(std::max(0, degree() - dd + 1));
  for (int i = degree(); i >= dd; --i) {
    if (rem[i] == 0) continue;
    const mpq_class f = rem[i] / d.coeffs_[dd];
    q[i - dd] = f;
    for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d.coeffs_[j];
  }
  return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
}

mpq_class Polynomial::operator()(const mpq_class& at) const {
  mpq_class r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * at + *it;
  return r;
}

std::string Polynomial::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = 0; i <= degree(); ++i) {
    mpq_class c = coeffs_[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    const std::string mono = i == 0 ? "" : i == 1 ? "x" : "x^" + std::to_string(i);
    if (c != 1 || i == 0) out += c.get_str() + (c.get_den() != 1 && i > 0 ? "*" : "");
    out += mono;
  }
  return out;
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * mpq_class(1 / a.coeffs().back());
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = {};
    den_ = Polynomial::constant(1);
    return;
  }
  const Polynomial g = gcd(num, den);
  num = num.divmod(g).first;
  den = den.divmod(g).first;
  const mpq_class lead = den[0] != 0 ? den[0] : den.coeffs().back();
  num_ = num * mpq_class(1 / lead);
  den_ = den * mpq_class(1 / lead);
}

namespace {

// Integer coefficients of both polynomials after a common scaling.
std::pair<std::vector<mpz_class>, std::vector<mpz_class>> integer_form(const Polynomial& num, const Polynomial& den) {
  mpz_class l = 1;
  for (const auto* p : {&num, &den}) {
    for (const auto& c : p->coeffs()) l = lcm(l, mpz_class(c.get_den()));
  }
  std::vector<mpz_class> n, d;
  mpz_class g = 0;
  for (const auto& c : num.coeffs()) {
    n.push_back(mpz_class(c * l));
    g = gcd(g, n.back());
  }
  for (const auto& c : den.coeffs()) {
    d.push_back(mpz_class(c * l));
    g = gcd(g, d.back());
  }
  if (g == 0) g = 1;
  for (auto& v : n) v /= g;
  for (auto& v : d) v /= g;
  const auto first = std::find_if(d.begin(), d.end(), [](const mpz_class& v) { return v != 0; });
  if (first != d.end() && *first < 0) {
    for (auto& v : n) v = -v;
    for (auto& v : d) v = -v;
  }
  return {n, d};
}

Polynomial from_integers(const std::vector<mpz_class>& v) {
  std::vector<mpq_class> q(v.begin(), v.end());
  return Polynomial(std::move(q));
}

std::string json_array(const std::vector<mpz_class>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].get_str();
  return out + "]";
}

}  // namespace

std::string RationalFunction::str() const {
  auto [n, d] = integer_form(num_, den_);
  const Polynomial pn = from_integers(n), pd = from_integers(d);
  auto wrap = [](const Polynomial& p) {
    const long terms = std::count_if(p.coeffs().begin(), p.coeffs().end(), [](const mpq_class& c) { return c != 0; });
    return terms > 1 ? "(" + p.str() + ")" : p.str();
  };
  if (pd == Polynomial::constant(1)) return pn.str();
  return wrap(pn) + " / " + wrap(pd);
}

std::string RationalFunction::json() const {
  auto [n, d] = integer_form(num_, den_);
  return "{\"numerator\": " + json_array(n) + ", \"denominator\": " + json_array(d) + "}";
}

std::vector<mpq_class> series_coefficients(const RationalFunction& f, int n) {
  const Polynomial& num = f.numerator();
  const Polynomial& den = f.denominator();
  if (den[0] == 0) throw DomainError("series: denominator vanishes at 0");
  std::vector<mpq_class> out;
  for (int k = 0; k <= n; ++k) {
    mpq_class v = num[k];
    for (int j = 1; j <= std::min(k, den.degree()); ++j) v -= den[j] * out[k - j];
    out.push_back(v / den[0]);
  }
  return out;
}

namespace {

// Useful part of a deterministic automaton, with its unweighted edges in
// topological order.  Throws on an unweighted cycle.
struct Prepared {
  Automaton a;
  std::vector<State> order;
};

Prepared prepare(const Automaton& input, const Weights& weighted) {
  if (static_cast<int>(weighted.size()) != input.alphabet->size()) {
    throw std::invalid_argument("weights do not match the alphabet");
  }
  Prepared p{minimize(input), {}};
  const Automaton& a = p.a;
  std::vector<int> indegree(a.num_states(), 0);
  for (State s = 0; s < a.num_states(); ++s) {
    for (const Edge& e : a.edges[s]) {
      if (!weighted[e.sym]) ++indegree[e.to];
    }
  }
  std::vector<State> stack;
  for (State s = 0; s < a.num_states(); ++s) {
    if (indegree[s] == 0) stack.push_back(s);
  }
  while (!stack.empty()) {
    const State s = stack.back();
    stack.pop_back();
    p.order.push_back(s);
    for (const Edge& e : a.edges[s]) {
      if (!weighted[e.sym] && --indegree[e.to] == 0) stack.push_back(e.to);
    }
  }
  if (p.order.size() != a.num_states()) {
    throw DomainError("generating function: a cycle of unweighted symbols among useful states");
  }
  return p;
}

std::vector<mpz_class> counts_of(const Prepared& p, const Weights& weighted, int max_weight) {
  const Automaton& a = p.a;
  std::vector<mpz_class> cur(a.num_states()), result;
  for (State s : a.initial) cur[s] = 1;
  for (int w = 0; w <= max_weight; ++w) {
    std::vector<mpz_class> next(a.num_states());
    for (State s : p.order) {
      if (cur[s] == 0) continue;
      for (const Edge& e : a.edges[s]) {
        if (weighted[e.sym]) next[e.to] += cur[s];
        else cur[e.to] += cur[s];
      }
    }
    mpz_class total = 0;
    for (State s = 0; s < a.num_states(); ++s) {
      if (a.accepting[s]) total += cur[s];
    }
    result.push_back(total);
    cur = std::move(next);
  }
  return result;
}

// Fraction-free determinant over Z[x]; the matrix is consumed.
Polynomial bareiss_det(std::vector<std::vector<Polynomial>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(1);
  Polynomial prev = Polynomial::constant(1);
  mpq_class sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return {};
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        auto [q, rem] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).divmod(prev);
        if (!rem.is_zero()) throw std::logic_error("bareiss: inexact division");
        m[i][j] = std::move(q);
      }
      m[i][k] = {};
    }
    prev = m[k][k];
  }
  return m[n - 1][n - 1] * sign;
}

RationalFunction by_bareiss(const Automaton& a, const Weights& weighted) {
  const std::size_t n = a.num_states();
  // B = I - A(x); the bordered matrix [[B, v], [u, 0]] has determinant
  // -det(B) * u B^-1 v.
  std::vector<std::vector<Polynomial>> b(n, std::vector<Polynomial>(n));
  for (State s = 0; s < n; ++s) {
    b[s][s] = Polynomial::constant(1);
    for (const Edge& e : a.edges[s]) {
      b[s][e.to] = b[s][e.to] - (weighted[e.sym] ? Polynomial::x() : Polynomial::constant(1));
    }
  }
  auto bordered = b;
  for (State s = 0; s < n; ++s) bordered[s].push_back(Polynomial::constant(a.accepting[s] ? 1 : 0));
  bordered.emplace_back(n + 1);
  for (State s : a.initial) bordered[n][s] = Polynomial::constant(1);
  const Polynomial den = bareiss_det(std::move(b));
  const Polynomial num = bareiss_det(std::move(bordered)) * mpq_class(-1);
  if (den.is_zero()) throw DomainError("generating function: singular transfer system");
  return RationalFunction(num, den);
}

// Berlekamp-Massey over Q: the shortest recurrence generating s.
RationalFunction by_recurrence(const std::vector<mpz_class>& s) {
  std::vector<mpq_class> c{1}, b{1};
  int l = 0, m = 1;
  mpq_class last = 1;
  for (int n = 0; n < static_cast<int>(s.size()); ++n) {
    mpq_class d = s[n];
    for (int i = 1; i <= l && i < static_cast<int>(c.size()); ++i) d += c[i] * s[n - i];
    if (d == 0) {
      ++m;
      continue;
    }
    const auto t = c;
    const mpq_class f = d / last;
    if (c.size() < b.size() + m) c.resize(b.size() + m);
    for (std::size_t i = 0; i < b.size(); ++i) c[i + m] -= f * b[i];
    if (2 * l <= n) {
      l = n + 1 - l;
      b = t;
      last = d;
      m = 1;
    } else {
      ++m;
    }
  }
  c.resize(l + 1);
  std::vector<mpq_class> p(l);
  for (int k = 0; k < l; ++k) {
    for (int i = 0; i <= k; ++i) p[k] += c[i] * s[k - i];
  }
  return RationalFunction(Polynomial(p), Polynomial(c));
}

}  // namespace

std::vector<mpz_class> weighted_counts(const Automaton& a, const Weights& weighted, int max_weight) {
  return counts_of(prepare(a, weighted), weighted, max_weight);
}

RationalFunction gf_from_automaton(const Automaton& input, const Weights& weighted, GfMethod method) {
  const Prepared p = prepare(input, weighted);
  const int n = static_cast<int>(p.a.num_states());
  if (method == GfMethod::Auto) method = n <= 24 ? GfMethod::Bareiss : GfMethod::Recurrence;
  RationalFunction f = method == GfMethod::Bareiss
                           ? by_bareiss(p.a, weighted)
                           : by_recurrence(counts_of(p, weighted, 2 * n + 4));
  // Both sides have degree at most the number of states.
  if (f.denominator().degree() > n || f.numerator().degree() > n) {
    throw std::logic_error("generating function: degree exceeds the state bound");
  }
  return f;
}

Weights panel_weights(int c) {
  PanelCodec codec(c);
  Weights w(codec.plain()->size(), true);
  w[codec.hash()] = false;
  return w;
}

RationalFunction gf_class(const std::vector<Permutation>& basis, std::optional<int> q, std::optional<int> c) {
  const int cc = c ? *c : default_c(basis);
  return gf_from_automaton(automaton_class(basis, q, cc), panel_weights(cc));
}

}  // namespace stair
