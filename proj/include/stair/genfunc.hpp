#ifndef STAIR_GENFUNC_HPP
#define STAIR_GENFUNC_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "stair/fsm.hpp"
#include "stair/perm.hpp"

namespace stair {

// Single-variable polynomial over Q; coeffs[i] multiplies x^i.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<mpq_class> coeffs);
  static Polynomial constant(const mpq_class& c);
  static Polynomial x();

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  mpq_class operator[](int i) const;
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const mpq_class& c) const;
  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

  // Quotient and remainder; throws std::domain_error on a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;
  mpq_class operator()(const mpq_class& at) const;

  // Ascending degree, e.g. "1 - 2x + x^2".
  std::string str() const;

 private:
  void strip();
  std::vector<mpq_class> coeffs_;
};

Polynomial gcd(Polynomial a, Polynomial b);

// num/den in lowest terms; the denominator has constant term 1 whenever it
// has a nonzero constant term at all.
class RationalFunction {
 public:
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

  // Both sides scaled to coprime integer coefficients: "(1 - x) / (1 - 2x)".
  std::string str() const;
  std::string json() const;

 private:
  Polynomial num_, den_;
};

// First n+1 Taylor coefficients.  Throws DomainError when den(0) = 0.
std::vector<mpq_class> series_coefficients(const RationalFunction& f, int n);

// weighted[s]: symbol s contributes x (true) or 1 (false).
using Weights = std::vector<bool>;

// Accepted words counted by weight, for n <= max_weight.  Throws DomainError
// if some useful cycle uses unweighted symbols only.
std::vector<mpz_class> weighted_counts(const Automaton& a, const Weights& weighted, int max_weight);

enum class GfMethod { Auto, Bareiss, Recurrence };

// Sum over accepted words of x^(weight).  Bareiss solves the transfer
// system over Z[x]; Recurrence fits the counts to a linear recurrence whose
// order is bounded by the number of states, which determines the result.
RationalFunction gf_from_automaton(const Automaton& a, const Weights& weighted, GfMethod method = GfMethod::Auto);

// Generating function of Av(321, basis), optionally within W_q.
RationalFunction gf_class(const std::vector<Permutation>& basis, std::optional<int> q = std::nullopt,
                          std::optional<int> c = std::nullopt);

// Panel-alphabet weights: every letter but # counts.
Weights panel_weights(int c);

}  // namespace stair

#endif  // STAIR_GENFUNC_HPP
