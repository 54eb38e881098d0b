#pragma once

/// \file polynomial.hpp
/// Expansion variables and signed multilinear polynomials over them.

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace loopgen {

/// Expansion variable: the line variable A, or the bared leg variable ~A.
struct Variable {
  std::string name;
  bool bar = false;

  std::string to_string() const { return bar ? "~" + name : name; }
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

/// Squarefree monomial: sorted, duplicate-free list of variables.
using Monomial = std::vector<Variable>;

/// Canonical monomial order: total degree, then lexicographic.
struct CanonicalOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Integer combination of squarefree monomials.
class MultilinearPolynomial {
 public:
  using Terms = std::map<Monomial, long long, CanonicalOrder>;

  MultilinearPolynomial() = default;
  static MultilinearPolynomial one();

  /// Adds coeff * monomial; the monomial is sorted and must be squarefree
  /// (throws std::invalid_argument otherwise). Zero sums are dropped.
  void add(Monomial monomial, long long coeff);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  long long coefficient(const Monomial& m) const;
  long long constant() const { return coefficient({}); }

  /// Substitutes v -> -v.
  MultilinearPolynomial negate(const Variable& v) const;
  /// Sorted union of all variables occurring.
  std::vector<Variable> variables() const;

  MultilinearPolynomial& operator+=(const MultilinearPolynomial& rhs);
  friend MultilinearPolynomial operator+(MultilinearPolynomial a, const MultilinearPolynomial& b) {
    return a += b;
  }
  friend MultilinearPolynomial operator-(const MultilinearPolynomial& a,
                                         const MultilinearPolynomial& b);
  friend bool operator==(const MultilinearPolynomial&, const MultilinearPolynomial&) = default;

  /// Golden-file form, e.g. `1 + A*B*F - A*~B`.
  std::string to_string() const;

 private:
  Terms terms_;
};

std::string monomial_to_string(const Monomial& m);

}  // namespace loopgen
