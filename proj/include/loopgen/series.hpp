#pragma once

/// \file series.hpp
/// Sparse truncated multivariate power series over exact rationals.
///
/// A series lives on a sorted variable list with a degree cap per variable
/// and an optional cap on total degree. Terms beyond any cap are dropped;
/// since every operation only raises exponents, stored coefficients are
/// always exact.

#include <array>
#include <climits>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "loopgen/exact.hpp"
#include "loopgen/polynomial.hpp"

namespace loopgen {

inline constexpr std::size_t kMaxSeriesVariables = 48;
inline constexpr int kMaxCap = 255;
inline constexpr int kNoTotalCap = INT_MAX;

using Exponents = std::array<std::uint8_t, kMaxSeriesVariables>;

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept;
};

class TruncatedSeries {
 public:
  using Terms = std::unordered_map<Exponents, Rational, ExponentsHash>;

  TruncatedSeries() = default;
  /// Zero series. Variables must be sorted and distinct, caps in [0, 255].
  TruncatedSeries(std::vector<Variable> variables, std::vector<int> caps,
                  int total_cap = kNoTotalCap);

  static TruncatedSeries one(std::vector<Variable> variables, std::vector<int> caps,
                             int total_cap = kNoTotalCap);
  /// Every variable of `p` must be among `variables`.
  static TruncatedSeries from_polynomial(const MultilinearPolynomial& p,
                                         std::vector<Variable> variables, std::vector<int> caps,
                                         int total_cap = kNoTotalCap);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<int>& caps() const { return caps_; }
  int total_cap() const { return total_cap_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  int variable_index(const Variable& v) const;

  /// Exponents aligned with variables(). Throws std::out_of_range when the
  /// request lies beyond the caps (the expansion order is too low).
  Rational coefficient(const std::vector<int>& exponents) const;
  Rational constant_term() const;

  /// Adds to one coefficient; silently ignored beyond the caps.
  void add_term(const std::vector<int>& exponents, const Rational& c);

  /// Same series with tighter total-degree cap.
  TruncatedSeries truncated(int total_cap) const;

  /// Multiplies each coefficient by its monomial's total degree.
  TruncatedSeries euler() const;

  TruncatedSeries& operator*=(const Rational& k);
  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  TruncatedSeries operator-() const;
  /// Equal variables, caps and coefficients.
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

  /// s^n for any integer n. Negative n needs a nonzero constant term
  /// (std::domain_error otherwise).
  TruncatedSeries power(int n) const;
  /// exp(s); the constant term must vanish (std::domain_error otherwise).
  TruncatedSeries exp() const;

  /// The unique F with F(0) = 1 and W * euler(F) = M * F, where W has
  /// constant term 1 and M has none. Solved degree by degree, so the cost
  /// is |F| * (|W| + |M|). F = s^n is W = s, M = n euler(s); F = exp(s) is
  /// W = 1, M = euler(s); products of such factors combine logarithmically.
  static TruncatedSeries solve_log_derivative(const TruncatedSeries& w, const TruncatedSeries& m);

  /// Canonical text in total-degree-then-lexicographic monomial order.
  std::string to_string() const;

 private:
  friend TruncatedSeries glue_series(const TruncatedSeries&, std::string_view, std::string_view,
                                     std::string_view);
  bool within_caps(const Exponents& e, int degree) const;
  int degree(const Exponents& e) const;
  Exponents pack(const std::vector<int>& exponents) const;
  TruncatedSeries remapped(const std::vector<Variable>& variables, const std::vector<int>& caps,
                           int total_cap) const;
  static void align(const TruncatedSeries& a, const TruncatedSeries& b, TruncatedSeries& a2,
                    TruncatedSeries& b2);
  void prune_zeros();

  std::vector<Variable> variables_;
  std::vector<int> caps_;
  int total_cap_ = kNoTotalCap;
  Terms terms_;
};

/// Joins legs (A1, ~A1) and (A2, ~A2) into the internal variable A12 by
/// exact residue: a term A1^p1 ~A1^q1 A2^p2 ~A2^q2 survives only when
/// p1 = q2 and q1 = p2, becoming (-1)^p1 A12^(p1 + p2). The new cap is the
/// smallest of the four leg caps, and half the total cap, so that every
/// kept coefficient is exact.
TruncatedSeries glue_series(const TruncatedSeries& f, std::string_view leg_1,
                            std::string_view leg_2, std::string_view new_name);

}  // namespace loopgen
