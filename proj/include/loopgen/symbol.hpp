#pragma once

/// \file symbol.hpp
/// Generating functions of multi-j symbols built from curve sets, their
/// series expansions, and extraction of exact symbol values.
///
/// For a graph with legs j and internal edges i, the expansion
///
///   base^(J-2) * prod_j Q_j^(-1),   Q_j = base + sum_{i != j} curve_polynomial(i, j)
///
/// has, at A_j^(a_j+m_j) ~A_j^(a_j-m_j) prod_i A_i^(2 a_i), the coefficient
///
///   S * prod_j sqrt((a_j-m_j)! / (a_j+m_j)!) / prod_vertices Delta.
///
/// The exponential form base^(-2) exp(-B / base), B = sum_j (Q_j - base),
/// carries S / (prod Delta * prod_j sqrt((a_j+m_j)! (a_j-m_j)!)) instead.

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "loopgen/curves.hpp"
#include "loopgen/exact.hpp"
#include "loopgen/graph.hpp"
#include "loopgen/polynomial.hpp"
#include "loopgen/series.hpp"

namespace loopgen {

struct GeneratingFunction {
  RecouplingGraph graph;
  MultilinearPolynomial base;
  /// Q_j, parallel to graph.legs().
  std::vector<MultilinearPolynomial> leg_factors;

  int leg_count() const { return static_cast<int>(leg_factors.size()); }
  /// B = sum_j (Q_j - base).
  MultilinearPolynomial open_part() const;
};

GeneratingFunction generating_function(const RecouplingGraph& g);

/// A and ~A for every leg, A for every internal edge; sorted.
std::vector<Variable> expansion_variables(const RecouplingGraph& g);

/// Exponents of the monomial that carries q, aligned with
/// expansion_variables(g). Requires j + m even on every leg.
std::vector<int> target_exponents(const RecouplingGraph& g, const QuantumAssignment& q);

struct Caps {
  std::vector<int> per_variable;  // aligned with expansion_variables
  int total = kNoTotalCap;

  /// Every variable capped at `cap`.
  static Caps uniform(const RecouplingGraph& g, int cap, int total = kNoTotalCap);
  /// Exactly the orders needed to read off q.
  static Caps minimal(const RecouplingGraph& g, const QuantumAssignment& q);
};

TruncatedSeries expand_eq5(const GeneratingFunction& gf, const Caps& caps);
TruncatedSeries expand_eq6(const GeneratingFunction& gf, const Caps& caps);

struct SymbolValue {
  RootRational value;
  bool triangle = false;  // some vertex violates the triangle rule
  bool parity = false;    // j + m odd on some leg
  bool magnetic = false;  // leg magnetic numbers do not sum to zero

  bool selected_out() const { return triangle || parity || magnetic; }
  /// First firing rule: "parity", "triangle", "magnetic", or "".
  std::string rule() const;
  /// `0 (selection rule: parity)` for flagged zeros, the canonical value otherwise.
  std::string to_string() const;
};

/// Selection flags for q, with value zero. Validates q.
SymbolValue selection_rules(const RecouplingGraph& g, const QuantumAssignment& q);

/// prod Delta * prod_j sqrt((a_j+m_j)! / (a_j-m_j)!).
RootRational eq5_normalization(const RecouplingGraph& g, const QuantumAssignment& q);
/// prod Delta * prod_j sqrt((a_j+m_j)! (a_j-m_j)!).
RootRational eq6_normalization(const RecouplingGraph& g, const QuantumAssignment& q);

/// One-off evaluation with minimal caps.
SymbolValue symbol_value(const RecouplingGraph& g, const QuantumAssignment& q);
SymbolValue symbol_value_eq6(const RecouplingGraph& g, const QuantumAssignment& q);

/// Direct multinomial expansion of base^(-2) over stacked loop sets. Closed
/// graphs only (std::invalid_argument otherwise). `terms`, if given,
/// receives the number of layer configurations summed.
SymbolValue symbol_via_layer_sums(const RecouplingGraph& g, const QuantumAssignment& q,
                                  std::size_t* terms = nullptr);

/// Sweep evaluator: expands once with uniform caps and answers every q
/// whose doubled momenta are at most max_twice_j. Thread-safe.
class SymbolEvaluator {
 public:
  SymbolEvaluator(RecouplingGraph g, int max_twice_j);

  const RecouplingGraph& graph() const { return gf_.graph; }
  const GeneratingFunction& generating_function() const { return gf_; }
  int max_twice_j() const { return max_twice_j_; }

  SymbolValue value(const QuantumAssignment& q) const;
  SymbolValue value_eq6(const QuantumAssignment& q) const;

  const TruncatedSeries& eq5_series() const;
  const TruncatedSeries& eq6_series() const;

 private:
  SymbolValue extract(const TruncatedSeries& s, const QuantumAssignment& q, bool eq6) const;

  GeneratingFunction gf_;
  int max_twice_j_;
  Caps caps_;
  mutable std::once_flag eq5_once_, eq6_once_;
  mutable std::unique_ptr<TruncatedSeries> eq5_, eq6_;
};

}  // namespace loopgen
