#pragma once

/// \file oracles.hpp
/// Reference evaluators that share no code path with the generating
/// functions: the classical single-sum formulas for 3-j and 6-j symbols and
/// an exhaustive contraction of vertex 3-j symbols over internal magnetic
/// numbers. All arguments are doubled.

#include <cstddef>
#include <stdexcept>

#include "loopgen/exact.hpp"
#include "loopgen/graph.hpp"

namespace loopgen {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (a b c; alpha beta gamma). Zero when a selection rule fails.
RootRational racah_3j(int a, int b, int c, int alpha, int beta, int gamma);

/// {a b c; d e f}, with triads (a,b,c) (a,e,f) (b,d,f) (c,d,e).
RootRational racah_6j(int a, int b, int c, int d, int e, int f);

inline constexpr std::size_t kDefaultBudget = 1'000'000;

/// Sum over internal magnetic numbers of the vertex 3-j symbols (arguments
/// in counter-clockwise order) times the metric (-1)^(a + m_tail) per edge,
/// with m_head = -m_tail. Throws BudgetExceeded when prod_i (2 a_i + 1)
/// exceeds `budget`. `terms`, if given, receives the number of nonzero
/// products summed.
RootRational contraction_oracle(const RecouplingGraph& g, const QuantumAssignment& q,
                                std::size_t budget = kDefaultBudget, std::size_t* terms = nullptr);

}  // namespace loopgen
