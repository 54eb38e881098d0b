#include <doctest.h>

#include <random>

#include "loopgen/oracles.hpp"
#include "loopgen/symbol.hpp"
#include "support.hpp"

using namespace loopgen;
using testing::poly;

namespace {

int sign_power(int twice) { return (twice / 2) % 2 ? -1 : 1; }

std::vector<RecouplingGraph> small_graphs(std::mt19937_64& rng, int count) {
  std::vector<RecouplingGraph> out;
  for (int t = 0; t < count; ++t) {
    int v = 1 + static_cast<int>(rng() % 4);
    out.push_back(testing::random_graph(rng, v, static_cast<int>(rng() % (v / 2 + 2))));
  }
  return out;
}

}  // namespace

TEST_CASE("generating function data") {
  GeneratingFunction g3 = generating_function(three_j());
  CHECK(g3.base == poly("1"));
  CHECK(g3.leg_factors.at(0) == poly("1 + B*~A - C*~A"));
  CHECK(g3.leg_factors.at(1) == poly("1 + C*~B - A*~B"));
  CHECK(g3.leg_factors.at(2) == poly("1 + A*~C - B*~C"));

  GeneratingFunction g6 = generating_function(six_j());
  CHECK(g6.leg_count() == 0);
  CHECK(g6.base.size() == 8);

  GeneratingFunction g5 = generating_function(five_j());
  CHECK(g5.leg_factors.at(2) == poly("1 + E*~D + A*B*~D - A*C*~D"));

  std::mt19937_64 rng(2);
  for (const RecouplingGraph& g : small_graphs(rng, 20)) {
    GeneratingFunction gf = generating_function(g);
    CHECK(gf.base.constant() == 1);
    for (int k = 0; k < gf.leg_count(); ++k) {
      CHECK(gf.leg_factors[k].constant() == 1);
      const std::string& own = g.line(g.legs()[k]).name;
      const MultilinearPolynomial open = gf.leg_factors[k] - gf.base;
      for (const auto& [m, c] : open.terms()) {
        int bars = 0;
        for (const Variable& x : m)
          if (x.bar) {
            ++bars;
            CHECK(x.name == own);
          }
        CHECK(bars == 1);
      }
    }
  }
}

TEST_CASE("single values") {
  RecouplingGraph g = three_j();
  CHECK(symbol_value(g, {{0, 0, 0}, {0, 0, 0}}).value == RootRational(1));
  CHECK(symbol_value(g, {{2, 2, 0}, {0, 0, 0}}).value ==
        RootRational::from_parts(-1, Rational(1, 3)));
  CHECK(symbol_value(six_j(), QuantumAssignment::zeros(six_j())).value == RootRational(1));
  CHECK(symbol_value(six_j(), {{2, 2, 2, 2, 2, 2}, std::vector<int>(6, 0)}).value ==
        racah_6j(2, 2, 2, 2, 2, 2));
}

TEST_CASE("selection rules give flagged zeros") {
  RecouplingGraph g = three_j();
  SymbolValue parity = symbol_value(g, {{2, 1, 1}, {1, 0, -1}});
  CHECK(parity.parity);
  CHECK(parity.value.is_zero());
  CHECK(parity.to_string() == "0 (selection rule: parity)");

  SymbolValue triangle = symbol_value(g, {{2, 2, 6}, {0, 0, 0}});
  CHECK(triangle.triangle);
  CHECK(triangle.rule() == "triangle");

  SymbolValue magnetic = symbol_value(g, {{2, 2, 2}, {2, 2, 0}});
  CHECK(magnetic.magnetic);
  CHECK(magnetic.to_string() == "0 (selection rule: magnetic)");

  SymbolValue fine = symbol_value(g, {{2, 2, 2}, {2, 0, -2}});
  CHECK_FALSE(fine.selected_out());
  CHECK(fine.rule().empty());
}

TEST_CASE("caps") {
  RecouplingGraph g = three_j();
  QuantumAssignment q{{4, 2, 2}, {2, -2, 0}};
  Caps c = Caps::minimal(g, q);
  // variables A ~A B ~B C ~C
  CHECK(c.per_variable == std::vector<int>{3, 1, 0, 2, 1, 1});
  CHECK(c.total == 8);
  SymbolEvaluator ev(g, 2);
  CHECK_THROWS_AS(ev.value(q), std::out_of_range);
  CHECK_THROWS_AS(target_exponents(g, {{1, 1, 0}, {0, 1, 0}}), std::invalid_argument);
}

TEST_CASE("two-leg graph has no base factor") {
  RecouplingGraph g = glue_legs(five_j(), "C", "D", "G");
  GeneratingFunction gf = generating_function(g);
  CHECK(gf.leg_count() == 2);
  TruncatedSeries eq5 = expand_eq5(gf, Caps::uniform(g, 2));
  TruncatedSeries direct = TruncatedSeries::from_polynomial(gf.leg_factors[0], expansion_variables(g),
                                                            Caps::uniform(g, 2).per_variable)
                               .power(-1) *
                           TruncatedSeries::from_polynomial(gf.leg_factors[1], expansion_variables(g),
                                                            Caps::uniform(g, 2).per_variable)
                               .power(-1) *
                           TruncatedSeries::from_polynomial(gf.base, expansion_variables(g),
                                                            Caps::uniform(g, 2).per_variable)
                               .power(0);
  CHECK(eq5 == direct);
}

TEST_CASE("theorem expansion equals the literal product of powers") {
  std::mt19937_64 rng(3);
  for (const RecouplingGraph& g : small_graphs(rng, 12)) {
    GeneratingFunction gf = generating_function(g);
    Caps caps = Caps::uniform(g, 2, 5);
    auto vars = expansion_variables(g);
    auto of = [&](const MultilinearPolynomial& p) {
      return TruncatedSeries::from_polynomial(p, vars, caps.per_variable, caps.total);
    };
    TruncatedSeries f = testing::naive_power(of(gf.base), 0);
    int n = gf.leg_count() - 2;
    f = f * (n >= 0 ? testing::naive_power(of(gf.base), n)
                    : testing::naive_power(testing::naive_inverse(of(gf.base)), -n));
    for (const auto& q : gf.leg_factors) f = f * testing::naive_inverse(of(q));
    CHECK(expand_eq5(gf, caps) == f);

    TruncatedSeries inv = testing::naive_inverse(of(gf.base));
    TruncatedSeries e = inv * inv * testing::naive_exp(-(of(gf.open_part()) * inv));
    CHECK(expand_eq6(gf, caps) == e);
  }
}

TEST_CASE("the two expansions differ by (a - m)! per leg") {
  for (const RecouplingGraph& g : {three_j(), five_j()}) {
    GeneratingFunction gf = generating_function(g);
    Caps caps = Caps::uniform(g, 3);
    TruncatedSeries f5 = expand_eq5(gf, caps), f6 = expand_eq6(gf, caps);
    auto vars = expansion_variables(g);
    for (const auto& [e, c] : f6.terms()) {
      std::vector<int> x(vars.size());
      Integer scale = 1;
      for (std::size_t k = 0; k < vars.size(); ++k) {
        x[k] = e[k];
        if (vars[k].bar) scale *= factorial(e[k]);
      }
      CHECK(f5.coefficient(x) == c * Rational(scale));
    }
    CHECK(f5.size() == f6.size());
  }
}

TEST_CASE("random graphs agree with the contraction oracle") {
  std::mt19937_64 rng(5);
  for (const RecouplingGraph& g : small_graphs(rng, 40)) {
    for (int t = 0; t < 6; ++t) {
      QuantumAssignment q = testing::random_admissible(rng, g, 3);
      RootRational expected = contraction_oracle(g, q);
      CHECK(symbol_value(g, q).value == expected);
      CHECK(symbol_value_eq6(g, q).value == expected);
      if (g.leg_count() == 0) CHECK(symbol_via_layer_sums(g, q).value == expected);
    }
  }
}

TEST_CASE("gluing contracts with the metric") {
  std::mt19937_64 rng(7);
  for (const RecouplingGraph& g : small_graphs(rng, 30)) {
    if (g.leg_count() < 2) continue;
    const int i1 = g.legs()[0], i2 = g.legs()[1];
    const std::string n1 = g.line(i1).name, n2 = g.line(i2).name;
    RecouplingGraph h = glue_legs(g, n1, n2, "Glued");
    const int e = h.find_line("Glued");
    for (int t = 0; t < 4; ++t) {
      QuantumAssignment qh = testing::random_admissible(rng, h, 3);
      QuantumAssignment qg = QuantumAssignment::zeros(g);
      for (std::size_t l = 0; l < g.line_count(); ++l) {
        int lh = static_cast<int>(l) == i1 || static_cast<int>(l) == i2
                     ? e
                     : h.find_line(g.line(static_cast<int>(l)).name);
        qg.twice_j[l] = qh.twice_j[lh];
        qg.twice_m[l] = qh.twice_m[lh];
      }
      const int a = qh.twice_j[e];
      RootRational sum;
      for (int m = -a; m <= a; m += 2) {
        qg.twice_m[i1] = m;
        qg.twice_m[i2] = -m;
        RootRational v = symbol_value(g, qg).value;
        sum += sign_power(a + m) < 0 ? -v : v;
      }
      CHECK(symbol_value(h, qh).value == sum);
    }
  }
}

TEST_CASE("edge reversal and slot transposition") {
  std::mt19937_64 rng(9);
  for (const RecouplingGraph& g : small_graphs(rng, 25)) {
    for (int t = 0; t < 4; ++t) {
      QuantumAssignment q = testing::random_admissible(rng, g, 3);
      RootRational v = symbol_value(g, q).value;
      for (int e : g.edges()) {
        RootRational r = symbol_value(reverse_edge(g, g.line(e).name), q).value;
        CHECK(r == (q.twice_j[e] % 2 ? -v : v));
      }
      for (int x = 0; x < static_cast<int>(g.vertex_count()); ++x) {
        auto l = g.vertex_lines(x);
        int s = sign_power(q.twice_j[l[0]] + q.twice_j[l[1]] + q.twice_j[l[2]]);
        RootRational r = symbol_value(transpose_slots(g, g.vertex_name(x), 1, 2), q).value;
        CHECK(r == (s < 0 ? -v : v));
      }
    }
  }
}

TEST_CASE("a single leg only survives at j = 0") {
  RecouplingGraph g = glue_legs(three_j(), "B", "C");
  CHECK(g.leg_count() == 1);
  SymbolEvaluator ev(g, 4);
  for (int a = 0; a <= 4; a += 2)
    for (int b = 0; b <= 4; ++b) {
      QuantumAssignment q{{b, a}, {0, 0}};  // lines: edge B, leg A
      if (g.line(0).kind == LineKind::leg) std::swap(q.twice_j[0], q.twice_j[1]);
      RootRational expected = contraction_oracle(g, q);
      CHECK(ev.value(q).value == expected);
      if (a > 0) CHECK(expected.is_zero());
    }
}

TEST_CASE("layer sums") {
  CHECK(symbol_via_layer_sums(six_j(), QuantumAssignment::zeros(six_j())).value == RootRational(1));
  std::size_t terms = 0;
  QuantumAssignment q{{2, 2, 2, 2, 2, 2}, std::vector<int>(6, 0)};
  CHECK(symbol_via_layer_sums(six_j(), q, &terms).value == racah_6j(2, 2, 2, 2, 2, 2));
  CHECK(terms > 0);
  QuantumAssignment half{std::vector<int>(9, 1), std::vector<int>(9, 0)};
  half.twice_j[2] = half.twice_j[5] = half.twice_j[6] = half.twice_j[7] = 2;
  half.twice_j[8] = 0;
  CHECK(symbol_via_layer_sums(nine_j(), half).value == contraction_oracle(nine_j(), half));
  CHECK_THROWS_AS(symbol_via_layer_sums(three_j(), QuantumAssignment::zeros(three_j())),
                  std::invalid_argument);
}

TEST_CASE("evaluator matches one-off evaluation") {
  SymbolEvaluator ev(five_j(), 2);
  std::mt19937_64 rng(13);
  for (int t = 0; t < 50; ++t) {
    QuantumAssignment q = testing::random_admissible(rng, five_j(), 2);
    CHECK(ev.value(q).value == symbol_value(five_j(), q).value);
    CHECK(ev.value_eq6(q).value == symbol_value(five_j(), q).value);
  }
}
