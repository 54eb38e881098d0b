#include <doctest.h>

#include <random>

#include "loopgen/series.hpp"
#include "support.hpp"

using namespace loopgen;
using testing::poly;

namespace {

const Variable X{"X", false}, A{"A", false}, Ab{"A", true}, B{"B", false}, Bb{"B", true};

TruncatedSeries series(const std::string& text, std::vector<Variable> vars, std::vector<int> caps,
                       int total = kNoTotalCap) {
  std::sort(vars.begin(), vars.end());
  return TruncatedSeries::from_polynomial(poly(text), vars, caps, total);
}

}  // namespace

TEST_CASE("ring operations") {
  TruncatedSeries p = series("1 + A", {A}, {2});
  TruncatedSeries m = series("1 - A", {A}, {2});
  CHECK((p * m).to_string() == "1 - A^2");
  CHECK(p * TruncatedSeries::one({A}, {2}) == p);
  TruncatedSeries s = series("A + ~B", {A, Bb}, {2, 2});
  CHECK((s * s).to_string() == "A^2 + 2*A*~B + ~B^2");
  CHECK((p + m).to_string() == "2");
  CHECK((p - p).size() == 0);
}

TEST_CASE("alignment takes the union of variables and the smaller caps") {
  TruncatedSeries a = series("1 + A", {A}, {3});
  TruncatedSeries b = series("1 + B", {B}, {1});
  TruncatedSeries c = series("A", {A}, {1});
  TruncatedSeries prod = a * b;
  CHECK(prod.variables().size() == 2);
  CHECK(prod.to_string() == "1 + A + B + A*B");
  CHECK((a * a * c).to_string() == "A");
}

TEST_CASE("powers") {
  TruncatedSeries s = series("1 + X", {X}, {3});
  CHECK(s.power(-2).to_string() == "1 - 2*X + 3*X^2 - 4*X^3");
  CHECK(s.power(0).to_string() == "1");
  CHECK(s.power(3).to_string() == "1 + 3*X + 3*X^2 + X^3");
  TruncatedSeries two = series("2 + X", {X}, {2});
  CHECK(two.power(-1).to_string() == "1/2 - 1/4*X + 1/8*X^2");
  CHECK_THROWS_AS(series("X", {X}, {3}).power(-1), std::domain_error);

  std::vector<Variable> v{{"A", false}, {"B", false}, {"C", false},
                          {"D", false}, {"E", false}, {"F", false}};
  TruncatedSeries tet = series("1 + A*B*F + A*C*E + B*C*D + D*E*F + A*B*D*E + A*C*D*F + B*C*E*F",
                               v, std::vector<int>(6, 2));
  CHECK(tet.power(-2).constant_term() == 1);
}

TEST_CASE("exponential") {
  TruncatedSeries zero({X}, {3});
  CHECK(zero.exp().to_string() == "1");
  TruncatedSeries s = series("A*~B - B*~A", {A, Ab, B, Bb}, {1, 1, 1, 1});
  // (A~B - B~A)^2 / 2 = -A~A B~B under caps 1
  CHECK(s.exp().to_string() == "1 + A*~B - ~A*B - A*~A*B*~B");
  CHECK_THROWS_AS(series("1 + X", {X}, {2}).exp(), std::domain_error);
}

TEST_CASE("coefficients") {
  TruncatedSeries s({X}, {2});
  s.add_term({0}, 1);
  s.add_term({1}, -2);
  s.add_term({2}, 3);
  s.add_term({3}, 9);  // beyond the cap, dropped
  CHECK(s.to_string() == "1 - 2*X + 3*X^2");
  CHECK(s.coefficient({2}) == 3);
  CHECK(s.coefficient({0}) == s.constant_term());
  CHECK_THROWS_AS(s.coefficient({3}), std::out_of_range);
  CHECK_THROWS_AS(s.coefficient({0, 0}), std::invalid_argument);

  TruncatedSeries t = series("1 + A*B", {A, B}, {3, 3}, 1);
  CHECK(t.to_string() == "1");
  CHECK_THROWS_AS(t.coefficient({1, 1}), std::out_of_range);
}

TEST_CASE("construction checks") {
  CHECK_THROWS_AS(TruncatedSeries({B, A}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedSeries({A, A}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedSeries({A}, {256}), std::out_of_range);
  CHECK_THROWS_AS(TruncatedSeries({A}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedSeries::from_polynomial(poly("B"), {A}, {1}), std::invalid_argument);
}

TEST_CASE("gluing residues") {
  const Variable a1{"A1", false}, a1b{"A1", true}, a2{"A2", false}, a2b{"A2", true};
  std::vector<Variable> v{a1, a1b, a2, a2b, {"C", false}};
  std::sort(v.begin(), v.end());
  auto glue = [&](const char* text) {
    auto f = TruncatedSeries::from_polynomial(poly(text), v, std::vector<int>(5, 2));
    return glue_series(f, "A1", "A2", "A12").to_string();
  };
  CHECK(glue("A1*~A2") == "-A12");
  CHECK(glue("~A1*A2") == "A12");
  CHECK(glue("A1*A2") == "0");
  CHECK(glue("1 + C + A1*~A1*A2*~A2") == "1 + C - A12^2");
  CHECK(glue("C*A1*~A2") == "-A12*C");
  auto f = TruncatedSeries::from_polynomial(poly("1"), v, std::vector<int>(5, 2));
  CHECK_THROWS_AS(glue_series(f, "A1", "B", "X"), std::invalid_argument);
  CHECK_THROWS_AS(glue_series(f, "A1", "A1", "X"), std::invalid_argument);
  CHECK_THROWS_AS(glue_series(f, "A1", "A2", "C"), std::invalid_argument);
}

TEST_CASE("log-derivative solver against naive arithmetic") {
  std::mt19937_64 rng(41);
  std::vector<Variable> vars{A, Ab, B, Bb, X};
  for (int t = 0; t < 30; ++t) {
    std::vector<int> caps;
    for (std::size_t k = 0; k < vars.size(); ++k) caps.push_back(1 + static_cast<int>(rng() % 3));
    int total = rng() % 2 ? kNoTotalCap : 4 + static_cast<int>(rng() % 4);
    auto p = testing::random_multilinear(rng, vars, 5, 1);
    TruncatedSeries s = TruncatedSeries::from_polynomial(p, vars, caps, total);
    TruncatedSeries one = TruncatedSeries::one(vars, caps, total);

    TruncatedSeries inv = s.power(-1);
    CHECK(inv == testing::naive_inverse(s));
    CHECK(inv * s == one);
    CHECK(s.power(-3) == testing::naive_power(testing::naive_inverse(s), 3));
    CHECK(s.power(4) == testing::naive_power(s, 4));

    TruncatedSeries z = s - one;
    CHECK(z.exp() == testing::naive_exp(z));
    CHECK(z.exp() * (-z).exp() == one);
  }
}

TEST_CASE("gluing commutes with factors in other variables") {
  std::mt19937_64 rng(43);
  const Variable a1{"P", false}, a1b{"P", true}, a2{"Q", false}, a2b{"Q", true};
  std::vector<Variable> glued{a1, a1b, a2, a2b, A};
  std::vector<Variable> other{B, Bb};
  std::sort(glued.begin(), glued.end());
  for (int t = 0; t < 20; ++t) {
    auto f = TruncatedSeries::from_polynomial(testing::random_multilinear(rng, glued, 8, 1),
                                              glued, std::vector<int>(5, 3))
                 .power(-1);
    auto h = TruncatedSeries::from_polynomial(testing::random_multilinear(rng, other, 3, 1),
                                              other, std::vector<int>(2, 3));
    CHECK(glue_series(f * h, "P", "Q", "N") == glue_series(f, "P", "Q", "N") * h);
  }
}

TEST_CASE("canonical printing") {
  TruncatedSeries s = series("~A*B - A + 2*A*B", {A, Ab, B}, {2, 2, 2});
  CHECK(s.to_string() == "-A + 2*A*B + ~A*B");
  CHECK(s.euler().to_string() == "-A + 4*A*B + 2*~A*B");
  CHECK(TruncatedSeries({A}, {1}).to_string() == "0");
}
