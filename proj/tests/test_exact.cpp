#include <doctest.h>

#include <random>

#include "loopgen/exact.hpp"

using namespace loopgen;

TEST_CASE("delta values") {
  CHECK(delta(0, 0, 0) == RootRational(1));
  CHECK(delta(2, 2, 2) == RootRational::sqrt_of(Rational(1, 24)));
  CHECK(delta(4, 2, 1).is_zero());  // (2, 1, 1/2): sum not an integer
  CHECK(delta(2, 2, 6).is_zero());  // triangle inequality
  CHECK(delta(1, 1, 0) == RootRational::sqrt_of(Rational(1, 2)));
}

TEST_CASE("delta is symmetric") {
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      for (int c = 0; c <= 6; ++c) {
        RootRational x = delta(a, b, c);
        CHECK(x == delta(b, a, c));
        CHECK(x == delta(c, b, a));
        CHECK(x == delta(b, c, a));
      }
}

TEST_CASE("root-rational canonical form") {
  CHECK(RootRational::sqrt_of(2) * RootRational::sqrt_of(2) == RootRational(2));
  CHECK(RootRational::sqrt_of(12).to_string() == "2 * sqrt(3)");
  CHECK(RootRational::sqrt_of(Rational(2, 3)).to_string() == "1/3 * sqrt(6)");
  CHECK(RootRational::from_parts(-1, Rational(1, 3)).to_string() == "-1/3 * sqrt(3)");
  CHECK(RootRational().to_string() == "0");
  CHECK(RootRational().radicand() == 1);
  CHECK(RootRational::from_parts(0, 7).radicand() == 1);
  CHECK(RootRational::sqrt_of(5).to_string() == "sqrt(5)");
  CHECK((-RootRational::sqrt_of(5)).to_string() == "-sqrt(5)");

  RootRational x = RootRational::from_parts(Rational(1, 2), 6);
  RootRational y = RootRational::from_parts(Rational(1, 3), Rational(2, 3));
  RootRational p = x * y;
  CHECK(p.squared() == x.squared() * y.squared());
  CHECK(p == RootRational(Rational(1, 3)));
  CHECK(x + RootRational() == x);
}

TEST_CASE("mismatched radicands cannot be added") {
  CHECK_THROWS_AS(RootRational::sqrt_of(2) + RootRational::sqrt_of(3), std::logic_error);
  CHECK(RootRational::sqrt_of(2) + RootRational::sqrt_of(8) == RootRational::from_parts(3, 2));
  CHECK((RootRational::sqrt_of(2) - RootRational::sqrt_of(2)).radicand() == 1);
}

TEST_CASE("parse round trip") {
  for (const char* s : {"0", "5/7", "-3", "sqrt(3)", "-sqrt(30)", "-1/3 * sqrt(3)", "7/2 * sqrt(10)"})
    CHECK(RootRational::parse(s).to_string() == s);
  CHECK(RootRational::parse("sqrt(2/3)") == RootRational::from_parts(Rational(1, 3), 6));
  CHECK(RootRational::parse("2*sqrt(8)").to_string() == "4 * sqrt(2)");
  CHECK_THROWS(RootRational::parse("sqrt(2"));
  CHECK_THROWS(RootRational::parse("abc"));
  CHECK_THROWS(RootRational::parse("1/0"));
  CHECK_THROWS(RootRational::parse("sqrt(-2)"));
}

TEST_CASE("factorial square roots") {
  CHECK(sqrt_factorial_ratio({2}, {0}) == RootRational::sqrt_of(2));
  CHECK(sqrt_factorial_ratio({4}, {2}) == RootRational::from_parts(2, 3));
  CHECK(sqrt_factorial_ratio({3, 1}) == RootRational::sqrt_of(6));
  CHECK(sqrt_factorial_ratio({0}, {5}) == RootRational::sqrt_of(Rational(1, 120)));
  CHECK_THROWS_AS(sqrt_factorial_ratio({-1}), std::domain_error);

  PrimePowers acc;
  acc.factorial(10).factorial(7, -1).integer(12, -1);
  CHECK(acc.value() == Rational(60));
}

TEST_CASE("decimal display") {
  CHECK(RootRational::from_parts(-1, Rational(1, 3)).to_decimal(15) == "-0.577350269189626");
  CHECK(RootRational(Rational(1, 6)).to_decimal(15) == "0.166666666666667");
  CHECK(RootRational().to_decimal() == "0");
}

TEST_CASE("random root-rationals: squares, associativity, commutativity") {
  std::mt19937_64 rng(7);
  auto draw = [&] {
    Rational c(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 9) + 1);
    Rational r(static_cast<long>(rng() % 200) + 1, static_cast<long>(rng() % 50) + 1);
    c.canonicalize();
    r.canonicalize();
    return std::pair{c, r};
  };
  for (int t = 0; t < 300; ++t) {
    auto [c1, r1] = draw();
    auto [c2, r2] = draw();
    auto [c3, r3] = draw();
    RootRational x = RootRational::from_parts(c1, r1);
    RootRational y = RootRational::from_parts(c2, r2);
    RootRational z = RootRational::from_parts(c3, r3);
    CHECK(x.squared() == c1 * c1 * r1);
    CHECK(x * y == y * x);
    CHECK((x * y) * z == x * (y * z));
    CHECK(RootRational::parse(x.to_string()) == x);
  }
}
