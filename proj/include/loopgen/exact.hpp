#pragma once

/// \file exact.hpp
/// Exact number tower: GMP integers and rationals, factorial prime powers,
/// and root-rationals (rational multiples of square roots of square-free
/// integers), plus the triangle coefficient Delta(a, b, c).

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>

namespace loopgen {

class PrimePowers;

using Integer = mpz_class;
using Rational = mpq_class;

/// Value of the form coeff * sqrt(radicand) with radicand a positive
/// square-free integer. Zero is stored as coeff 0, radicand 1.
class RootRational {
 public:
  RootRational() = default;
  RootRational(long value) : coeff_(value) {}  // NOLINT(runtime/explicit)
  RootRational(Rational coeff);                // NOLINT(runtime/explicit)

  /// coeff * sqrt(radicand) for an arbitrary positive rational radicand;
  /// square factors are pulled out by trial division.
  static RootRational from_parts(const Rational& coeff, const Rational& radicand);

  /// Square root of a non-negative rational.
  static RootRational sqrt_of(const Rational& value) { return from_parts(1, value); }

  /// Parses the canonical text form, e.g. `-1/3 * sqrt(3)`, `sqrt(2/3)`, `5/7`.
  static RootRational parse(std::string_view text);

  const Rational& coeff() const { return coeff_; }
  const Integer& radicand() const { return radicand_; }
  bool is_zero() const { return sgn(coeff_) == 0; }
  int sign() const { return sgn(coeff_); }

  /// Exact square of the value.
  Rational squared() const { return coeff_ * coeff_ * Rational(radicand_); }

  /// Canonical text: `0`, `p/q`, `sqrt(r)`, `-sqrt(r)`, `p/q * sqrt(r)`.
  std::string to_string() const;

  /// Decimal approximation with the given number of significant digits.
  /// Display only; never used in comparisons.
  std::string to_decimal(int digits = 15) const;

  RootRational operator-() const;
  RootRational& operator*=(const RootRational& rhs);
  /// Throws std::logic_error when both operands are nonzero with different radicands.
  RootRational& operator+=(const RootRational& rhs);
  RootRational& operator-=(const RootRational& rhs) { return *this += -rhs; }

  friend RootRational operator*(RootRational lhs, const RootRational& rhs) { return lhs *= rhs; }
  friend RootRational operator+(RootRational lhs, const RootRational& rhs) { return lhs += rhs; }
  friend RootRational operator-(RootRational lhs, const RootRational& rhs) { return lhs -= rhs; }
  friend bool operator==(const RootRational& a, const RootRational& b) {
    return a.coeff_ == b.coeff_ && a.radicand_ == b.radicand_;
  }

 private:
  friend class PrimePowers;
  RootRational(Rational coeff, Integer radicand);

  Rational coeff_{0};
  Integer radicand_{1};
};

std::ostream& operator<<(std::ostream& os, const RootRational& value);

/// Multiplicative accumulator over primes for products and ratios of
/// factorials. Legendre's formula keeps everything integral; the square
/// root is exact via even/odd exponent splitting.
class PrimePowers {
 public:
  /// Multiplies by (n!)^power. Throws std::domain_error for n < 0.
  PrimePowers& factorial(long n, int power = 1);
  PrimePowers& integer(long n, int power = 1);

  Rational value() const;
  RootRational sqrt() const;

 private:
  std::map<unsigned long, long> exponents_;
};

/// sqrt( prod numerator[k]! / prod denominator[k]! ).
RootRational sqrt_factorial_ratio(std::initializer_list<long> numerator,
                                  std::initializer_list<long> denominator = {});

/// True when a, b, c (given doubled) satisfy the triangle inequalities and
/// a + b + c is an integer.
bool triangle_ok(int twice_a, int twice_b, int twice_c);

/// Delta(a, b, c) = sqrt((a+b-c)! (b+c-a)! (c+a-b)! / (a+b+c+1)!), arguments
/// doubled. Returns zero (never a valid Delta value) when the triangle rule fails.
RootRational delta(int twice_a, int twice_b, int twice_c);

/// Multiplies `acc` by Delta(a, b, c)^2. Requires triangle_ok.
void accumulate_delta_squared(PrimePowers& acc, int twice_a, int twice_b, int twice_c);

Integer factorial(long n);

}  // namespace loopgen
