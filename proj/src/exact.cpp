#include "loopgen/exact.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <regex>
#include <stdexcept>
#include <vector>

namespace loopgen {

namespace {

constexpr long kSieveLimit = 1L << 16;

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<bool> composite(kSieveLimit + 1, false);
    std::vector<unsigned long> out;
    for (long p = 2; p <= kSieveLimit; ++p) {
      if (composite[p]) continue;
      out.push_back(static_cast<unsigned long>(p));
      for (long q = p * p; q <= kSieveLimit; q += p) composite[q] = true;
    }
    return out;
  }();
  return primes;
}

// Splits n > 0 into square * squarefree by trial division.
void split_square(Integer n, Integer& square_root, Integer& squarefree) {
  square_root = 1;
  squarefree = 1;
  Integer p = 2;
  while (p * p <= n) {
    int e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      ++e;
    }
    for (int k = 0; k < e / 2; ++k) square_root *= p;
    if (e % 2) squarefree *= p;
    p += (p == 2) ? 1 : 2;
  }
  squarefree *= n;  // remaining factor is 1 or a prime
}

bool is_rational_literal(const std::string& s) {
  static const std::regex re(R"(-?[0-9]+(/[0-9]+)?)");
  return std::regex_match(s, re);
}

Rational parse_rational(const std::string& s) {
  if (!is_rational_literal(s)) throw std::invalid_argument("malformed rational: '" + s + "'");
  Rational r;
  auto slash = s.find('/');
  Integer num(s.substr(0, slash), 10);
  Integer den = 1;
  if (slash != std::string::npos) den = Integer(s.substr(slash + 1), 10);
  if (den == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  r = Rational(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

RootRational::RootRational(Rational coeff) : coeff_(std::move(coeff)) { coeff_.canonicalize(); }

RootRational::RootRational(Rational coeff, Integer radicand)
    : coeff_(std::move(coeff)), radicand_(std::move(radicand)) {
  coeff_.canonicalize();
  if (sgn(coeff_) == 0) radicand_ = 1;
}

RootRational RootRational::from_parts(const Rational& coeff, const Rational& radicand) {
  if (sgn(radicand) < 0) throw std::domain_error("negative radicand");
  if (sgn(coeff) == 0 || sgn(radicand) == 0) return {};
  // sqrt(n/d) = sqrt(n d) / d
  Integer nd = radicand.get_num() * radicand.get_den();
  Integer root, free;
  split_square(nd, root, free);
  return RootRational(coeff * Rational(root, radicand.get_den()), free);
}

RootRational RootRational::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty root-rational");

  auto pos = s.find("sqrt(");
  if (pos == std::string::npos) return RootRational(parse_rational(s));

  if (s.back() != ')' || s.find("sqrt(", pos + 1) != std::string::npos)
    throw std::invalid_argument("malformed root-rational: '" + std::string(text) + "'");
  Rational radicand = parse_rational(s.substr(pos + 5, s.size() - pos - 6));
  if (sgn(radicand) < 0) throw std::invalid_argument("negative radicand");

  std::string head = s.substr(0, pos);
  Rational coeff = 1;
  if (head == "-") {
    coeff = -1;
  } else if (!head.empty()) {
    if (head.back() != '*')
      throw std::invalid_argument("malformed root-rational: '" + std::string(text) + "'");
    head.pop_back();
    coeff = parse_rational(head);
  }
  return from_parts(coeff, radicand);
}

std::string RootRational::to_string() const {
  if (radicand_ == 1) return coeff_.get_str();
  if (coeff_ == 1) return "sqrt(" + radicand_.get_str() + ")";
  if (coeff_ == -1) return "-sqrt(" + radicand_.get_str() + ")";
  return coeff_.get_str() + " * sqrt(" + radicand_.get_str() + ")";
}

std::string RootRational::to_decimal(int digits) const {
  mpf_class root(0, 256), c(0, 256);
  mpf_class rad(radicand_, 256);
  mpf_sqrt(root.get_mpf_t(), rad.get_mpf_t());
  c = coeff_;
  mpf_class v(c * root, 256);
  if (sgn(v) == 0) return "0";
  std::vector<char> buf(digits + 64);
  gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, v.get_mpf_t());
  return buf.data();
}

RootRational RootRational::operator-() const {
  RootRational out = *this;
  out.coeff_ = -out.coeff_;
  return out;
}

RootRational& RootRational::operator*=(const RootRational& rhs) {
  if (is_zero() || rhs.is_zero()) {
    *this = RootRational();
    return *this;
  }
  // Both radicands square-free: r1 r2 = g^2 (r1/g)(r2/g) with coprime square-free cofactors.
  Integer g;
  mpz_gcd(g.get_mpz_t(), radicand_.get_mpz_t(), rhs.radicand_.get_mpz_t());
  Integer r = (radicand_ / g) * (rhs.radicand_ / g);
  coeff_ *= rhs.coeff_;
  coeff_ *= g;
  radicand_ = r;
  return *this;
}

RootRational& RootRational::operator+=(const RootRational& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) {
    *this = rhs;
    return *this;
  }
  if (radicand_ != rhs.radicand_)
    throw std::logic_error("adding root-rationals with different radicands: " + to_string() +
                           " + " + rhs.to_string());
  coeff_ += rhs.coeff_;
  if (sgn(coeff_) == 0) radicand_ = 1;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const RootRational& value) {
  return os << value.to_string();
}

PrimePowers& PrimePowers::factorial(long n, int power) {
  if (n < 0) throw std::domain_error("factorial of negative argument " + std::to_string(n));
  if (n > kSieveLimit) throw std::out_of_range("factorial argument too large");
  for (unsigned long p : small_primes()) {
    if (static_cast<long>(p) > n) break;
    long e = 0;
    for (long q = n / static_cast<long>(p); q > 0; q /= static_cast<long>(p)) e += q;
    long& slot = exponents_[p];
    slot += e * power;
    if (slot == 0) exponents_.erase(p);
  }
  return *this;
}

PrimePowers& PrimePowers::integer(long n, int power) {
  if (n <= 0) throw std::domain_error("PrimePowers::integer needs a positive argument");
  for (unsigned long p : small_primes()) {
    if (n == 1) break;
    while (n % static_cast<long>(p) == 0) {
      n /= static_cast<long>(p);
      long& slot = exponents_[p];
      slot += power;
      if (slot == 0) exponents_.erase(p);
    }
  }
  if (n != 1) throw std::out_of_range("PrimePowers::integer: prime factor beyond sieve");
  return *this;
}

Rational PrimePowers::value() const {
  Integer num = 1, den = 1;
  for (const auto& [p, e] : exponents_) {
    Integer pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(std::abs(e)));
    (e > 0 ? num : den) *= pe;
  }
  return Rational(num, den);
}

RootRational PrimePowers::sqrt() const {
  Integer num = 1, den = 1, radicand = 1;
  for (const auto& [p, e] : exponents_) {
    long half = (e >= 0) ? e / 2 : -((-e + 1) / 2);  // floor(e / 2)
    if (e - 2 * half) radicand *= p;
    Integer pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(std::abs(half)));
    (half > 0 ? num : den) *= pe;
  }
  return RootRational(Rational(num, den), radicand);
}

RootRational sqrt_factorial_ratio(std::initializer_list<long> numerator,
                                  std::initializer_list<long> denominator) {
  PrimePowers acc;
  for (long n : numerator) acc.factorial(n);
  for (long n : denominator) acc.factorial(n, -1);
  return acc.sqrt();
}

bool triangle_ok(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) return false;
  if ((a + b + c) % 2) return false;
  return a + b >= c && b + c >= a && c + a >= b;
}

void accumulate_delta_squared(PrimePowers& acc, int a, int b, int c) {
  acc.factorial((a + b - c) / 2)
      .factorial((b + c - a) / 2)
      .factorial((c + a - b) / 2)
      .factorial((a + b + c) / 2 + 1, -1);
}

RootRational delta(int a, int b, int c) {
  if (!triangle_ok(a, b, c)) return {};
  PrimePowers acc;
  accumulate_delta_squared(acc, a, b, c);
  return acc.sqrt();
}

Integer factorial(long n) {
  if (n < 0) throw std::domain_error("factorial of negative argument " + std::to_string(n));
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

}  // namespace loopgen
