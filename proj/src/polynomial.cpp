#include "loopgen/polynomial.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace loopgen {

MultilinearPolynomial MultilinearPolynomial::one() {
  MultilinearPolynomial p;
  p.add({}, 1);
  return p;
}

void MultilinearPolynomial::add(Monomial monomial, long long coeff) {
  if (coeff == 0) return;
  std::sort(monomial.begin(), monomial.end());
  if (std::adjacent_find(monomial.begin(), monomial.end()) != monomial.end())
    throw std::invalid_argument("monomial is not squarefree: " + monomial_to_string(monomial));
  auto [it, inserted] = terms_.try_emplace(std::move(monomial), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

long long MultilinearPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

MultilinearPolynomial MultilinearPolynomial::negate(const Variable& v) const {
  MultilinearPolynomial out;
  for (const auto& [m, c] : terms_) {
    bool has = std::binary_search(m.begin(), m.end(), v);
    out.add(m, has ? -c : c);
  }
  return out;
}

std::vector<Variable> MultilinearPolynomial::variables() const {
  std::set<Variable> vars;
  for (const auto& [m, c] : terms_) vars.insert(m.begin(), m.end());
  return {vars.begin(), vars.end()};
}

MultilinearPolynomial& MultilinearPolynomial::operator+=(const MultilinearPolynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) add(m, c);
  return *this;
}

MultilinearPolynomial operator-(const MultilinearPolynomial& a, const MultilinearPolynomial& b) {
  MultilinearPolynomial out = a;
  for (const auto& [m, c] : b.terms_) out.add(m, -c);
  return out;
}

std::string monomial_to_string(const Monomial& m) {
  std::string out;
  for (const auto& v : m) {
    if (!out.empty()) out += '*';
    out += v.to_string();
  }
  return out;
}

std::string MultilinearPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    long long mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (m.empty()) {
      out += std::to_string(mag);
    } else {
      if (mag != 1) out += std::to_string(mag) + '*';
      out += monomial_to_string(m);
    }
  }
  return out;
}

}  // namespace loopgen
