#include "loopgen/series.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <numeric>
#include <stdexcept>

namespace loopgen {

std::size_t ExponentsHash::operator()(const Exponents& e) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL;
  for (std::size_t i = 0; i < e.size(); i += 8) {
    std::uint64_t w;
    std::memcpy(&w, e.data() + i, 8);
    h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

TruncatedSeries::TruncatedSeries(std::vector<Variable> variables, std::vector<int> caps,
                                 int total_cap)
    : variables_(std::move(variables)), caps_(std::move(caps)), total_cap_(total_cap) {
  if (variables_.size() != caps_.size())
    throw std::invalid_argument("series: one cap per variable required");
  if (variables_.size() > kMaxSeriesVariables)
    throw std::length_error("series: too many variables (" + std::to_string(variables_.size()) +
                            ")");
  if (!std::is_sorted(variables_.begin(), variables_.end()) ||
      std::adjacent_find(variables_.begin(), variables_.end()) != variables_.end())
    throw std::invalid_argument("series: variables must be sorted and distinct");
  for (int c : caps_)
    if (c < 0 || c > kMaxCap) throw std::out_of_range("series: cap out of range");
  if (total_cap_ < 0) throw std::out_of_range("series: negative total cap");
}

TruncatedSeries TruncatedSeries::one(std::vector<Variable> variables, std::vector<int> caps,
                                     int total_cap) {
  TruncatedSeries s(std::move(variables), std::move(caps), total_cap);
  s.terms_.emplace(Exponents{}, Rational(1));
  return s;
}

TruncatedSeries TruncatedSeries::from_polynomial(const MultilinearPolynomial& p,
                                                 std::vector<Variable> variables,
                                                 std::vector<int> caps, int total_cap) {
  TruncatedSeries s(std::move(variables), std::move(caps), total_cap);
  for (const auto& [mono, c] : p.terms()) {
    std::vector<int> e(s.variables_.size(), 0);
    for (const Variable& v : mono) {
      int i = s.variable_index(v);
      if (i < 0) throw std::invalid_argument("series: polynomial variable " + v.to_string() +
                                             " not in variable list");
      ++e[i];
    }
    s.add_term(e, Rational(static_cast<long>(c)));
  }
  return s;
}

int TruncatedSeries::variable_index(const Variable& v) const {
  auto it = std::lower_bound(variables_.begin(), variables_.end(), v);
  if (it == variables_.end() || *it != v) return -1;
  return static_cast<int>(it - variables_.begin());
}

int TruncatedSeries::degree(const Exponents& e) const {
  int d = 0;
  for (std::size_t i = 0; i < variables_.size(); ++i) d += e[i];
  return d;
}

bool TruncatedSeries::within_caps(const Exponents& e, int deg) const {
  if (deg > total_cap_) return false;
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (e[i] > caps_[i]) return false;
  return true;
}

Exponents TruncatedSeries::pack(const std::vector<int>& exponents) const {
  if (exponents.size() != variables_.size())
    throw std::invalid_argument("series: exponent vector has wrong length");
  Exponents e{};
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0) throw std::invalid_argument("series: negative exponent");
    if (exponents[i] > caps_[i])
      throw std::out_of_range("series: exponent of " + variables_[i].to_string() +
                              " beyond the expansion order");
    e[i] = static_cast<std::uint8_t>(exponents[i]);
  }
  return e;
}

Rational TruncatedSeries::coefficient(const std::vector<int>& exponents) const {
  Exponents e = pack(exponents);
  if (degree(e) > total_cap_)
    throw std::out_of_range("series: total degree beyond the expansion order");
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational TruncatedSeries::constant_term() const {
  auto it = terms_.find(Exponents{});
  return it == terms_.end() ? Rational(0) : it->second;
}

void TruncatedSeries::add_term(const std::vector<int>& exponents, const Rational& c) {
  if (exponents.size() != variables_.size())
    throw std::invalid_argument("series: exponent vector has wrong length");
  Exponents e{};
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0) throw std::invalid_argument("series: negative exponent");
    if (exponents[i] > caps_[i]) return;
    e[i] = static_cast<std::uint8_t>(exponents[i]);
  }
  if (degree(e) > total_cap_) return;
  Rational& slot = terms_[e];
  slot += c;
  if (sgn(slot) == 0) terms_.erase(e);
}

void TruncatedSeries::prune_zeros() {
  std::erase_if(terms_, [](const auto& kv) { return sgn(kv.second) == 0; });
}

TruncatedSeries TruncatedSeries::truncated(int total_cap) const {
  TruncatedSeries out(variables_, caps_, std::min(total_cap, total_cap_));
  for (const auto& [e, c] : terms_)
    if (degree(e) <= out.total_cap_) out.terms_.emplace(e, c);
  return out;
}

TruncatedSeries TruncatedSeries::euler() const {
  TruncatedSeries out(variables_, caps_, total_cap_);
  for (const auto& [e, c] : terms_) {
    int d = degree(e);
    if (d != 0) out.terms_.emplace(e, c * d);
  }
  return out;
}

TruncatedSeries TruncatedSeries::remapped(const std::vector<Variable>& variables,
                                          const std::vector<int>& caps, int total_cap) const {
  TruncatedSeries out(variables, caps, total_cap);
  std::vector<int> where(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) where[i] = out.variable_index(variables_[i]);
  for (const auto& [e, c] : terms_) {
    Exponents f{};
    bool keep = true;
    for (std::size_t i = 0; i < variables_.size() && keep; ++i) {
      if (e[i] == 0) continue;
      if (where[i] < 0) throw std::logic_error("series remap drops a live variable");
      f[where[i]] = e[i];
    }
    if (keep && out.within_caps(f, degree(e))) out.terms_.emplace(f, c);
  }
  return out;
}

void TruncatedSeries::align(const TruncatedSeries& a, const TruncatedSeries& b,
                            TruncatedSeries& a2, TruncatedSeries& b2) {
  std::map<Variable, int> caps;
  for (std::size_t i = 0; i < a.variables_.size(); ++i) caps[a.variables_[i]] = a.caps_[i];
  for (std::size_t i = 0; i < b.variables_.size(); ++i) {
    auto [it, inserted] = caps.emplace(b.variables_[i], b.caps_[i]);
    if (!inserted) it->second = std::min(it->second, b.caps_[i]);
  }
  std::vector<Variable> vars;
  std::vector<int> cap_list;
  for (const auto& [v, c] : caps) {
    vars.push_back(v);
    cap_list.push_back(c);
  }
  int total = std::min(a.total_cap_, b.total_cap_);
  a2 = a.remapped(vars, cap_list, total);
  b2 = b.remapped(vars, cap_list, total);
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& k) {
  if (sgn(k) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= k;
  return *this;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries x, y;
  TruncatedSeries::align(a, b, x, y);
  for (const auto& [e, c] : y.terms_) x.terms_[e] += c;
  x.prune_zeros();
  return x;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries x, y;
  TruncatedSeries::align(a, b, x, y);
  TruncatedSeries out(x.variables_, x.caps_, x.total_cap_);

  struct Entry {
    const Exponents* e;
    int degree;
    const Rational* c;
  };
  auto entries = [](const TruncatedSeries& s) {
    std::vector<Entry> v;
    v.reserve(s.terms_.size());
    for (const auto& [e, c] : s.terms_) v.push_back({&e, s.degree(e), &c});
    std::sort(v.begin(), v.end(), [](const Entry& p, const Entry& q) {
      return p.degree != q.degree ? p.degree < q.degree : *p.e < *q.e;
    });
    return v;
  };
  auto xs = entries(x), ys = entries(y);
  const std::size_t n = x.variables_.size();
  Rational prod;
  for (const Entry& p : xs) {
    for (const Entry& q : ys) {
      int d = p.degree + q.degree;
      if (d > out.total_cap_) break;
      Exponents e;
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i) {
        int s = (*p.e)[i] + (*q.e)[i];
        if (s > out.caps_[i]) {
          ok = false;
          break;
        }
        e[i] = static_cast<std::uint8_t>(s);
      }
      if (!ok) continue;
      std::fill(e.begin() + n, e.end(), 0);
      mpq_mul(prod.get_mpq_t(), p.c->get_mpq_t(), q.c->get_mpq_t());
      Rational& slot = out.terms_[e];
      mpq_add(slot.get_mpq_t(), slot.get_mpq_t(), prod.get_mpq_t());
    }
  }
  out.prune_zeros();
  return out;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.variables_ == b.variables_ && a.caps_ == b.caps_ && a.total_cap_ == b.total_cap_ &&
         a.terms_ == b.terms_;
}

TruncatedSeries TruncatedSeries::solve_log_derivative(const TruncatedSeries& w_in,
                                                      const TruncatedSeries& m_in) {
  TruncatedSeries w, m;
  align(w_in, m_in, w, m);
  Rational w0 = w.constant_term();
  if (sgn(w0) == 0) throw std::domain_error("solve_log_derivative: W has no constant term");
  if (sgn(m.constant_term()) != 0)
    throw std::domain_error("solve_log_derivative: M has a constant term");
  if (w0 != 1) {
    Rational inv = 1 / w0;
    w *= inv;
    m *= inv;
  }

  struct Shift {
    Exponents e;
    int degree;
    Rational m_coeff;
    Rational w_coeff;
  };
  std::map<Exponents, Shift> shift_map;
  for (const auto& [e, c] : m.terms_) shift_map[e] = {e, m.degree(e), c, 0};
  for (const auto& [e, c] : w.terms_) {
    if (e == Exponents{}) continue;
    auto [it, inserted] = shift_map.try_emplace(e, Shift{e, w.degree(e), 0, c});
    if (!inserted) it->second.w_coeff = c;
  }
  std::vector<Shift> shifts;
  for (auto& [e, s] : shift_map) shifts.push_back(std::move(s));

  const std::size_t n = w.variables_.size();
  long cap_sum = std::accumulate(w.caps_.begin(), w.caps_.end(), 0L);
  const int max_degree = static_cast<int>(std::min<long>(cap_sum, w.total_cap_));

  std::vector<Terms> buckets(max_degree + 1);
  buckets[0].emplace(Exponents{}, Rational(1));
  std::vector<Rational> factors(shifts.size());
  Rational prod;

  for (int d = 0; d <= max_degree; ++d) {
    Terms& here = buckets[d];
    if (d > 0) {
      for (auto& [e, c] : here) c /= d;
      std::erase_if(here, [](const auto& kv) { return sgn(kv.second) == 0; });
    }
    for (std::size_t k = 0; k < shifts.size(); ++k)
      factors[k] = shifts[k].m_coeff - shifts[k].w_coeff * d;

    for (const auto& [e, c] : here) {
      for (std::size_t k = 0; k < shifts.size(); ++k) {
        const Shift& s = shifts[k];
        int target = d + s.degree;
        if (target > max_degree || sgn(factors[k]) == 0) continue;
        Exponents t;
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) {
          int v = e[i] + s.e[i];
          if (v > w.caps_[i]) {
            ok = false;
            break;
          }
          t[i] = static_cast<std::uint8_t>(v);
        }
        if (!ok) continue;
        std::fill(t.begin() + n, t.end(), 0);
        mpq_mul(prod.get_mpq_t(), c.get_mpq_t(), factors[k].get_mpq_t());
        Rational& slot = buckets[target][t];
        mpq_add(slot.get_mpq_t(), slot.get_mpq_t(), prod.get_mpq_t());
      }
    }
  }

  TruncatedSeries out(w.variables_, w.caps_, w.total_cap_);
  std::size_t total = 0;
  for (const auto& b : buckets) total += b.size();
  out.terms_.reserve(total);
  for (auto& b : buckets)
    for (auto& [e, c] : b) out.terms_.emplace(e, std::move(c));
  return out;
}

TruncatedSeries TruncatedSeries::power(int n) const {
  if (n >= 0) {
    TruncatedSeries result = one(variables_, caps_, total_cap_);
    TruncatedSeries base = *this;
    while (n > 0) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return result;
  }
  Rational c = constant_term();
  if (sgn(c) == 0) throw std::domain_error("power: negative exponent of a non-unit series");
  TruncatedSeries normalized = *this;
  normalized *= Rational(1) / c;
  TruncatedSeries m = normalized.euler();
  m *= Rational(n);
  TruncatedSeries out = solve_log_derivative(normalized, m);
  Rational scale = 1;
  for (int k = 0; k < -n; ++k) scale /= c;
  out *= scale;
  return out;
}

TruncatedSeries TruncatedSeries::exp() const {
  if (sgn(constant_term()) != 0) throw std::domain_error("exp: series has a constant term");
  return solve_log_derivative(one(variables_, caps_, total_cap_), euler());
}

std::string TruncatedSeries::to_string() const {
  if (terms_.empty()) return "0";
  struct Row {
    int degree;
    std::vector<std::pair<Variable, int>> key;
    const Rational* c;
  };
  std::vector<Row> rows;
  for (const auto& [e, c] : terms_) {
    Row r{degree(e), {}, &c};
    for (std::size_t i = 0; i < variables_.size(); ++i)
      if (e[i]) r.key.emplace_back(variables_[i], e[i]);
    rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    // lexicographic on the expanded variable list, e.g. A*A*~B
    std::vector<Variable> x, y;
    for (const auto& [v, k] : a.key) x.insert(x.end(), k, v);
    for (const auto& [v, k] : b.key) y.insert(y.end(), k, v);
    return x < y;
  });
  std::string out;
  bool first = true;
  for (const Row& r : rows) {
    Rational mag = abs(*r.c);
    bool negative = sgn(*r.c) < 0;
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    first = false;
    std::string mono;
    for (const auto& [v, k] : r.key) {
      if (!mono.empty()) mono += '*';
      mono += v.to_string();
      if (k > 1) mono += '^' + std::to_string(k);
    }
    if (mono.empty()) out += mag.get_str();
    else if (mag == 1) out += mono;
    else out += mag.get_str() + '*' + mono;
  }
  return out;
}

TruncatedSeries glue_series(const TruncatedSeries& f, std::string_view leg_1,
                            std::string_view leg_2, std::string_view new_name) {
  if (leg_1 == leg_2) throw std::invalid_argument("glue_series: identical legs");
  const Variable a1{std::string(leg_1), false}, a1b{std::string(leg_1), true};
  const Variable a2{std::string(leg_2), false}, a2b{std::string(leg_2), true};
  int i_a1 = f.variable_index(a1), i_a1b = f.variable_index(a1b);
  int i_a2 = f.variable_index(a2), i_a2b = f.variable_index(a2b);
  if (i_a1 < 0 || i_a1b < 0 || i_a2 < 0 || i_a2b < 0)
    throw std::invalid_argument("glue_series: series lacks leg variables of " +
                                std::string(leg_1) + " or " + std::string(leg_2));
  const Variable glued{std::string(new_name), false};
  if (f.variable_index(glued) >= 0 && glued != a1 && glued != a2)
    throw std::invalid_argument("glue_series: new variable " + glued.to_string() +
                                " already present");

  std::map<Variable, int> caps;
  std::vector<int> source;  // for each output variable, its index in f or -1 for the glued one
  for (std::size_t i = 0; i < f.variables_.size(); ++i) {
    int ii = static_cast<int>(i);
    if (ii == i_a1 || ii == i_a1b || ii == i_a2 || ii == i_a2b) continue;
    caps[f.variables_[i]] = f.caps_[i];
  }
  int glued_cap = std::min({f.caps_[i_a1], f.caps_[i_a1b], f.caps_[i_a2], f.caps_[i_a2b]});
  caps[glued] = glued_cap;
  std::vector<Variable> vars;
  std::vector<int> cap_list;
  for (const auto& [v, c] : caps) {
    vars.push_back(v);
    cap_list.push_back(c);
    source.push_back(v == glued ? -1 : f.variable_index(v));
  }
  int total = f.total_cap_ == kNoTotalCap ? kNoTotalCap : f.total_cap_ / 2;
  TruncatedSeries out(vars, cap_list, total);

  for (const auto& [e, c] : f.terms_) {
    int p1 = e[i_a1], q1 = e[i_a1b], p2 = e[i_a2], q2 = e[i_a2b];
    if (p1 != q2 || q1 != p2) continue;
    Exponents g{};
    int deg = 0;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      int v = source[k] < 0 ? p1 + p2 : e[source[k]];
      g[k] = static_cast<std::uint8_t>(v);
      deg += v;
    }
    if (!out.within_caps(g, deg)) continue;
    Rational& slot = out.terms_[g];
    if (p1 % 2) slot -= c;
    else slot += c;
  }
  out.prune_zeros();
  return out;
}

}  // namespace loopgen
