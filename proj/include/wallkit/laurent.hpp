#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wallkit/errors.hpp"

namespace wallkit {

using Int = boost::multiprecision::cpp_int;

// Sparse element of A = Z[q, q^-1]. Terms are kept sorted by exponent with
// no zero coefficients, so structural equality is polynomial equality.
class LaurentPoly {
 public:
  struct Term {
    int exp;
    Int coef;
    friend bool operator==(const Term&, const Term&) = default;
  };

  LaurentPoly() = default;
  LaurentPoly(long long c) {  // NOLINT: implicit scalars read naturally in formulas
    if (c != 0) terms_.push_back({0, Int(c)});
  }
  LaurentPoly(std::initializer_list<std::pair<int, long long>> ts) {
    std::map<int, Int> acc;
    for (auto& [e, c] : ts) acc[e] += c;
    assign(acc);
  }

  static LaurentPoly monomial(int exp, Int coef = 1) {
    LaurentPoly p;
    if (coef != 0) p.terms_.push_back({exp, std::move(coef)});
    return p;
  }
  static LaurentPoly q(int exp = 1) { return monomial(exp, 1); }

  static LaurentPoly from_map(const std::map<int, Int>& m) {
    LaurentPoly p;
    p.assign(m);
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  int min_exp() const { return terms_.front().exp; }
  int max_exp() const { return terms_.back().exp; }

  Int coeff(int exp) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                               [](const Term& t, int e) { return t.exp < e; });
    return (it != terms_.end() && it->exp == exp) ? it->coef : Int(0);
  }

  bool is_monomial() const { return terms_.size() == 1; }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = merge(*this, o, 1); }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = merge(*this, o, -1); }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return merge(a, b, 1); }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return merge(a, b, -1); }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_monomial()) return b.times_monomial(a.terms_[0].exp, a.terms_[0].coef);
    if (b.is_monomial()) return a.times_monomial(b.terms_[0].exp, b.terms_[0].coef);
    const int lo = a.min_exp() + b.min_exp();
    const int hi = a.max_exp() + b.max_exp();
    std::vector<Int> dense(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) dense[x.exp + y.exp - lo] += x.coef * y.coef;
    LaurentPoly r;
    for (std::size_t k = 0; k < dense.size(); ++k)
      if (dense[k] != 0) r.terms_.push_back({lo + static_cast<int>(k), std::move(dense[k])});
    return r;
  }

  // Multiply by c * q^e.
  LaurentPoly times_monomial(int e, const Int& c = 1) const {
    if (c == 0) return {};
    LaurentPoly r = *this;
    for (auto& t : r.terms_) {
      t.exp += e;
      t.coef *= c;
    }
    return r;
  }
  LaurentPoly shifted(int e) const { return times_monomial(e, 1); }

  LaurentPoly pow(unsigned k) const {
    LaurentPoly result = 1;
    LaurentPoly base = *this;
    while (k) {
      if (k & 1u) result *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return result;
  }

  // q -> q^-1.
  LaurentPoly bar() const {
    LaurentPoly r;
    r.terms_.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) r.terms_.push_back({-it->exp, it->coef});
    return r;
  }

  Int eval_q1() const {
    Int s = 0;
    for (const auto& t : terms_) s += t.coef;
    return s;
  }
  bool is_nonneg() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coef > 0; });
  }
  bool is_bar_symmetric() const { return *this == bar(); }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  // Lexicographic on (exp, coef) pairs; only used for deterministic ordering.
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    return std::lexicographical_compare(
        a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
        [](const Term& x, const Term& y) { return x.exp != y.exp ? x.exp < y.exp : x.coef < y.coef; });
  }

  // Human form with ascending exponents: "q^-2 + 3 + 2*q^4".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
      Int c = t.coef;
      if (first) {
        if (c < 0) {
          os << "-";
          c = -c;
        }
      } else {
        os << (c < 0 ? " - " : " + ");
        if (c < 0) c = -c;
      }
      first = false;
      if (t.exp == 0) {
        os << c;
        continue;
      }
      if (c != 1) os << c << "*";
      os << "q";
      if (t.exp != 1) os << "^" << t.exp;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

 private:
  void assign(const std::map<int, Int>& m) {
    terms_.clear();
    for (const auto& [e, c] : m)
      if (c != 0) terms_.push_back({e, c});
  }

  static LaurentPoly merge(const LaurentPoly& a, const LaurentPoly& b, int sign) {
    LaurentPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->exp < j->exp)) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->exp < i->exp) {
        r.terms_.push_back({j->exp, sign > 0 ? j->coef : Int(-j->coef)});
        ++j;
      } else {
        Int c = sign > 0 ? Int(i->coef + j->coef) : Int(i->coef - j->coef);
        if (c != 0) r.terms_.push_back({i->exp, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

// Raised by exact_div when the quotient is not a Laurent polynomial.
class DivisibilityError : public PropertyViolation {
 public:
  DivisibilityError(LaurentPoly num, LaurentPoly den, LaurentPoly rem)
      : PropertyViolation("inexact division (" + num.to_string() + ") / (" + den.to_string() +
                          "), remainder " + rem.to_string()),
        numerator(std::move(num)),
        denominator(std::move(den)),
        remainder(std::move(rem)) {}

  LaurentPoly numerator;
  LaurentPoly denominator;
  LaurentPoly remainder;
};

// Quotient c with c * den == num, by ascending-exponent long division.
inline LaurentPoly exact_div(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw InvalidInput("division by the zero Laurent polynomial");
  if (num.is_zero()) return {};
  if (den.is_monomial()) {
    const auto& lead = den.terms().front();
    std::map<int, Int> out;
    LaurentPoly rem;
    for (const auto& t : num.terms()) {
      Int qt, rt;
      boost::multiprecision::divide_qr(t.coef, lead.coef, qt, rt);
      if (rt != 0) throw DivisibilityError(num, den, num);
      out[t.exp - lead.exp] = qt;
    }
    return LaurentPoly::from_map(out);
  }
  const auto& low = den.terms().front();
  // Every quotient exponent lies in [num.min - den.min, num.max - den.max].
  const int top = num.max_exp() - den.max_exp();
  std::map<int, Int> quot;
  LaurentPoly rem = num;
  while (!rem.is_zero()) {
    const auto& t = rem.terms().front();
    const int e = t.exp - low.exp;
    Int qt, rt;
    boost::multiprecision::divide_qr(t.coef, low.coef, qt, rt);
    if (e > top || rt != 0) throw DivisibilityError(num, den, rem);
    quot[e] = qt;
    rem -= den.times_monomial(e, qt);
  }
  return LaurentPoly::from_map(quot);
}

// 1 - (-q^2)^k.
inline LaurentPoly one_minus_neg_q2(int k) {
  if (k == 0) return {};
  return LaurentPoly(1) - LaurentPoly::monomial(2 * k, (k % 2 == 0) ? Int(1) : Int(-1));
}

// <t> = prod_{k=1}^{t} (1 - (-q^2)^k).
inline LaurentPoly angle(int t) {
  if (t < 0) throw InvalidInput("angle bracket of a negative integer");
  LaurentPoly r = 1;
  for (int k = 1; k <= t; ++k) r *= one_minus_neg_q2(k);
  return r;
}

inline LaurentPoly angle_vec(std::span<const int> m) {
  LaurentPoly r = 1;
  for (int t : m) r *= angle(t);
  return r;
}

// Quantum integer [n]_i with q_i = q^d; negative n gives -[-n]_i.
inline LaurentPoly qint(int n, int d) {
  if (n < 0) return -qint(-n, d);
  LaurentPoly r;
  for (int k = 0; k < n; ++k) r += LaurentPoly::q(d * (n - 1 - 2 * k));
  return r;
}

// Gaussian binomial [m choose k]_i via the q-Pascal rule.
inline LaurentPoly qbinom(int m, int k, int d) {
  if (k < 0 || k > m) return {};
  std::vector<std::vector<LaurentPoly>> row(m + 1, std::vector<LaurentPoly>(m + 1));
  for (int a = 0; a <= m; ++a) {
    row[a][0] = 1;
    row[a][a] = 1;
    for (int b = 1; b < a; ++b)
      row[a][b] = row[a - 1][b].shifted(d * b) + row[a - 1][b - 1].shifted(-d * (a - b));
  }
  return row[m][k];
}

}  // namespace wallkit
