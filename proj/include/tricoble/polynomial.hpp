#pragma once

// Sparse multivariate polynomials in at most four variables, terms kept in
// descending graded reverse lexicographic order.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tricoble/errors.hpp"
#include "tricoble/field.hpp"
#include "tricoble/matrix.hpp"

namespace tricoble {

inline constexpr std::size_t kMaxVars = 4;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};

  unsigned degree() const {
    unsigned d = 0;
    for (auto e : exp) d += e;
    return d;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = static_cast<std::uint16_t>(a.exp[i] + b.exp[i]);
    return m;
  }
  bool divides(const Monomial& b) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp[i] > b.exp[i]) return false;
    return true;
  }
  /// b / *this, assuming divides(b).
  Monomial cofactor(const Monomial& b) const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = static_cast<std::uint16_t>(b.exp[i] - exp[i]);
    return m;
  }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = std::max(a.exp[i], b.exp[i]);
    return m;
  }
  static bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (a.exp[i] && b.exp[i]) return false;
    return true;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.exp != b.exp; }
};

/// Graded reverse lexicographic comparison: true iff a > b.
inline bool grevlex_greater(const Monomial& a, const Monomial& b) {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  for (std::size_t i = kMaxVars; i-- > 0;) {
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i];
  }
  return false;
}

/// Exponent vectors of all monomials of the given degree in n variables, in
/// lexicographic order x0 > x1 > ... (w^3, w^2 x, w^2 y, ... for n = 4).
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  Monomial cur;
  auto rec = [&](auto&& self, std::size_t var, unsigned left) -> void {
    if (var + 1 == nvars) {
      cur.exp[var] = static_cast<std::uint16_t>(left);
      out.push_back(cur);
      cur.exp[var] = 0;
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      cur.exp[var] = static_cast<std::uint16_t>(e);
      self(self, var + 1, left - e);
    }
    cur.exp[var] = 0;
  };
  if (nvars == 0) return out;
  rec(rec, 0, degree);
  return out;
}

template <class K>
struct Term {
  Monomial mono;
  K coeff;
};

template <class K>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::size_t nvars, K zero) : nvars_(nvars), zero_(zero) {
    if (nvars > kMaxVars) throw DomainError("too many variables");
  }

  static Polynomial constant(std::size_t nvars, const K& c) {
    Polynomial p(nvars, c - c);
    if (!tricoble::is_zero(c)) p.terms_.push_back({Monomial{}, c});
    return p;
  }
  static Polynomial variable(std::size_t nvars, std::size_t i, const K& one) {
    Polynomial p(nvars, one - one);
    Monomial m;
    m.exp[i] = 1;
    p.terms_.push_back({m, one});
    return p;
  }
  /// Builds from unsorted terms, merging duplicates and dropping zeros.
  static Polynomial from_terms(std::size_t nvars, K zero, std::vector<Term<K>> terms) {
    Polynomial p(nvars, zero);
    std::sort(terms.begin(), terms.end(),
              [](const Term<K>& a, const Term<K>& b) { return grevlex_greater(a.mono, b.mono); });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
        p.terms_.back().coeff += t.coeff;
      else
        p.terms_.push_back(std::move(t));
      if (tricoble::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
    }
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const K& zero() const { return zero_; }
  K one() const { return one_like(zero_); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term<K>>& terms() const { return terms_; }
  const Term<K>& leading() const { return terms_.front(); }

  K coeff(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return zero_;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.degree()));
    return d;
  }
  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.mono.degree() != terms_.front().mono.degree()) return false;
    return true;
  }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree() == 0); }

  template <class V>
  V evaluate(const std::vector<V>& x) const {
    if (x.size() != nvars_) throw DomainError("evaluate: dimension mismatch");
    V acc = V(zero_);
    for (const auto& t : terms_) {
      V v = V(t.coeff);
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned e = 0; e < t.mono.exp[i]; ++e) v = v * x[i];
      acc = acc + v;
    }
    return acc;
  }
  K operator()(const std::vector<K>& x) const { return evaluate<K>(x); }

  Polynomial derivative(std::size_t var) const {
    std::vector<Term<K>> out;
    for (const auto& t : terms_) {
      if (t.mono.exp[var] == 0) continue;
      Term<K> d = t;
      d.coeff = t.coeff * from_long(zero_, t.mono.exp[var]);
      --d.mono.exp[var];
      out.push_back(d);
    }
    return from_terms(nvars_, zero_, std::move(out));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, a.one()); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, -a.one()); }
  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<Term<K>> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) out.push_back({x.mono * y.mono, x.coeff * y.coeff});
    return from_terms(a.nvars_, a.zero_, std::move(out));
  }
  friend Polynomial operator*(const K& c, const Polynomial& a) {
    if (tricoble::is_zero(c)) return Polynomial(a.nvars_, a.zero_);
    Polynomial r = a;
    for (auto& t : r.terms_) t.coeff = c * t.coeff;
    return r;
  }
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }

  /// this - c * m * g, the elementary reduction step.
  Polynomial sub_mul(const K& c, const Monomial& m, const Polynomial& g) const {
    Polynomial r(nvars_, zero_);
    r.terms_.reserve(terms_.size() + g.terms_.size());
    auto i = terms_.begin();
    auto j = g.terms_.begin();
    while (i != terms_.end() || j != g.terms_.end()) {
      if (j == g.terms_.end()) {
        r.terms_.push_back(*i++);
        continue;
      }
      Monomial mj = m * j->mono;
      if (i == terms_.end() || grevlex_greater(mj, i->mono)) {
        r.terms_.push_back({mj, -(c * j->coeff)});
        ++j;
      } else if (i->mono == mj) {
        K v = i->coeff - c * j->coeff;
        if (!tricoble::is_zero(v)) r.terms_.push_back({mj, v});
        ++i;
        ++j;
      } else {
        r.terms_.push_back(*i++);
      }
    }
    return r;
  }

  /// Removes and returns the leading term.
  Term<K> take_leading() {
    Term<K> t = std::move(terms_.front());
    terms_.erase(terms_.begin());
    return t;
  }
  /// Appends a term smaller than every stored term.
  void append_smaller(Term<K> t) { terms_.push_back(std::move(t)); }

  /// Divides by the leading coefficient.
  Polynomial monic() const {
    if (terms_.empty()) return *this;
    K inv = one() / terms_.front().coeff;
    return inv * *this;
  }

  /// Substitutes x_i -> images[i]; images share a common variable count.
  Polynomial substitute(const std::vector<Polynomial>& images) const {
    if (images.size() != nvars_) throw DomainError("substitute: wrong number of images");
    const std::size_t nv = images.empty() ? 0 : images.front().nvars_;
    Polynomial acc(nv, zero_);
    std::map<std::pair<std::size_t, unsigned>, Polynomial> powers;
    auto power = [&](std::size_t var, unsigned e) -> const Polynomial& {
      auto key = std::make_pair(var, e);
      auto it = powers.find(key);
      if (it != powers.end()) return it->second;
      Polynomial p = e == 0 ? constant(nv, one()) : power_of(images[var], e);
      return powers.emplace(key, std::move(p)).first->second;
    };
    for (const auto& t : terms_) {
      Polynomial v = constant(nv, t.coeff);
      for (std::size_t i = 0; i < nvars_; ++i)
        if (t.mono.exp[i]) v = v * power(i, t.mono.exp[i]);
      acc += v;
    }
    return acc;
  }

  static Polynomial power_of(const Polynomial& p, unsigned e) {
    Polynomial r = constant(p.nvars_, p.one());
    for (unsigned k = 0; k < e; ++k) r = r * p;
    return r;
  }

  /// Sets x_var = value and removes that variable (renumbering the rest).
  Polynomial specialize(std::size_t var, const K& value) const {
    std::vector<Term<K>> out;
    for (const auto& t : terms_) {
      K c = t.coeff;
      for (unsigned e = 0; e < t.mono.exp[var]; ++e) c = c * value;
      Monomial m;
      for (std::size_t i = 0, j = 0; i < nvars_; ++i) {
        if (i == var) continue;
        m.exp[j++] = t.mono.exp[i];
      }
      out.push_back({m, c});
    }
    return from_terms(nvars_ - 1, zero_, std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].mono != b.terms_[i].mono || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    return true;
  }

  std::string to_string(const std::vector<std::string>& names = {"w", "x", "y", "z"}) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
      std::ostringstream c;
      c << t.coeff;
      std::string cs = c.str();
      const bool negative = cs[0] == '-';
      if (negative) cs.erase(0, 1);
      if (s.empty())
        s += negative ? "-" : "";
      else
        s += negative ? " - " : " + ";
      std::vector<std::string> factors;
      if (cs != "1" || t.mono.degree() == 0) factors.push_back(cs);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (!t.mono.exp[i]) continue;
        factors.push_back(names[i] + (t.mono.exp[i] > 1 ? "^" + std::to_string(t.mono.exp[i]) : ""));
      }
      for (std::size_t k = 0; k < factors.size(); ++k) s += (k ? "*" : "") + factors[k];
    }
    return s;
  }

 private:
  static Polynomial combine(const Polynomial& a, const Polynomial& b, const K& sb) {
    if (a.nvars_ != b.nvars_) throw DomainError("polynomial variable count mismatch");
    return a.sub_mul(-sb, Monomial{}, b);
  }

  std::size_t nvars_ = 0;
  K zero_{};
  std::vector<Term<K>> terms_;
};

}  // namespace tricoble
