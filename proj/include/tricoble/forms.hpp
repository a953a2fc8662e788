#pragma once

// Homogeneous forms in 3 or 4 variables and binary forms in (s, t):
// evaluation, gradients, and restriction to planes and lines.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tricoble/errors.hpp"
#include "tricoble/field.hpp"
#include "tricoble/matrix.hpp"
#include "tricoble/polynomial.hpp"
#include "tricoble/univariate.hpp"

namespace tricoble {

template <class K>
using Vec = std::vector<K>;

template <class K>
Vec<K> lin_comb(const K& a, const Vec<K>& x, const K& b, const Vec<K>& y) {
  Vec<K> r;
  r.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r.push_back(a * x[i] + b * y[i]);
  return r;
}

template <class K>
K dot(const Vec<K>& a, const Vec<K>& b) {
  if (a.size() != b.size()) throw DomainError("dot: dimension mismatch");
  K acc = a.empty() ? K{} : a[0] - a[0];
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

/// Rank of the matrix whose rows are the given vectors.
template <class K>
std::size_t rank_of(const std::vector<Vec<K>>& rows) {
  Matrix<K> m(0, 0, rows.front()[0] - rows.front()[0]);
  for (const auto& r : rows) m.append_row(r);
  return rank(m);
}

/// Binary form sum_i c_i s^(d-i) t^i of formal degree d.
template <class K>
class BinaryForm {
 public:
  BinaryForm() = default;
  BinaryForm(unsigned degree, Vec<K> coeffs) : degree_(degree), c_(std::move(coeffs)) {
    if (c_.size() != degree + 1) throw DomainError("binary form: wrong coefficient count");
  }

  unsigned degree() const { return degree_; }
  const Vec<K>& coeffs() const { return c_; }
  /// Coefficient of s^(d-i) t^i.
  const K& operator[](std::size_t i) const { return c_[i]; }
  bool is_zero() const { return is_zero_vector(c_); }

  K operator()(const K& s, const K& t) const {
    K acc = c_[0] - c_[0];
    for (std::size_t i = 0; i <= degree_; ++i) {
      K term = c_[i];
      for (std::size_t k = 0; k < degree_ - i; ++k) term *= s;
      for (std::size_t k = 0; k < i; ++k) term *= t;
      acc += term;
    }
    return acc;
  }

  /// Dehomogenization at s = 1, as a polynomial in t.
  UPoly<K> in_t() const { return UPoly<K>(c_, c_[0] - c_[0]); }

  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    Vec<K> r(a.degree_ + b.degree_ + 1, a.c_[0] - a.c_[0]);
    for (std::size_t i = 0; i <= a.degree_; ++i)
      for (std::size_t j = 0; j <= b.degree_; ++j) r[i + j] += a.c_[i] * b.c_[j];
    return BinaryForm(a.degree_ + b.degree_, std::move(r));
  }
  friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.degree_ == b.degree_ && a.c_ == b.c_; }

  /// Exact quotient num / div as binary forms; throws DomainError when div
  /// does not divide num.
  friend BinaryForm exact_divide(const BinaryForm& num, const BinaryForm& div) {
    if (div.is_zero()) throw DomainError("binary form division by zero");
    if (div.degree_ > num.degree_) throw DomainError("exact_divide: nonzero remainder");
    const unsigned qd = num.degree_ - div.degree_;
    if (num.is_zero()) return BinaryForm(qd, Vec<K>(qd + 1, num.c_[0]));
    UPoly<K> q = exact_divide(num.in_t(), div.in_t());
    if (q.degree() > static_cast<long>(qd)) throw DomainError("exact_divide: nonzero remainder");
    Vec<K> c(qd + 1, num.c_[0] - num.c_[0]);
    for (std::size_t i = 0; i < q.coeffs().size(); ++i) c[i] = q.coeffs()[i];
    return BinaryForm(qd, std::move(c));
  }

  /// Linear form alpha*s + beta*t.
  static BinaryForm linear(const K& alpha, const K& beta) { return BinaryForm(1, {alpha, beta}); }

 private:
  unsigned degree_ = 0;
  Vec<K> c_;
};

template <class K>
class HomogeneousForm {
 public:
  HomogeneousForm() = default;
  HomogeneousForm(Polynomial<K> p, unsigned degree) : poly_(std::move(p)), degree_(degree) {
    if (poly_.nvars() != 3 && poly_.nvars() != 4 && poly_.nvars() != 2)
      throw DomainError("homogeneous form: unsupported number of variables");
    for (const auto& t : poly_.terms())
      if (t.mono.degree() != degree_) throw DomainError("homogeneous form: term of wrong degree");
  }

  /// Builds a form from coefficients listed in lexicographic monomial order
  /// (see monomials_of_degree).
  static HomogeneousForm from_coefficients(std::size_t nvars, unsigned degree, const Vec<K>& coeffs) {
    const auto monos = monomials_of_degree(nvars, degree);
    if (coeffs.size() != monos.size())
      throw DomainError("form needs " + std::to_string(monos.size()) + " coefficients, got " +
                        std::to_string(coeffs.size()));
    std::vector<Term<K>> terms;
    for (std::size_t i = 0; i < monos.size(); ++i) terms.push_back({monos[i], coeffs[i]});
    return HomogeneousForm(Polynomial<K>::from_terms(nvars, coeffs[0] - coeffs[0], std::move(terms)), degree);
  }

  std::size_t nvars() const { return poly_.nvars(); }
  unsigned degree() const { return degree_; }
  const Polynomial<K>& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }
  const K& zero() const { return poly_.zero(); }

  /// Coefficients in lexicographic monomial order.
  Vec<K> coefficients() const {
    Vec<K> out;
    for (const auto& m : monomials_of_degree(nvars(), degree_)) out.push_back(poly_.coeff(m));
    return out;
  }

  K operator()(const Vec<K>& p) const { return poly_(p); }

  /// Partial derivatives, forms of degree - 1.
  std::vector<HomogeneousForm> gradient() const {
    if (degree_ == 0) throw DomainError("gradient of a constant form");
    std::vector<HomogeneousForm> g;
    for (std::size_t i = 0; i < nvars(); ++i) g.emplace_back(poly_.derivative(i), degree_ - 1);
    return g;
  }

  Vec<K> gradient_at(const Vec<K>& p) const {
    Vec<K> out;
    for (std::size_t i = 0; i < nvars(); ++i) out.push_back(poly_.derivative(i)(p));
    return out;
  }

  /// Canonical scaling of the coefficient vector (see normalize_projective).
  HomogeneousForm normalized() const {
    if (is_zero()) return *this;
    return from_coefficients(nvars(), degree_, normalize_projective(coefficients()));
  }

  std::string to_string() const {
    if (nvars() == 4) return poly_.to_string({"w", "x", "y", "z"});
    if (nvars() == 3) return poly_.to_string({"u", "v", "t"});
    return poly_.to_string({"s", "t"});
  }

  friend bool operator==(const HomogeneousForm& a, const HomogeneousForm& b) {
    return a.degree_ == b.degree_ && a.poly_ == b.poly_;
  }

 private:
  Polynomial<K> poly_;
  unsigned degree_ = 0;
};

template <class K>
K evaluate(const HomogeneousForm<K>& f, const Vec<K>& p) {
  return f(p);
}

template <class K>
std::vector<HomogeneousForm<K>> gradient(const HomogeneousForm<K>& f) {
  return f.gradient();
}

/// g(u, v, t) = f(u a + v b + t c).
template <class K>
HomogeneousForm<K> restrict_to_plane(const HomogeneousForm<K>& f, const Vec<K>& a, const Vec<K>& b, const Vec<K>& c) {
  if (a.size() != f.nvars() || b.size() != f.nvars() || c.size() != f.nvars())
    throw DomainError("restrict_to_plane: dimension mismatch");
  if (rank_of<K>({a, b, c}) < 3) throw DegenerateError("restrict_to_plane: frame points are dependent");
  const K zero = f.zero();
  const K one = one_like(zero);
  std::vector<Polynomial<K>> images;
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    Polynomial<K> li = a[i] * Polynomial<K>::variable(3, 0, one) + b[i] * Polynomial<K>::variable(3, 1, one);
    li += c[i] * Polynomial<K>::variable(3, 2, one);
    images.push_back(std::move(li));
  }
  return HomogeneousForm<K>(f.poly().substitute(images), f.degree());
}

/// g(s, t) = f(s a + t b); identically zero iff the line lies on V(f).
template <class K>
BinaryForm<K> restrict_to_line(const HomogeneousForm<K>& f, const Vec<K>& a, const Vec<K>& b) {
  if (a.size() != f.nvars() || b.size() != f.nvars()) throw DomainError("restrict_to_line: dimension mismatch");
  if (rank_of<K>({a, b}) < 2) throw DegenerateError("restrict_to_line: points coincide projectively");
  const K zero = f.zero();
  const K one = one_like(zero);
  std::vector<Polynomial<K>> images;
  for (std::size_t i = 0; i < f.nvars(); ++i)
    images.push_back(a[i] * Polynomial<K>::variable(2, 0, one) + b[i] * Polynomial<K>::variable(2, 1, one));
  auto g = f.poly().substitute(images);
  Vec<K> c(f.degree() + 1, zero);
  for (const auto& t : g.terms()) c[t.mono.exp[1]] = t.coeff;
  return BinaryForm<K>(f.degree(), std::move(c));
}

/// Reduces an integer form modulo p.
inline HomogeneousForm<Fp> reduce_mod(const HomogeneousForm<Rational>& f, const GF& field) {
  Vec<Fp> c;
  for (const auto& x : f.coefficients()) {
    if (x.get_den() != 1) throw DomainError("reduce_mod: form has non-integer coefficients");
    c.push_back(field(Integer(x.get_num())));
  }
  return HomogeneousForm<Fp>::from_coefficients(f.nvars(), f.degree(), c);
}

inline Vec<Fp> reduce_mod(const Vec<Rational>& v, const GF& field) {
  Vec<Fp> out;
  for (const auto& x : v) {
    if (x.get_den() != 1) throw DomainError("reduce_mod: vector has non-integer entries");
    out.push_back(field(Integer(x.get_num())));
  }
  return out;
}

}  // namespace tricoble
