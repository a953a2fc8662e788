#pragma once

// Neron-Severi lattice of the blow-up of a cubic surface (itself the plane
// blown up at six points) at k further pairs of points. Basis
// H, E1..E6, then two exceptional classes per pair; intersection form
// diag(1, -1, ..., -1).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tricoble/errors.hpp"
#include "tricoble/field.hpp"
#include "tricoble/matrix.hpp"
#include "tricoble/univariate.hpp"

namespace tricoble {

inline std::size_t ns_rank(std::size_t pairs) { return 7 + 2 * pairs; }

inline Matrix<Integer> intersection_form(std::size_t rank) {
  Matrix<Integer> j(rank, rank);
  j(0, 0) = 1;
  for (std::size_t i = 1; i < rank; ++i) j(i, i) = -1;
  return j;
}

/// K = -3H + sum of all exceptional classes.
inline std::vector<Integer> canonical_class(std::size_t rank) {
  std::vector<Integer> k(rank, Integer(1));
  k[0] = -3;
  return k;
}

inline Integer intersect(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  Integer s = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) s -= a[i] * b[i];
  return s;
}

/// Integer matrix preserving the intersection form (checked on construction).
class LatticeMap {
 public:
  explicit LatticeMap(Matrix<Integer> m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw DomainError("lattice map must be square");
    const auto j = intersection_form(m_.rows());
    if (!(m_.transpose() * j * m_ == j)) throw ValidationError("matrix does not preserve the intersection form");
  }

  const Matrix<Integer>& matrix() const { return m_; }
  std::size_t rank() const { return m_.rows(); }

  friend LatticeMap operator*(const LatticeMap& a, const LatticeMap& b) { return LatticeMap(a.m_ * b.m_); }
  friend bool operator==(const LatticeMap& a, const LatticeMap& b) { return a.m_ == b.m_; }

 private:
  Matrix<Integer> m_;
};

/// Classical pullback of the Bertini involution of a degree one del Pezzo
/// surface in the basis H, E1..E8.
inline Matrix<Integer> bertini_matrix9() {
  Matrix<Integer> m(9, 9);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) {
      if (i == 0)
        m(i, j) = j == 0 ? 17 : 6;
      else if (j == 0)
        m(i, j) = -6;
      else
        m(i, j) = i == j ? -3 : -2;
    }
  return m;
}

/// tau* for pair `index` (1-based) among `pairs`: the 9x9 matrix on
/// H, E1..E6 and the pair's two classes, the identity elsewhere.
inline LatticeMap bertini_block(std::size_t index, std::size_t pairs) {
  if (index < 1 || index > pairs) throw DomainError("bertini_block: pair index out of range");
  const std::size_t n = ns_rank(pairs);
  std::vector<std::size_t> active{0, 1, 2, 3, 4, 5, 6, 7 + 2 * (index - 1), 8 + 2 * (index - 1)};
  const auto t = bertini_matrix9();
  Matrix<Integer> m = Matrix<Integer>::identity(n);
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = 0; b < 9; ++b) m(active[a], active[b]) = t(a, b);
  return LatticeMap(std::move(m));
}

/// Pullback of phi = tau_1 o tau_2 o ... o tau_k, i.e. tau_k* ... tau_1*.
/// For k = 3 this is tau_r* tau_q* tau_p*, which reproduces the published
/// 13 x 13 matrix with the natural basis order.
inline LatticeMap phi_pullback(std::size_t pairs = 3) {
  if (pairs < 1) throw DomainError("phi_pullback: need at least one pair");
  LatticeMap m = bertini_block(1, pairs);
  for (std::size_t i = 2; i <= pairs; ++i) m = bertini_block(i, pairs) * m;
  return m;
}

/// A real number (p + q sqrt(d)) with p, q rational and d squarefree > 1, or
/// a rational when q = 0.
struct QuadraticIrrational {
  Rational p;
  Rational q;
  Integer d = 1;

  std::string to_string() const {
    if (sgn(q) == 0) return p.get_str();
    std::string s = sgn(p) != 0 ? p.get_str() + (sgn(q) > 0 ? "+" : "-") : (sgn(q) < 0 ? "-" : "");
    Rational aq = abs(q);
    if (aq != 1) s += aq.get_str() + "*";
    return s + "sqrt(" + d.get_str() + ")";
  }
};

struct DynamicalDegree {
  IntPolynomial charpoly;
  RationalInterval interval;              // contains lambda_1, width <= eps
  std::optional<QuadraticIrrational> exact;  // when the dominant root is rational or quadratic
};

namespace detail {

/// Writes n = s^2 d with d squarefree (trial division; n is small here).
inline std::pair<Integer, Integer> split_square(Integer n) {
  Integer s = 1, d = 1;
  for (Integer f = 2; f * f <= n; ++f) {
    while (n % (f * f) == 0) {
      n /= f * f;
      s *= f;
    }
    if (n % f == 0) {
      n /= f;
      d *= f;
    }
  }
  return {s, d * n};
}

}  // namespace detail

/// Largest real root of the characteristic polynomial. Rational roots are
/// divided out first; if a quadratic factor remains its larger root is given
/// exactly. The interval always comes from Sturm isolation of the factor
/// that carries the dominant root.
inline DynamicalDegree dynamical_degree(const LatticeMap& map, const Rational& eps) {
  DynamicalDegree out;
  out.charpoly = char_poly(map.matrix());
  IntPolynomial rest = out.charpoly;
  std::optional<Rational> top_rational;
  for (const auto& r : small_rational_roots(out.charpoly)) {
    const IntPolynomial lin({Integer(-r.get_num()), Integer(r.get_den())});
    for (;;) {
      try {
        rest = exact_divide(rest, lin);
      } catch (const DomainError&) {
        break;
      }
    }
    if (!top_rational || r > *top_rational) top_rational = r;
  }
  if (rest.degree() == 2) {
    const Integer& a = rest.coeffs()[2];
    const Integer& b = rest.coeffs()[1];
    const Integer& c = rest.coeffs()[0];
    const Integer disc = b * b - 4 * a * c;
    if (sgn(disc) > 0) {
      auto [s, d] = detail::split_square(disc);
      QuadraticIrrational root{make_rational(-b, 2 * a), make_rational(s, 2 * abs(a)), d};
      if (d == 1) root = {root.p + root.q, Rational(0), Integer(1)};
      const auto iv = dominant_real_root(rest, eps);
      if (!top_rational || iv.lo >= *top_rational) {
        out.exact = root;
        out.interval = iv;
        return out;
      }
    }
  }
  if (rest.degree() <= 0 && top_rational) {
    out.exact = QuadraticIrrational{*top_rational, Rational(0), Integer(1)};
    out.interval = {*top_rational, *top_rational};
    return out;
  }
  out.interval = dominant_real_root(out.charpoly, eps);
  return out;
}

/// Basis of the 1-eigenspace as primitive integer vectors.
inline std::vector<std::vector<Integer>> fixed_space(const LatticeMap& map) {
  const auto& m = map.matrix();
  return kernel_basis(to_rational(m - Matrix<Integer>::identity(m.rows())));
}

}  // namespace tricoble
