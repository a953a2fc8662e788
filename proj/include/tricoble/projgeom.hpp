#pragma once

// Points and planes of projective space over an exact field, incidence,
// tangent planes, the chord construction on cubic surfaces, and the gluing of
// four plane conics into a quadric.

#include <array>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tricoble/errors.hpp"
#include "tricoble/field.hpp"
#include "tricoble/forms.hpp"
#include "tricoble/matrix.hpp"

namespace tricoble {

namespace detail {

/// Projective vector stored in canonical form (see normalize_projective).
template <class K, class Tag>
class ProjVector {
 public:
  ProjVector() = default;
  explicit ProjVector(const Vec<K>& v) : c_(normalize_projective(v)) {
    if (c_.empty() || is_zero_vector(c_)) throw DomainError("projective vector must be nonzero");
  }

  const Vec<K>& coords() const { return c_; }
  std::size_t size() const { return c_.size(); }
  const K& operator[](std::size_t i) const { return c_[i]; }

  friend bool operator==(const ProjVector& a, const ProjVector& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ProjVector& a, const ProjVector& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const ProjVector& p) {
    os << '(';
    for (std::size_t i = 0; i < p.c_.size(); ++i) os << (i ? " : " : "") << p.c_[i];
    return os << ')';
  }

 private:
  Vec<K> c_;
};

struct PointTag {};
struct PlaneTag {};

}  // namespace detail

template <class K>
using ProjPoint = detail::ProjVector<K, detail::PointTag>;
template <class K>
using ProjPlane = detail::ProjVector<K, detail::PlaneTag>;

/// Builds a rational point from integer coordinates.
inline ProjPoint<Rational> make_point(std::initializer_list<long> coords) {
  Vec<Rational> v;
  for (long c : coords) v.emplace_back(c);
  return ProjPoint<Rational>(v);
}

inline ProjPoint<Fp> reduce_mod(const ProjPoint<Rational>& p, const GF& field) {
  auto v = reduce_mod(p.coords(), field);
  if (is_zero_vector(v)) throw DegenerateError("point reduces to zero modulo " + std::to_string(field.p));
  return ProjPoint<Fp>(v);
}

/// Max |coordinate| of the primitive integer representative.
inline Integer height(const ProjPoint<Rational>& p) {
  Integer h = 0;
  for (const auto& c : p.coords()) {
    Integer a = abs(c.get_num());
    if (a > h) h = a;
  }
  return h;
}

template <class K>
bool incident(const ProjPoint<K>& p, const ProjPlane<K>& h) {
  return is_zero(dot(p.coords(), h.coords()));
}

/// The unique plane through three independent points.
template <class K>
ProjPlane<K> plane_through(const ProjPoint<K>& a, const ProjPoint<K>& b, const ProjPoint<K>& c) {
  Matrix<K> m(0, 0, a[0] - a[0]);
  m.append_row(a.coords());
  m.append_row(b.coords());
  m.append_row(c.coords());
  auto ns = null_space(m);
  if (ns.size() != 1) throw DegenerateError("plane_through: points are collinear or coincident");
  return ProjPlane<K>(ns.front());
}

/// Determinant of the matrix with the given rows, by elimination over K.
template <class K>
K determinant_over_field(Matrix<K> m) {
  const std::size_t n = m.rows();
  K det = one_like(m.zero());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && is_zero(m(piv, c))) ++piv;
    if (piv == n) return m.zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      K f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

template <class K>
struct CoplanarityWitness {
  bool coplanar = false;
  K determinant{};  // of the 4x4 matrix of normalized coordinates
};

template <class K>
CoplanarityWitness<K> coplanar(const ProjPoint<K>& a, const ProjPoint<K>& b, const ProjPoint<K>& c,
                               const ProjPoint<K>& d) {
  Matrix<K> m(0, 0, a[0] - a[0]);
  for (const auto* p : {&a, &b, &c, &d}) m.append_row(p->coords());
  if (m.cols() != 4) throw DomainError("coplanar: points must lie in P^3");
  K det = determinant_over_field(m);
  return {is_zero(det), det};
}

/// The tangent plane of V(f) at a smooth point p, with coefficients grad f(p).
template <class K>
ProjPlane<K> tangent_plane(const HomogeneousForm<K>& f, const ProjPoint<K>& p) {
  if (!is_zero(f(p.coords()))) throw DomainError("tangent_plane: point is not on the hypersurface");
  auto g = f.gradient_at(p.coords());
  if (is_zero_vector(g)) throw DegenerateError("tangent_plane: point is singular (gradient vanishes)");
  return ProjPlane<K>(g);
}

template <class K>
bool line_in_surface(const HomogeneousForm<K>& f, const ProjPoint<K>& a, const ProjPoint<K>& b) {
  return restrict_to_line(f, a.coords(), b.coords()).is_zero();
}

/// Third point of the line ab on the cubic V(f). The restriction
/// f(s a + t b) = s t (c1 s + c2 t) leaves the residual root (c2 : -c1);
/// a tangent line at a (c1 = 0) returns a, at b (c2 = 0) returns b.
template <class K>
ProjPoint<K> third_intersection(const HomogeneousForm<K>& f, const ProjPoint<K>& a, const ProjPoint<K>& b) {
  if (f.degree() != 3) throw DomainError("third_intersection: form is not a cubic");
  if (!is_zero(f(a.coords())) || !is_zero(f(b.coords())))
    throw DomainError("third_intersection: base points must lie on the surface");
  auto g = restrict_to_line(f, a.coords(), b.coords());
  if (g.is_zero()) throw DegenerateError("third_intersection: line is contained in the surface");
  const K& c1 = g[1];
  const K& c2 = g[2];
  const K minus_c1 = -c1;
  return ProjPoint<K>(lin_comb(c2, a.coords(), minus_c1, b.coords()));
}

/// Inverse of a square matrix over K; throws DegenerateError when singular.
template <class K>
Matrix<K> inverse(const Matrix<K>& a) {
  const std::size_t n = a.rows();
  Matrix<K> aug(n, 2 * n, a.zero());
  const K one = one_like(a.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = one;
  }
  auto r = rref(aug);
  if (r.rank < n || r.pivots[n - 1] != n - 1) throw DegenerateError("matrix is singular");
  Matrix<K> inv(n, n, a.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

/// Linear change of variables: g(x) = f(M x).
template <class K>
HomogeneousForm<K> transform(const HomogeneousForm<K>& f, const Matrix<K>& m) {
  const K one = one_like(f.zero());
  std::vector<Polynomial<K>> images;
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    Polynomial<K> li(f.nvars(), f.zero());
    for (std::size_t j = 0; j < f.nvars(); ++j) li += m(i, j) * Polynomial<K>::variable(f.nvars(), j, one);
    images.push_back(std::move(li));
  }
  return HomogeneousForm<K>(f.poly().substitute(images), f.degree());
}

/// Glues four conics into a quadric.
///
/// `frame` holds four independent points p_0..p_3. Conic i lives in the plane
/// through the three points other than p_i and is written in that plane's
/// frame coordinates (the remaining points in increasing index order, as
/// produced by restrict_to_plane). Returns the normalized quadric Q (in
/// ambient coordinates) with Q restricted to plane i equal to conic i up to
/// scale.
template <class K>
HomogeneousForm<K> glue_conics(const std::array<ProjPoint<K>, 4>& frame, const std::array<HomogeneousForm<K>, 4>& conics) {
  const K zero = frame[0][0] - frame[0][0];
  const K one = one_like(zero);
  // cross[i][j] for i<j: coefficient of X_i X_j in conic k (k != i, j)
  std::array<std::array<std::array<K, 4>, 4>, 4> coef{};
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& c = conics[k];
    if (c.nvars() != 3 || c.degree() != 2) throw DomainError("glue_conics: conic " + std::to_string(k) + " is not a ternary quadratic form");
    std::array<std::size_t, 3> idx{};
    for (std::size_t j = 0, n = 0; j < 4; ++j)
      if (j != k) idx[n++] = j;
    for (std::size_t a = 0; a < 3; ++a) {
      Monomial sq;
      sq.exp[a] = 2;
      if (!is_zero(c.poly().coeff(sq)))
        throw DomainError("glue_conics: conic " + std::to_string(k) + " has a square term (misses a frame point)");
    }
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b) {
        Monomial m;
        m.exp[a] = 1;
        m.exp[b] = 1;
        K v = c.poly().coeff(m);
        if (is_zero(v)) throw DegenerateError("glue_conics: conic " + std::to_string(k) + " is degenerate (zero cross term)");
        coef[k][idx[a]][idx[b]] = v;
      }
  }
  const auto& a = coef[0];  // F0: X1 X2, X1 X3, X2 X3
  const auto& b = coef[1];  // F1: X0 X2, X0 X3, X2 X3
  const auto& c = coef[2];  // F2: X0 X1, X0 X3, X1 X3
  const auto& d = coef[3];  // F3: X0 X1, X0 X2, X1 X2
  const std::array<K, 4> dets{
      b[0][2] * c[0][3] * d[0][1] - b[0][3] * c[0][1] * d[0][2],
      a[1][2] * c[1][3] * d[0][1] - a[1][3] * c[0][1] * d[1][2],
      a[1][2] * b[2][3] * d[0][2] - a[2][3] * b[0][2] * d[1][2],
      a[1][3] * b[2][3] * c[0][3] - a[2][3] * b[0][3] * c[1][3],
  };
  for (std::size_t i = 0; i < 4; ++i)
    if (!is_zero(dets[i]))
      throw ValidationError("glue_conics: tangent directions at frame point " + std::to_string(i) + " are not coplanar");

  // scale so that X0X1 and X2X3 coefficients are 1
  const K a12 = a[1][2] / a[2][3], a13 = a[1][3] / a[2][3];
  const K b02 = b[0][2] / b[2][3], b03 = b[0][3] / b[2][3];
  const K c03 = c[0][3] / c[0][1], c13 = c[1][3] / c[0][1];
  const K d02 = d[0][2] / d[0][1], d12 = d[1][2] / d[0][1];
  const K ratio = a12 / d12;
  if (!(b02 / d02 == ratio) || !(a13 / c13 == ratio) || !(b03 / c03 == ratio))
    throw ValidationError("glue_conics: coefficient ratios are inconsistent");

  auto mono = [](std::size_t i, std::size_t j) {
    Monomial m;
    ++m.exp[i];
    ++m.exp[j];
    return m;
  };
  std::vector<Term<K>> terms{{mono(0, 1), ratio}, {mono(0, 2), b02}, {mono(0, 3), b03},
                             {mono(1, 2), a12},   {mono(1, 3), a13}, {mono(2, 3), one}};
  HomogeneousForm<K> in_frame(Polynomial<K>::from_terms(4, zero, std::move(terms)), 2);

  Matrix<K> frame_matrix(4, 4, zero);  // columns are the frame points
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 4; ++i) frame_matrix(i, j) = frame[j][i];
  return transform(in_frame, inverse(frame_matrix)).normalized();
}

}  // namespace tricoble
