#pragma once

// Dense univariate polynomials over an exact ring, exact division, integer
// characteristic polynomials (Berkowitz, division free) and certified
// isolation of the largest real root by Sturm sequences.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tricoble/errors.hpp"
#include "tricoble/field.hpp"
#include "tricoble/matrix.hpp"

namespace tricoble {

/// Coefficients in ascending degree; trailing zeros are trimmed so that the
/// zero polynomial has no coefficients.
template <class K>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<K> coeffs, K zero = K{}) : zero_(zero), c_(std::move(coeffs)) { trim(); }

  static UPoly monomial(const K& c, std::size_t deg, K zero = K{}) {
    std::vector<K> v(deg + 1, zero);
    v[deg] = c;
    return UPoly(std::move(v), zero);
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<K>& coeffs() const { return c_; }
  const K& zero() const { return zero_; }
  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }
  const K& leading() const { return c_.back(); }

  template <class V>
  V operator()(const V& x) const {
    V acc = V(zero_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + V(*it);
    return acc;
  }

  UPoly derivative() const {
    std::vector<K> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * from_long(zero_, static_cast<long>(i)));
    return UPoly(std::move(d), zero_);
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<K> r(std::max(a.c_.size(), b.c_.size()), a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return UPoly(std::move(r), a.zero_);
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<K> r(std::max(a.c_.size(), b.c_.size()), a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return UPoly(std::move(r), a.zero_);
  }
  UPoly operator-() const {
    std::vector<K> r = c_;
    for (auto& x : r) x = -x;
    return UPoly(std::move(r), zero_);
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly({}, a.zero_);
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r), a.zero_);
  }
  friend UPoly operator*(const K& s, const UPoly& a) {
    std::vector<K> r = a.c_;
    for (auto& x : r) x = s * x;
    return UPoly(std::move(r), a.zero_);
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  friend std::ostream& operator<<(std::ostream& os, const UPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (long i = p.degree(); i >= 0; --i) {
      const K& c = p.c_[static_cast<std::size_t>(i)];
      if (tricoble::is_zero(c)) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      if (i > 0) os << "*t^" << i;
    }
    return os;
  }

 private:
  void trim() {
    while (!c_.empty() && tricoble::is_zero(c_.back())) c_.pop_back();
  }

  K zero_{};
  std::vector<K> c_;
};

using IntPolynomial = UPoly<Integer>;

/// Quotient and remainder over a field.
template <class K>
std::pair<UPoly<K>, UPoly<K>> divmod(const UPoly<K>& num, const UPoly<K>& div) {
  if (div.is_zero()) throw DomainError("polynomial division by zero");
  const K zero = num.zero();
  std::vector<K> rem = num.coeffs();
  if (num.degree() < div.degree()) return {UPoly<K>({}, zero), num};
  std::vector<K> q(static_cast<std::size_t>(num.degree() - div.degree() + 1), zero);
  const K lead = div.leading();
  const std::size_t dd = static_cast<std::size_t>(div.degree());
  for (long i = num.degree(); i >= div.degree(); --i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    if (is_zero(rem[ui])) continue;
    K f = rem[ui] / lead;
    q[ui - dd] = f;
    for (std::size_t j = 0; j <= dd; ++j) rem[ui - dd + j] -= f * div.coeffs()[j];
  }
  return {UPoly<K>(std::move(q), zero), UPoly<K>(std::move(rem), zero)};
}

/// num / div; throws DomainError unless the division is exact.
template <class K>
UPoly<K> exact_divide(const UPoly<K>& num, const UPoly<K>& div) {
  auto [q, r] = divmod(num, div);
  if (!r.is_zero()) throw DomainError("exact_divide: nonzero remainder");
  return q;
}

/// Exact division of integer polynomials (the quotient must have integer
/// coefficients and the remainder must vanish).
inline IntPolynomial exact_divide(const IntPolynomial& num, const IntPolynomial& div) {
  if (div.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Integer> rem = num.coeffs();
  if (num.degree() < div.degree()) {
    if (num.is_zero()) return IntPolynomial{};
    throw DomainError("exact_divide: nonzero remainder");
  }
  std::vector<Integer> q(static_cast<std::size_t>(num.degree() - div.degree() + 1));
  const std::size_t dd = static_cast<std::size_t>(div.degree());
  for (long i = num.degree(); i >= div.degree(); --i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    if (is_zero(rem[ui])) continue;
    if (!mpz_divisible_p(rem[ui].get_mpz_t(), div.leading().get_mpz_t()))
      throw DomainError("exact_divide: nonzero remainder");
    Integer f = rem[ui] / div.leading();
    q[ui - dd] = f;
    for (std::size_t j = 0; j <= dd; ++j) rem[ui - dd + j] -= f * div.coeffs()[j];
  }
  for (const auto& x : rem)
    if (!is_zero(x)) throw DomainError("exact_divide: nonzero remainder");
  return IntPolynomial(std::move(q));
}

inline UPoly<Rational> to_rational(const IntPolynomial& p) {
  return UPoly<Rational>(std::vector<Rational>(p.coeffs().begin(), p.coeffs().end()));
}

/// Primitive integer multiple of a rational polynomial with positive leading coefficient.
inline IntPolynomial primitive_part(const UPoly<Rational>& p) {
  if (p.is_zero()) return {};
  auto v = primitive_integer(p.coeffs());
  if (sgn(v.back()) < 0)
    for (auto& x : v) x = -x;
  return IntPolynomial(std::move(v));
}

/// det(tI - m) by the Berkowitz algorithm; uses only ring operations, so the
/// result is exact over the integers. Monic of degree n.
inline IntPolynomial char_poly(const Matrix<Integer>& m) {
  if (m.rows() != m.cols()) throw DomainError("char_poly: matrix is not square");
  const std::size_t n = m.rows();
  // c holds coefficients of the char poly of the leading r x r block,
  // highest degree first.
  std::vector<Integer> c{Integer(1)};
  for (std::size_t r = 0; r < n; ++r) {
    // block [[A, R],[S, a]] where A is r x r leading block, a = m(r,r)
    // Toeplitz column: 1, -a, -R S, -R A S, -R A^2 S, ...
    std::vector<Integer> tcol(r + 2);
    tcol[0] = 1;
    tcol[1] = -m(r, r);
    std::vector<Integer> s(r);  // A^k S
    for (std::size_t i = 0; i < r; ++i) s[i] = m(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      Integer dot = 0;
      for (std::size_t i = 0; i < r; ++i) dot += m(r, i) * s[i];
      tcol[k + 2] = -dot;
      std::vector<Integer> ns(r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) ns[i] += m(i, j) * s[j];
      s = std::move(ns);
    }
    std::vector<Integer> nc(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < c.size(); ++j) nc[i] += tcol[i - j] * c[j];
    c = std::move(nc);
  }
  std::reverse(c.begin(), c.end());
  return IntPolynomial(std::move(c));
}

/// Evaluates an integer polynomial at a square matrix (Horner).
inline Matrix<Integer> evaluate_at_matrix(const IntPolynomial& p, const Matrix<Integer>& m) {
  Matrix<Integer> acc(m.rows(), m.cols());
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * m;
    for (std::size_t i = 0; i < m.rows(); ++i) acc(i, i) += *it;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Real roots

inline int sign_at(const UPoly<Rational>& p, const Rational& x) { return sgn(p(x)); }

/// Square-free part over Q, made primitive.
inline UPoly<Rational> square_free(const UPoly<Rational>& p) {
  auto a = p, b = p.derivative();
  if (b.is_zero()) return p;
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return to_rational(primitive_part(exact_divide(p, a)));
}

/// Sturm chain p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k).
inline std::vector<UPoly<Rational>> sturm_sequence(const UPoly<Rational>& p) {
  std::vector<UPoly<Rational>> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    auto r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    // scaling by a positive constant keeps the sign pattern
    Rational scale = 1 / abs(r.leading());
    seq.push_back(-(scale * r));
  }
  return seq;
}

inline int sign_variations(const std::vector<UPoly<Rational>>& seq, const Rational& x) {
  int last = 0, count = 0;
  for (const auto& p : seq) {
    int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

/// Closed interval [lo, hi] with rational endpoints.
struct RationalInterval {
  Rational lo;
  Rational hi;
  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
inline Rational simplest_rational(const Rational& lo, const Rational& hi) {
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return 0;
  if (sgn(hi) < 0) return -simplest_rational(-hi, -lo);
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // fl < lo <= hi < fl + 1
  Rational r = simplest_rational(1 / (hi - fl), 1 / (lo - fl));
  return Rational(fl) + 1 / r;
}

/// Interval of width <= eps containing the largest real root of p.
/// Sturm counting with bisection; when the root is a simple rational number
/// the degenerate interval [r, r] is returned.
inline RationalInterval dominant_real_root(const IntPolynomial& p, const Rational& eps) {
  if (p.is_zero()) throw DomainError("dominant_real_root: zero polynomial");
  if (sgn(eps) <= 0) throw DomainError("dominant_real_root: eps must be positive");
  const auto q = square_free(to_rational(p));
  if (q.degree() == 0) throw DomainError("dominant_real_root: polynomial has no real root");
  // Cauchy bound
  Rational bound = 0;
  for (std::size_t i = 0; i + 1 < q.coeffs().size(); ++i) bound = std::max(bound, Rational(abs(q.coeffs()[i] / q.leading())));
  bound += 1;
  const auto seq = sturm_sequence(q);
  Rational lo = -bound, hi = bound;
  if (sign_variations(seq, lo) - sign_variations(seq, hi) == 0)
    throw DomainError("dominant_real_root: polynomial has no real root");

  auto count = [&](const Rational& a, const Rational& b) {  // roots in (a, b]
    return sign_variations(seq, a) - sign_variations(seq, b);
  };
  // invariant: the largest root lies in (lo, hi]
  while (hi - lo > eps) {
    Rational mid = (lo + hi) / 2;
    if (count(mid, hi) > 0) {
      lo = mid;
    } else {
      if (sgn(q(mid)) == 0) return {mid, mid};
      hi = mid;
    }
  }
  if (sgn(q(hi)) == 0) return {hi, hi};
  Rational guess = simplest_rational(lo, hi);
  if (sgn(q(guess)) == 0) return {guess, guess};
  return {lo, hi};
}

/// Decimal rendering of a rational with the given number of fractional digits (truncated).
inline std::string to_decimal(const Rational& x, unsigned digits) {
  Integer scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  Integer scaled;
  Integer num = x.get_num() * scale;
  mpz_tdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
  std::string sign = sgn(x) < 0 ? "-" : "";
  Integer a = abs(scaled);
  Integer ip = a / scale, fp = a % scale;
  std::string frac = fp.get_str();
  if (frac.size() < digits) frac.insert(0, digits - frac.size(), '0');
  return sign + ip.get_str() + (digits ? "." + frac : "");
}

/// Rational roots of an integer polynomial, found by trying the divisors
/// d | a_0, e | a_n. Intended for small constant and leading terms.
inline std::vector<Rational> small_rational_roots(const IntPolynomial& p, unsigned long max_divisor = 1000000) {
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;
  auto divisors = [&](Integer n) {
    std::vector<Integer> d;
    n = abs(n);
    if (n > max_divisor) return d;
    for (unsigned long k = 1; k <= n.get_ui(); ++k)
      if (n.get_ui() % k == 0) d.push_back(Integer(k));
    return d;
  };
  std::size_t low = 0;
  while (is_zero(p.coeffs()[low])) ++low;
  if (low > 0) roots.push_back(0);
  const auto num_div = divisors(p.coeffs()[low]);
  const auto den_div = divisors(p.leading());
  const auto qp = to_rational(p);
  for (const auto& a : num_div)
    for (const auto& b : den_div)
      for (int s : {1, -1}) {
        Rational r = make_rational(s * a, b);
        if (sgn(qp(r)) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace tricoble
