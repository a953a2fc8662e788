#pragma once

// Dense exact matrices: row reduction over a field, null spaces, fraction-free
// determinants of integer matrices and saturation of integer lattices.

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include "tricoble/errors.hpp"
#include "tricoble/field.hpp"

namespace tricoble {

inline Integer one_like(const Integer&) { return 1; }
inline Rational one_like(const Rational&) { return 1; }
inline Fp one_like(const Fp& x) { return Fp(x.modulus(), 1); }

template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, K zero = K{})
      : rows_(rows), cols_(cols), zero_(zero), data_(rows * cols, zero) {}

  Matrix(std::initializer_list<std::initializer_list<K>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DomainError("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
    if (!data_.empty()) zero_ = data_.front() - data_.front();
  }

  static Matrix identity(std::size_t n, K zero = K{}) {
    Matrix m(n, n, zero);
    K one = one_like(zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const K& zero() const { return zero_; }

  K& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const K& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<K> row(std::size_t r) const {
    return std::vector<K>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  void set_row(std::size_t r, const std::vector<K>& v) {
    if (v.size() != cols_) throw DomainError("row length mismatch");
    std::copy(v.begin(), v.end(), data_.begin() + r * cols_);
  }
  void append_row(const std::vector<K>& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_) throw DomainError("row length mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_, zero_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_, a.zero_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix difference dimension mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    if (v.size() != cols_) throw DomainError("matrix-vector dimension mismatch");
    std::vector<K> out(rows_, zero_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << '[';
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
      os << "]\n";
    }
    return os;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  K zero_{};
  std::vector<K> data_;
};

template <class K>
struct RrefResult {
  Matrix<K> reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row echelon form over the field K.
template <class K>
RrefResult<K> rref(Matrix<K> m) {
  RrefResult<K> res;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    K inv = one_like(m(r, c)) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      K f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  res.reduced = std::move(m);
  return res;
}

template <class K>
std::size_t rank(const Matrix<K>& m) {
  return rref(m).rank;
}

/// Basis of the right null space over K, one vector per free column.
template <class K>
std::vector<std::vector<K>> null_space(const Matrix<K>& m) {
  auto res = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : res.pivots) is_pivot[p] = true;
  std::vector<std::vector<K>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<K> v(m.cols(), m.zero());
    v[f] = one_like(m.zero());
    for (std::size_t i = 0; i < res.pivots.size(); ++i) v[res.pivots[i]] = -res.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Null space of a rational matrix as primitive integer vectors
/// (content 1, first nonzero entry positive); count = cols - rank.
inline std::vector<std::vector<Integer>> kernel_basis(const Matrix<Rational>& m) {
  std::vector<std::vector<Integer>> out;
  for (const auto& v : null_space(m)) out.push_back(primitive_integer(v));
  return out;
}

inline Matrix<Rational> to_rational(const Matrix<Integer>& m) {
  Matrix<Rational> q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j);
  return q;
}

/// Determinant of a square integer matrix by Bareiss fraction-free elimination.
inline Integer determinant(Matrix<Integer> m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m(k, k))) {
      std::size_t piv = k + 1;
      while (piv < n && is_zero(m(piv, k))) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Saturation (L tensor Q) intersect Z^n of the lattice spanned by the given
/// linearly independent integer rows. Column Hermite reduction M V = [D | 0]
/// with V unimodular; the first r rows of V^{-1} span the saturation.
inline std::vector<std::vector<Integer>> saturate(const std::vector<std::vector<Integer>>& rows) {
  if (rows.empty()) return {};
  const std::size_t r = rows.size(), n = rows.front().size();
  Matrix<Integer> m(r, n);
  for (std::size_t i = 0; i < r; ++i) m.set_row(i, rows[i]);
  Matrix<Integer> winv = Matrix<Integer>::identity(n);

  // column ops on m, matching inverse row ops on winv
  auto add_col = [&](std::size_t dst, std::size_t src, const Integer& c) {  // col_dst += c col_src
    for (std::size_t i = 0; i < r; ++i) m(i, dst) += c * m(i, src);
    for (std::size_t j = 0; j < n; ++j) winv(src, j) -= c * winv(dst, j);
  };
  auto swap_col = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < r; ++i) std::swap(m(i, a), m(i, b));
    for (std::size_t j = 0; j < n; ++j) std::swap(winv(a, j), winv(b, j));
  };

  for (std::size_t i = 0; i < r; ++i) {
    // gcd-reduce row i over columns i..n-1 into column i
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = i; j < n; ++j)
        if (!is_zero(m(i, j)) && (best == n || abs(m(i, j)) < abs(m(i, best)))) best = j;
      if (best == n) throw DomainError("saturate: rows are linearly dependent");
      if (best != i) swap_col(i, best);
      bool done = true;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (is_zero(m(i, j))) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, j).get_mpz_t(), m(i, i).get_mpz_t());
        add_col(j, i, -q);
        if (!is_zero(m(i, j))) done = false;
      }
      if (done) break;
    }
  }
  std::vector<std::vector<Integer>> out;
  for (std::size_t i = 0; i < r; ++i) out.push_back(winv.row(i));
  return out;
}

}  // namespace tricoble
