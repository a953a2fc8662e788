#pragma once

// Exact LLL reduction of integer lattice bases (rational Gram-Schmidt).

#include <cstddef>
#include <utility>
#include <vector>

#include "tricoble/errors.hpp"
#include "tricoble/field.hpp"

namespace tricoble {

using IntVector = std::vector<Integer>;

namespace detail {

inline Integer round_nearest(const Rational& x) {
  Rational h = x + Rational(1, 2);
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
  return r;
}

inline Rational idot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return Rational(s);
}

struct GramSchmidt {
  std::vector<std::vector<Rational>> mu;
  std::vector<Rational> norms;  // |b*_i|^2
};

inline GramSchmidt gram_schmidt(const std::vector<IntVector>& b) {
  const std::size_t n = b.size();
  GramSchmidt gs;
  gs.mu.assign(n, std::vector<Rational>(n));
  gs.norms.assign(n, Rational(0));
  std::vector<std::vector<Rational>> star(n);
  for (std::size_t i = 0; i < n; ++i) {
    star[i].assign(b[i].begin(), b[i].end());
    for (std::size_t j = 0; j < i; ++j) {
      Rational d = 0;
      for (std::size_t c = 0; c < b[i].size(); ++c) d += Rational(b[i][c]) * star[j][c];
      gs.mu[i][j] = d / gs.norms[j];
      for (std::size_t c = 0; c < b[i].size(); ++c) star[i][c] -= gs.mu[i][j] * star[j][c];
    }
    for (const auto& x : star[i]) gs.norms[i] += x * x;
    if (sgn(gs.norms[i]) == 0) throw DomainError("lll_reduce: basis vectors are linearly dependent");
  }
  return gs;
}

}  // namespace detail

/// delta-LLL reduced basis of the lattice spanned by `basis`.
inline std::vector<IntVector> lll_reduce(std::vector<IntVector> b, const Rational& delta = Rational(3, 4)) {
  if (delta <= Rational(1, 4) || delta >= 1) throw DomainError("lll_reduce: delta must lie in (1/4, 1)");
  const std::size_t n = b.size();
  if (n == 0) return b;
  for (const auto& v : b)
    if (v.size() != b.front().size()) throw DomainError("lll_reduce: vectors of different lengths");
  auto gs = detail::gram_schmidt(b);
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t j = k; j-- > 0;) {
      Integer q = detail::round_nearest(gs.mu[k][j]);
      if (sgn(q) == 0) continue;
      for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[j][c];
      for (std::size_t l = 0; l < j; ++l) gs.mu[k][l] -= Rational(q) * gs.mu[j][l];
      gs.mu[k][j] -= q;
    }
    const Rational& m = gs.mu[k][k - 1];
    if (gs.norms[k] >= (delta - m * m) * gs.norms[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gs = detail::gram_schmidt(b);
      k = k > 1 ? k - 1 : 1;
    }
  }
  return b;
}

/// Checks size reduction (|mu_ij| <= 1/2) and the Lovasz condition.
inline bool is_lll_reduced(const std::vector<IntVector>& b, const Rational& delta = Rational(3, 4)) {
  auto gs = detail::gram_schmidt(b);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs(gs.mu[i][j]) > Rational(1, 2)) return false;
  for (std::size_t k = 1; k < b.size(); ++k) {
    const Rational& m = gs.mu[k][k - 1];
    if (gs.norms[k] < (delta - m * m) * gs.norms[k - 1]) return false;
  }
  return true;
}

inline Integer max_norm(const IntVector& v) {
  Integer m = 0;
  for (const auto& x : v)
    if (abs(x) > m) m = abs(x);
  return m;
}

inline Integer squared_norm(const IntVector& v) {
  Integer s = 0;
  for (const auto& x : v) s += x * x;
  return s;
}

}  // namespace tricoble
