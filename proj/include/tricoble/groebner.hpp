#pragma once

// Buchberger's algorithm (grevlex, coprime and chain criteria) and the
// certificates built on it: affine and projective emptiness, the degree of a
// zero-dimensional scheme, and point membership.
//
// Every call owns its state, so independent ideals may be processed from
// different threads.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tricoble/errors.hpp"
#include "tricoble/field.hpp"
#include "tricoble/polynomial.hpp"

namespace tricoble {

inline constexpr std::size_t kDefaultReductionBudget = 1000000;

/// Reduction budget, overridable through TRICOBLE_SPAIR_BUDGET.
inline std::size_t default_reduction_budget() {
  if (const char* env = std::getenv("TRICOBLE_SPAIR_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultReductionBudget;
}

struct GroebnerOptions {
  std::size_t reduction_budget = default_reduction_budget();
};

template <class K>
struct PolyIdeal {
  std::size_t nvars = 0;
  std::vector<Polynomial<K>> generators;
};

template <class K>
struct GroebnerBasis {
  std::vector<Polynomial<K>> elements;  // sorted by ascending leading monomial
  std::size_t reductions = 0;           // elementary reduction steps spent

  bool is_unit() const { return elements.size() == 1 && elements.front().is_constant(); }
};

namespace detail {

template <class K>
class ReductionCounter {
 public:
  explicit ReductionCounter(std::size_t budget) : budget_(budget) {}
  void tick() {
    if (++used_ > budget_)
      throw BudgetExceeded("Groebner reduction budget of " + std::to_string(budget_) + " steps exceeded");
  }
  std::size_t used() const { return used_; }

 private:
  std::size_t budget_;
  std::size_t used_ = 0;
};

/// Full reduction of f modulo the polynomials in g (all nonzero).
template <class K>
Polynomial<K> normal_form(Polynomial<K> f, const std::vector<Polynomial<K>>& g, ReductionCounter<K>& counter) {
  Polynomial<K> rem(f.nvars(), f.zero());
  while (!f.is_zero()) {
    const auto& lt = f.leading();
    const Polynomial<K>* div = nullptr;
    for (const auto& h : g) {
      if (h.leading().mono.divides(lt.mono)) {
        div = &h;
        break;
      }
    }
    if (div) {
      counter.tick();
      K c = lt.coeff / div->leading().coeff;
      Monomial m = div->leading().mono.cofactor(lt.mono);
      f = f.sub_mul(c, m, *div);
    } else {
      rem.append_smaller(f.take_leading());
    }
  }
  return rem;
}

template <class K>
Polynomial<K> s_polynomial(const Polynomial<K>& f, const Polynomial<K>& g) {
  const Monomial l = Monomial::lcm(f.leading().mono, g.leading().mono);
  Polynomial<K> a = (one_like(f.zero()) / f.leading().coeff) *
                    Polynomial<K>::from_terms(f.nvars(), f.zero(), {{f.leading().mono.cofactor(l), one_like(f.zero())}}) * f;
  return a.sub_mul(one_like(f.zero()) / g.leading().coeff, g.leading().mono.cofactor(l), g);
}

}  // namespace detail

/// The reduced Groebner basis of the ideal for grevlex.
template <class K>
GroebnerBasis<K> buchberger(const PolyIdeal<K>& ideal, const GroebnerOptions& opts = {}) {
  detail::ReductionCounter<K> counter(opts.reduction_budget);
  std::vector<Polynomial<K>> basis;
  using Pair = std::pair<std::size_t, std::size_t>;
  std::set<Pair> pending;
  K zero{};
  bool have_zero = false;

  auto unit_basis = [&](const Polynomial<K>& like) {
    GroebnerBasis<K> gb;
    gb.elements.push_back(Polynomial<K>::constant(like.nvars(), one_like(like.zero())));
    gb.reductions = counter.used();
    return gb;
  };

  auto add = [&](Polynomial<K> p) {
    p = p.monic();
    const std::size_t k = basis.size();
    basis.push_back(std::move(p));
    for (std::size_t i = 0; i < k; ++i) pending.insert({i, k});
  };

  for (const auto& g : ideal.generators) {
    if (g.is_zero()) continue;
    if (!have_zero) {
      zero = g.zero();
      have_zero = true;
    }
    auto r = detail::normal_form(g, basis, counter);
    if (r.is_zero()) continue;
    if (r.is_constant()) return unit_basis(r);
    add(std::move(r));
  }
  if (!have_zero) return GroebnerBasis<K>{{}, 0};

  auto pair_lcm = [&](const Pair& p) { return Monomial::lcm(basis[p.first].leading().mono, basis[p.second].leading().mono); };

  while (!pending.empty()) {
    // normal selection strategy: smallest lcm first
    auto best = pending.begin();
    Monomial best_l = pair_lcm(*best);
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Monomial l = pair_lcm(*it);
      if (grevlex_greater(best_l, l)) {
        best = it;
        best_l = l;
      }
    }
    const Pair pr = *best;
    pending.erase(best);
    const auto& f = basis[pr.first];
    const auto& g = basis[pr.second];
    if (Monomial::coprime(f.leading().mono, g.leading().mono)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.first || k == pr.second) continue;
      if (!basis[k].leading().mono.divides(best_l)) continue;
      const Pair a{std::min(k, pr.first), std::max(k, pr.first)};
      const Pair b{std::min(k, pr.second), std::max(k, pr.second)};
      if (!pending.count(a) && !pending.count(b)) chain = true;
    }
    if (chain) continue;
    auto r = detail::normal_form(detail::s_polynomial(f, g), basis, counter);
    if (r.is_zero()) continue;
    if (r.is_constant()) return unit_basis(r);
    add(std::move(r));
  }

  // minimalize
  std::vector<Polynomial<K>> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& mi = basis[i].leading().mono;
      const auto& mj = basis[j].leading().mono;
      if (mj.divides(mi) && (mi != mj || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  // inter-reduce
  GroebnerBasis<K> gb;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial<K>> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Polynomial<K> head(minimal[i].nvars(), minimal[i].zero());
    Polynomial<K> tail = minimal[i];
    head.append_smaller(tail.take_leading());
    gb.elements.push_back((head + detail::normal_form(tail, others, counter)).monic());
  }
  std::sort(gb.elements.begin(), gb.elements.end(), [](const Polynomial<K>& a, const Polynomial<K>& b) {
    return grevlex_greater(b.leading().mono, a.leading().mono);
  });
  gb.reductions = counter.used();
  return gb;
}

/// Remainder of f on division by a Groebner basis.
template <class K>
Polynomial<K> reduce(const Polynomial<K>& f, const GroebnerBasis<K>& gb, const GroebnerOptions& opts = {}) {
  detail::ReductionCounter<K> counter(opts.reduction_budget);
  return detail::normal_form(f, gb.elements, counter);
}

/// True iff the ideal has no zeros over the algebraic closure.
template <class K>
bool is_empty_affine(const PolyIdeal<K>& ideal, const GroebnerOptions& opts = {}) {
  return buchberger(ideal, opts).is_unit();
}

/// Number of standard monomials of a zero-dimensional ideal (the degree of
/// the affine scheme, multiplicities included). Throws DomainError if the
/// quotient ring is infinite dimensional.
template <class K>
std::size_t zero_dim_degree(const GroebnerBasis<K>& gb, std::size_t nvars) {
  if (gb.is_unit()) return 0;
  std::vector<unsigned> bound(nvars, 0);
  for (const auto& g : gb.elements) {
    const auto& m = g.leading().mono;
    std::size_t support = 0, var = 0;
    for (std::size_t i = 0; i < nvars; ++i)
      if (m.exp[i]) {
        ++support;
        var = i;
      }
    if (support == 1 && (bound[var] == 0 || m.exp[var] < bound[var])) bound[var] = m.exp[var];
  }
  for (std::size_t i = 0; i < nvars; ++i)
    if (bound[i] == 0) throw DomainError("zero_dim_degree: ideal is not zero-dimensional");
  std::size_t count = 0;
  Monomial m;
  auto rec = [&](auto&& self, std::size_t var) -> void {
    if (var == nvars) {
      for (const auto& g : gb.elements)
        if (g.leading().mono.divides(m)) return;
      ++count;
      return;
    }
    for (unsigned e = 0; e < bound[var]; ++e) {
      m.exp[var] = static_cast<std::uint16_t>(e);
      self(self, var + 1);
    }
    m.exp[var] = 0;
  };
  rec(rec, 0);
  return count;
}

template <class K>
std::size_t zero_dim_degree(const PolyIdeal<K>& ideal, const GroebnerOptions& opts = {}) {
  return zero_dim_degree(buchberger(ideal, opts), ideal.nvars);
}

/// True iff every generator vanishes at the affine point.
template <class K>
bool vanishes_at(const PolyIdeal<K>& ideal, const std::vector<K>& point) {
  if (point.size() != ideal.nvars) throw DomainError("vanishes_at: dimension mismatch");
  for (const auto& g : ideal.generators)
    if (!is_zero(g(point))) return false;
  return true;
}

/// Dehomogenization x_var = 1 of every generator.
template <class K>
PolyIdeal<K> affine_chart(const PolyIdeal<K>& ideal, std::size_t var) {
  PolyIdeal<K> out{ideal.nvars - 1, {}};
  for (const auto& g : ideal.generators) out.generators.push_back(g.specialize(var, one_like(g.zero())));
  return out;
}

/// Result of a chartwise projective emptiness test.
struct ProjectiveEmptiness {
  bool empty = true;
  std::size_t failing_chart = 0;  // meaningful when !empty
};

/// For homogeneous generators: the projective variety is empty iff each
/// standard affine chart is empty.
template <class K>
ProjectiveEmptiness is_empty_projective(const PolyIdeal<K>& ideal, const GroebnerOptions& opts = {}) {
  for (std::size_t i = 0; i < ideal.nvars; ++i) {
    if (!is_empty_affine(affine_chart(ideal, i), opts)) return {false, i};
  }
  return {true, 0};
}

}  // namespace tricoble
