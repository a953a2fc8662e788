#pragma once

// The Bertini involution attached to a pair of points on a cubic surface, in
// its plane-conic form: for z on S let C be the plane cubic cut by the plane
// through a, b, z, and gamma the conic through z tangent to C at a and b.
// Then tau(z) is the sixth point of gamma cap C.

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tricoble/construct.hpp"
#include "tricoble/errors.hpp"
#include "tricoble/field.hpp"
#include "tricoble/forms.hpp"
#include "tricoble/projgeom.hpp"

namespace tricoble {

template <class K>
class BertiniContext {
 public:
  BertiniContext(HomogeneousForm<K> cubic, ProjPoint<K> a, ProjPoint<K> b)
      : cubic_(std::move(cubic)), a_(std::move(a)), b_(std::move(b)) {
    if (cubic_.nvars() != 4 || cubic_.degree() != 3) throw DomainError("Bertini context needs a cubic surface");
    if (!is_zero(cubic_(a_.coords())) || !is_zero(cubic_(b_.coords())))
      throw DomainError("Bertini base points must lie on the cubic");
    if (a_ == b_) throw DegenerateError("Bertini base points coincide");
    if (line_in_surface(cubic_, a_, b_)) throw DegenerateError("line through the Bertini base points lies on the cubic");
  }

  const HomogeneousForm<K>& cubic() const { return cubic_; }
  const ProjPoint<K>& a() const { return a_; }
  const ProjPoint<K>& b() const { return b_; }

 private:
  HomogeneousForm<K> cubic_;
  ProjPoint<K> a_, b_;
};

/// gamma = alpha uv + beta ut + delta vt in the frame (a, b, z), together
/// with the plane cubic c(u, v, t) = F(u a + v b + t z).
template <class K>
struct BertiniConic {
  K alpha, beta, delta;
  HomogeneousForm<K> plane_cubic;
};

template <class K>
BertiniConic<K> bertini_conic(const BertiniContext<K>& ctx, const ProjPoint<K>& z) {
  if (!is_zero(ctx.cubic()(z.coords()))) throw DomainError("bertini: point is not on the cubic");
  HomogeneousForm<K> c;
  try {
    c = restrict_to_plane(ctx.cubic(), ctx.a().coords(), ctx.b().coords(), z.coords());
  } catch (const DegenerateError&) {
    throw DegenerateError("bertini: point is collinear with the base points");
  }
  auto coeff = [&](unsigned eu, unsigned ev, unsigned et) {
    Monomial m;
    m.exp = {static_cast<std::uint16_t>(eu), static_cast<std::uint16_t>(ev), static_cast<std::uint16_t>(et), 0};
    return c.poly().coeff(m);
  };
  // tangent line at a = (1:0:0) is c_{u^2 v} v + c_{u^2 t} t, at b = (0:1:0) it is c_{u v^2} u + c_{v^2 t} t
  const K a1 = coeff(2, 1, 0), a2 = coeff(2, 0, 1);
  const K b1 = coeff(1, 2, 0), b2 = coeff(0, 2, 1);
  if (is_zero(a1) && is_zero(a2)) throw DegenerateError("bertini: plane section is singular at the first base point");
  if (is_zero(b1) && is_zero(b2)) throw DegenerateError("bertini: plane section is singular at the second base point");
  BertiniConic<K> g{a1 * b1, a2 * b1, b2 * a1, c};
  if (is_zero(g.alpha) || is_zero(g.beta) || is_zero(g.delta)) throw DegenerateError("bertini: tangent conic is degenerate");
  return g;
}

template <class K>
ProjPoint<K> bertini_apply(const BertiniContext<K>& ctx, const ProjPoint<K>& z) {
  const auto g = bertini_conic(ctx, z);
  const K zero = g.alpha - g.alpha;
  const K one = one_like(zero);
  // P(m, n) = (-delta m n, m (alpha m + beta n), n (alpha m + beta n)); a at (beta : -alpha), b at n = 0, z at m = 0
  const auto m = Polynomial<K>::variable(2, 0, one);
  const auto n = Polynomial<K>::variable(2, 1, one);
  const auto l = g.alpha * m + g.beta * n;
  const std::vector<Polynomial<K>> param{-(g.delta * (m * n)), m * l, n * l};
  const auto sextic = g.plane_cubic.poly().substitute(param);
  Vec<K> sc(7, zero);
  for (const auto& t : sextic.terms()) sc[t.mono.exp[1]] = t.coeff;
  const BinaryForm<K> six(6, sc);
  if (six.is_zero()) throw DegenerateError("bertini: conic lies on the plane cubic");
  const auto lin = BinaryForm<K>::linear(g.alpha, g.beta);
  const BinaryForm<K> known = lin * lin * BinaryForm<K>(2, {zero, zero, one}) * BinaryForm<K>(1, {one, zero});
  BinaryForm<K> residual;
  try {
    residual = exact_divide(six, known);
  } catch (const DomainError&) {
    throw DegenerateError("bertini: unexpected intersection multiplicities at the frame points");
  }
  // residual = r0 m + r1 n vanishes at (m : n) = (r1 : -r0)
  const K mm = residual[1], nn = -residual[0];
  if (is_zero(nn)) throw DegenerateError("bertini: residual point coincides with the second base point");
  if (is_zero(g.alpha * mm + g.beta * nn)) throw DegenerateError("bertini: residual point coincides with the first base point");
  if (is_zero(mm)) return z;
  const K lv = g.alpha * mm + g.beta * nn;
  const K u = -(g.delta * mm * nn), v = mm * lv, t = nn * lv;
  Vec<K> out(4, zero);
  for (std::size_t i = 0; i < 4; ++i) out[i] = u * ctx.a()[i] + v * ctx.b()[i] + t * z[i];
  return ProjPoint<K>(out);
}

template <class K>
bool is_bertini_fixed(const BertiniContext<K>& ctx, const ProjPoint<K>& z) {
  return bertini_apply(ctx, z) == z;
}

/// The three involutions tau_p, tau_q, tau_r of a configuration.
template <class K>
struct BertiniTriple {
  std::array<BertiniContext<K>, 3> ctx;

  BertiniTriple(const HomogeneousForm<K>& cubic, const std::array<ProjPoint<K>, 6>& pts)
      : ctx{BertiniContext<K>(cubic, pts[0], pts[1]), BertiniContext<K>(cubic, pts[2], pts[3]),
            BertiniContext<K>(cubic, pts[4], pts[5])} {}

  /// Applies the involutions named by `word` right to left ("pqr" is
  /// tau_p o tau_q o tau_r). Errors are tagged with the failing stage.
  ProjPoint<K> apply(const std::string& word, ProjPoint<K> z) const {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      const std::size_t k = *it == 'p' ? 0 : *it == 'q' ? 1 : *it == 'r' ? 2 : 3;
      if (k == 3) throw DomainError(std::string("unknown involution '") + *it + "'");
      try {
        z = bertini_apply(ctx[k], z);
      } catch (const DegenerateError& e) {
        throw DegenerateError(std::string("stage tau_") + *it + ": " + e.what());
      } catch (const DomainError& e) {
        throw DomainError(std::string("stage tau_") + *it + ": " + e.what());
      }
    }
    return z;
  }
};

/// phi = tau_p o tau_q o tau_r.
template <class K>
ProjPoint<K> phi_apply(const BertiniTriple<K>& triple, const ProjPoint<K>& z) {
  return triple.apply("pqr", z);
}

struct T2Check {
  std::size_t pair;   // involution index (0 = p, 1 = q, 2 = r)
  std::size_t point;  // index into the six points
  bool fixed = false;
  std::string error;  // non-empty if the map was undefined
};

/// The twelve checks tau_p on q and r, tau_q on p and r, tau_r on p and q.
template <class K>
std::vector<T2Check> t2_checks(const BertiniTriple<K>& triple, const std::array<ProjPoint<K>, 6>& pts) {
  std::vector<T2Check> out;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 6; ++i) {
      if (i / 2 == k) continue;
      T2Check c{k, i, false, {}};
      try {
        c.fixed = is_bertini_fixed(triple.ctx[k], pts[i]);
      } catch (const Error& e) {
        c.error = e.what();
      }
      out.push_back(c);
    }
  return out;
}

/// Natural log of a positive integer, accurate for arbitrarily large values.
inline double log_integer(const Integer& h) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, h.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

struct OrbitRecord {
  ProjPoint<Rational> seed;
  std::vector<ProjPoint<Rational>> points;  // points[0] = seed
  std::vector<Integer> heights;
  std::vector<double> log_height_ratios;    // log H(x_{k+1}) / log H(x_k)
  bool truncated = false;                   // stopped by the height budget
  std::string error;                        // stage error that ended the orbit
};

/// Number of decimal digits of |h| (mpz_sizeinbase may overshoot by one).
inline std::size_t decimal_digits(const Integer& h) {
  std::size_t d = mpz_sizeinbase(h.get_mpz_t(), 10);
  if (d > 1) {
    Integer low;
    mpz_ui_pow_ui(low.get_mpz_t(), 10, d - 1);
    if (abs(h) < low) --d;
  }
  return d;
}

/// Iterates phi up to `steps` times; stops early once a height exceeds
/// `height_budget` decimal digits or a stage is undefined.
inline OrbitRecord orbit(const BertiniTriple<Rational>& triple, const ProjPoint<Rational>& seed, std::size_t steps,
                         std::size_t height_budget = 10000000) {
  if (!is_zero(triple.ctx[0].cubic()(seed.coords()))) throw DomainError("orbit seed is not on the cubic");
  OrbitRecord rec{seed, {seed}, {height(seed)}, {}, false, {}};
  for (std::size_t k = 0; k < steps; ++k) {
    if (decimal_digits(rec.heights.back()) > height_budget) {
      rec.truncated = true;
      break;
    }
    try {
      rec.points.push_back(phi_apply(triple, rec.points.back()));
    } catch (const Error& e) {
      rec.error = e.what();
      break;
    }
    rec.heights.push_back(height(rec.points.back()));
    const Integer& prev = rec.heights[rec.heights.size() - 2];
    if (prev > 1) rec.log_height_ratios.push_back(log_integer(rec.heights.back()) / log_integer(prev));
  }
  return rec;
}

struct FixingExponent {
  Integer m;
  std::vector<std::size_t> cycle_lengths;
};

/// Smallest m >= 1 such that map^m fixes every target: the lcm of the cycle
/// lengths. Throws BudgetExceeded if some orbit does not close within
/// `bound` steps; stage errors propagate.
template <class Point, class Map>
FixingExponent ff_fixing_exponent(const Map& map, const std::vector<Point>& targets, std::size_t bound) {
  FixingExponent out{Integer(1), {}};
  for (const auto& x : targets) {
    Point y = map(x);
    std::size_t len = 1;
    while (!(y == x)) {
      if (++len > bound)
        throw BudgetExceeded("orbit did not return within " + std::to_string(bound) + " steps");
      y = map(y);
    }
    out.cycle_lengths.push_back(len);
    out.m = lcm(out.m, Integer(static_cast<unsigned long>(len)));
  }
  return out;
}

}  // namespace tricoble
