#pragma once

// Tangency configurations (three quadrics, pairwise tangent at two points),
// the interpolation system for cubics with prescribed tangent planes, the
// LLL-selected short cubic of the pencil, and the nondegeneracy certificate.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "tricoble/errors.hpp"
#include "tricoble/field.hpp"
#include "tricoble/forms.hpp"
#include "tricoble/groebner.hpp"
#include "tricoble/lll.hpp"
#include "tricoble/matrix.hpp"
#include "tricoble/projgeom.hpp"

namespace tricoble {

inline constexpr std::array<const char*, 6> kPointLabels{"p1", "p2", "q1", "q2", "r1", "r2"};
inline constexpr std::array<const char*, 3> kPairLabels{"p", "q", "r"};

/// Whether quadric j (0..2) is tangent to the cubic at the points of pair k
/// (0 = p, 1 = q, 2 = r): Q1 at p and q, Q2 at p and r, Q3 at q and r.
inline constexpr bool prescribed(std::size_t quadric, std::size_t pair) {
  constexpr bool table[3][3] = {{true, true, false}, {true, false, true}, {false, true, true}};
  return table[quadric][pair];
}

/// The two quadrics through the points of a pair.
inline constexpr std::array<std::size_t, 2> quadrics_of_pair(std::size_t pair) {
  constexpr std::array<std::array<std::size_t, 2>, 3> q{{{0, 1}, {0, 2}, {1, 2}}};
  return q[pair];
}

/// Indices (into the six points) of the tangency set of quadric j.
inline constexpr std::array<std::size_t, 4> tangency_set(std::size_t quadric) {
  constexpr std::array<std::array<std::size_t, 4>, 3> t{{{0, 1, 2, 3}, {0, 1, 4, 5}, {2, 3, 4, 5}}};
  return t[quadric];
}

template <class K>
struct TangencyConfig {
  std::array<HomogeneousForm<K>, 3> quadrics;
  std::array<ProjPoint<K>, 6> points;  // p1, p2, q1, q2, r1, r2
};

inline TangencyConfig<Fp> reduce_mod(const TangencyConfig<Rational>& cfg, const GF& field) {
  TangencyConfig<Fp> out;
  for (std::size_t i = 0; i < 3; ++i) out.quadrics[i] = reduce_mod(cfg.quadrics[i], field);
  for (std::size_t i = 0; i < 6; ++i) out.points[i] = reduce_mod(cfg.points[i], field);
  return out;
}

/// Hessian matrix of a quadratic form (twice the symmetric Gram matrix).
template <class K>
Matrix<K> hessian(const HomogeneousForm<K>& q) {
  const std::size_t n = q.nvars();
  Matrix<K> m(n, n, q.zero());
  const auto grad = q.gradient();
  for (std::size_t i = 0; i < n; ++i) {
    const auto second = grad[i].gradient();
    for (std::size_t j = 0; j < n; ++j) m(i, j) = second[j].is_zero() ? q.zero() : second[j].poly().terms().front().coeff;
  }
  return m;
}

template <class K>
struct ConfigValidation {
  std::array<ProjPlane<K>, 6> tangent_planes;
};

/// Checks smoothness of the quadrics, the incidence pattern and the
/// pairwise tangency at the six points. Throws ValidationError naming the
/// offending quadric or point.
template <class K>
ConfigValidation<K> validate_config(const TangencyConfig<K>& cfg) {
  for (std::size_t j = 0; j < 3; ++j) {
    const auto& q = cfg.quadrics[j];
    if (q.nvars() != 4 || q.degree() != 2) throw ValidationError("Q" + std::to_string(j + 1) + " is not a quadric in P^3");
    if (rank(hessian(q)) != 4)
      throw ValidationError("Q" + std::to_string(j + 1) + " is a degenerate quadric (rank < 4)");
  }
  for (std::size_t i = 0; i < 6; ++i) {
    if (cfg.points[i].size() != 4) throw ValidationError(std::string(kPointLabels[i]) + " is not a point of P^3");
    for (std::size_t k = 0; k < i; ++k)
      if (cfg.points[i] == cfg.points[k])
        throw ValidationError(std::string(kPointLabels[i]) + " coincides with " + kPointLabels[k]);
  }
  ConfigValidation<K> out;
  for (std::size_t i = 0; i < 6; ++i) {
    const std::size_t pair = i / 2;
    const std::string label = kPointLabels[i];
    for (std::size_t j = 0; j < 3; ++j) {
      const bool on = is_zero(cfg.quadrics[j](cfg.points[i].coords()));
      const std::string qn = "Q" + std::to_string(j + 1);
      if (prescribed(j, pair) && !on) throw ValidationError(label + " is not on " + qn);
      if (!prescribed(j, pair) && on) throw ValidationError(label + " lies on " + qn + ", breaking the tangency pattern");
    }
    const auto [a, b] = quadrics_of_pair(pair);
    const auto ga = cfg.quadrics[a].gradient_at(cfg.points[i].coords());
    const auto gb = cfg.quadrics[b].gradient_at(cfg.points[i].coords());
    if (rank_of<K>({ga, gb}) != 1)
      throw ValidationError("Q" + std::to_string(a + 1) + " and Q" + std::to_string(b + 1) + " are not tangent at " + label);
    out.tangent_planes[i] = ProjPlane<K>(ga);
  }
  return out;
}

/// The six rows n_j dF/dx_i(p) - n_i dF/dx_j(p), i < j, linear in the 20
/// cubic coefficients (lexicographic monomial order).
template <class K>
std::vector<Vec<K>> tangency_rows(const Vec<K>& p, const Vec<K>& n) {
  const K zero = p[0] - p[0];
  const auto monos = monomials_of_degree(4, 3);
  std::array<Vec<K>, 4> d;
  for (std::size_t i = 0; i < 4; ++i) {
    d[i].assign(monos.size(), zero);
    for (std::size_t k = 0; k < monos.size(); ++k) {
      Monomial m = monos[k];
      if (m.exp[i] == 0) continue;
      K v = from_long(zero, m.exp[i]);
      --m.exp[i];
      for (std::size_t c = 0; c < 4; ++c)
        for (unsigned e = 0; e < m.exp[c]; ++e) v *= p[c];
      d[i][k] = v;
    }
  }
  std::vector<Vec<K>> rows;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      Vec<K> r(monos.size(), zero);
      for (std::size_t k = 0; k < monos.size(); ++k) r[k] = n[j] * d[i][k] - n[i] * d[j][k];
      rows.push_back(std::move(r));
    }
  return rows;
}

/// 36 x 20 system whose kernel is the space of cubics with the prescribed
/// tangent planes at the six points.
template <class K>
Matrix<K> interpolation_system(const TangencyConfig<K>& cfg) {
  const auto val = validate_config(cfg);
  const K zero = cfg.points[0][0] - cfg.points[0][0];
  Matrix<K> m(0, 0, zero);
  for (std::size_t i = 0; i < 6; ++i)
    for (auto& r : tangency_rows(cfg.points[i].coords(), val.tangent_planes[i].coords())) m.append_row(r);
  return m;
}

struct CubicPencil {
  std::array<IntVector, 2> basis;
};

/// Integer basis of the kernel of the interpolation system; throws
/// DegenerateError unless the kernel is 2-dimensional.
inline CubicPencil cubic_pencil(const TangencyConfig<Rational>& cfg) {
  const auto ker = kernel_basis(interpolation_system(cfg));
  if (ker.size() != 2)
    throw DegenerateError("interpolation kernel has dimension " + std::to_string(ker.size()) + ", expected 2");
  return {{ker[0], ker[1]}};
}

/// The shorter LLL basis vector (max norm, ties by lexicographic order) of
/// the saturated integer lattice of the pencil, normalized.
inline IntVector short_cubic(const CubicPencil& pencil) {
  auto reduced = lll_reduce(saturate({pencil.basis[0], pencil.basis[1]}));
  for (auto& v : reduced) v = primitive_integer(v);
  const auto& a = reduced[0];
  const auto& b = reduced[1];
  const Integer na = max_norm(a), nb = max_norm(b);
  if (na != nb) return na < nb ? a : b;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end()) ? b : a;
}

inline HomogeneousForm<Rational> cubic_from_vector(const IntVector& v) {
  return HomogeneousForm<Rational>::from_coefficients(4, 3, Vec<Rational>(v.begin(), v.end()));
}

// ---------------------------------------------------------------------------
// Certification

struct CheckItem {
  std::string subject;
  bool pass = false;
  std::string witness;
};

struct ConditionResult {
  int index = 0;
  std::string title;
  bool pass = true;
  std::vector<CheckItem> items;

  void add(std::string subject, bool ok, std::string witness) {
    pass = pass && ok;
    items.push_back({std::move(subject), ok, std::move(witness)});
  }
};

struct QuadricVerdict {
  bool simple = false;            // condition (6) holds for this quadric
  std::size_t degree = 0;         // degree of the singular scheme
  std::size_t chart_attempt = 0;  // coordinate change used (0 = identity)
  std::string detail;
};

struct CertReport {
  std::array<ConditionResult, 6> conditions;
  std::array<QuadricVerdict, 3> quadrics;
  bool tri_coble = false;         // conditions (1)-(6)
  bool simple_tri_coble = false;  // additionally some quadric verdict is simple

  /// The first failing condition, if any.
  const ConditionResult* first_failure() const {
    for (const auto& c : conditions)
      if (!c.pass) return &c;
    return nullptr;
  }
};

namespace detail {

template <class K>
std::string to_str(const K& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

template <class K>
PolyIdeal<K> singular_ideal(const HomogeneousForm<K>& f) {
  PolyIdeal<K> ideal{f.nvars(), {f.poly()}};
  for (const auto& g : f.gradient()) ideal.generators.push_back(g.poly());
  return ideal;
}

template <class K>
std::string chart_witness(const ProjectiveEmptiness& e) {
  return e.empty ? "all charts empty" : "solutions in chart x" + std::to_string(e.failing_chart) + " = 1";
}

/// Deterministic sequence of unimodular 4x4 integer matrices; index 0 is
/// the identity.
inline Matrix<Integer> unimodular_change(std::size_t attempt) {
  Matrix<Integer> m = Matrix<Integer>::identity(4);
  if (attempt == 0) return m;
  std::mt19937_64 gen(0x7269636f626c65ULL + attempt);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> idx(0, 3);
  for (int step = 0; step < 8; ++step) {
    const int i = idx(gen), j = idx(gen);
    if (i == j) continue;
    const int c = coef(gen);
    for (std::size_t k = 0; k < 4; ++k) m(i, k) += c * m(j, k);  // row_i += c row_j
  }
  return m;
}

template <class K>
Matrix<K> lift(const Matrix<Integer>& m, const K& zero) {
  Matrix<K> out(m.rows(), m.cols(), zero);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<K, Fp>)
        out(i, j) = GF(zero.modulus())(m(i, j));
      else
        out(i, j) = K(m(i, j));
    }
  return out;
}

/// Lines through the node t lying on both V(f) and V(q): directions v with
/// grad q(t).v = q(v) = grad f(t).v = v^T Hf(t) v = f(v) = 0, normalized by
/// v_j = 0 for a coordinate with t_j != 0. Returns true iff no such line.
template <class K>
bool no_line_through(const HomogeneousForm<K>& f, const HomogeneousForm<K>& q, const Vec<K>& t,
                     const GroebnerOptions& opts) {
  const K zero = f.zero();
  const K one = one_like(zero);
  std::size_t j = 0;
  while (is_zero(t[j])) ++j;
  auto linear = [&](const Vec<K>& c) {
    Polynomial<K> p(4, zero);
    for (std::size_t i = 0; i < 4; ++i) p += c[i] * Polynomial<K>::variable(4, i, one);
    return p;
  };
  Polynomial<K> quad(4, zero);
  const auto grad = f.gradient();
  for (std::size_t a = 0; a < 4; ++a) {
    const auto second = grad[a].gradient();
    for (std::size_t b = 0; b < 4; ++b) {
      K h = second[b](t);
      if (is_zero(h)) continue;
      quad += h * (Polynomial<K>::variable(4, a, one) * Polynomial<K>::variable(4, b, one));
    }
  }
  PolyIdeal<K> ideal{4, {linear(q.gradient_at(t)), q.poly(), linear(f.gradient_at(t)), quad, f.poly()}};
  PolyIdeal<K> plane{3, {}};
  for (const auto& g : ideal.generators) {
    auto s = g.specialize(j, zero);
    if (!s.is_zero()) plane.generators.push_back(std::move(s));
  }
  return is_empty_projective(plane, opts).empty;
}

}  // namespace detail

/// Condition (6) for one quadric: the singular scheme of V(f) cap V(q) has
/// degree exactly 4, is supported on the tangency points, and no line
/// through a tangency point lies on both surfaces.
template <class K>
QuadricVerdict nodal_certificate(const HomogeneousForm<K>& f, const HomogeneousForm<K>& q,
                                 const std::array<ProjPoint<K>, 4>& nodes, const GroebnerOptions& opts = {}) {
  const K zero = f.zero();
  QuadricVerdict v;
  for (const auto& t : nodes) {
    if (!detail::no_line_through(f, q, t.coords(), opts)) {
      v.detail = "a line through " + detail::to_str(t) + " lies on both surfaces";
      return v;
    }
  }
  constexpr std::size_t kAttempts = 11;  // identity plus 10 changes
  for (std::size_t attempt = 0; attempt < kAttempts; ++attempt) {
    const Matrix<K> m = detail::lift(detail::unimodular_change(attempt), zero);
    const Matrix<K> minv = inverse(m);
    std::vector<Vec<K>> affine;
    bool ok = true;
    for (const auto& t : nodes) {
      Vec<K> y = minv.apply(t.coords());
      if (is_zero(y[0])) {
        ok = false;
        break;
      }
      const K inv = one_like(zero) / y[0];
      affine.push_back({y[1] * inv, y[2] * inv, y[3] * inv});
    }
    if (!ok) continue;
    const auto g = transform(f, m);
    const auto r = transform(q, m);
    PolyIdeal<K> ideal{4, {g.poly(), r.poly()}};
    const auto dg = g.gradient(), dr = r.gradient();
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        auto minor = dg[i].poly() * dr[j].poly() - dg[j].poly() * dr[i].poly();
        if (!minor.is_zero()) ideal.generators.push_back(std::move(minor));
      }
    // the scheme must avoid the hyperplane w = 0 so that one chart sees all of it
    PolyIdeal<K> at_infinity{3, {}};
    for (const auto& gen : ideal.generators) {
      auto s = gen.specialize(0, zero);
      if (!s.is_zero()) at_infinity.generators.push_back(std::move(s));
    }
    if (!is_empty_projective(at_infinity, opts).empty) continue;
    const auto chart = affine_chart(ideal, 0);
    const auto gb = buchberger(chart, opts);
    v.chart_attempt = attempt;
    try {
      v.degree = zero_dim_degree(gb, 3);
    } catch (const DomainError&) {
      v.detail = "singular locus is positive dimensional";
      return v;
    }
    for (std::size_t k = 0; k < affine.size(); ++k) {
      if (!vanishes_at(chart, affine[k])) {
        v.detail = "singular scheme does not contain " + detail::to_str(nodes[k]);
        return v;
      }
    }
    if (v.degree != 4) {
      v.detail = "singular scheme has degree " + std::to_string(v.degree) + ", expected 4";
      return v;
    }
    v.simple = true;
    v.detail = "four nodes at the tangency points, no line components";
    return v;
  }
  v.detail = "no coordinate change moved the singular scheme into one chart";
  return v;
}

/// Checks that F is a cubic satisfying the interpolation system of cfg.
template <class K>
void check_interpolation(const TangencyConfig<K>& cfg, const HomogeneousForm<K>& f) {
  if (f.nvars() != 4 || f.degree() != 3 || f.is_zero()) throw ValidationError("cubic must be a nonzero cubic form in 4 variables");
  const auto residual = interpolation_system(cfg).apply(f.coefficients());
  for (std::size_t i = 0; i < residual.size(); ++i)
    if (!is_zero(residual[i]))
      throw ValidationError("cubic violates the tangency condition at " + std::string(kPointLabels[i / 6]) +
                            " (interpolation residual row " + std::to_string(i) + " is " + detail::to_str(residual[i]) + ")");
}

/// Runs conditions (1)-(6). Throws ValidationError when the configuration is
/// invalid or F is not in the interpolation pencil.
template <class K>
CertReport certify(const TangencyConfig<K>& cfg, const HomogeneousForm<K>& f, const GroebnerOptions& opts = {}) {
  check_interpolation(cfg, f);
  const auto& pts = cfg.points;
  CertReport rep;
  const std::array<const char*, 6> titles{"cubic surface is smooth",
                                          "lines through the pairs are not on the surface",
                                          "no four of the six points are coplanar",
                                          "plane sections through three points are smooth cubics",
                                          "tangent planes avoid the other points",
                                          "quadric sections have exactly four nodes at the tangency points"};
  for (std::size_t i = 0; i < 6; ++i) {
    rep.conditions[i].index = static_cast<int>(i + 1);
    rep.conditions[i].title = titles[i];
  }

  {  // (1)
    auto e = is_empty_projective(detail::singular_ideal(f), opts);
    rep.conditions[0].add("singular locus of F", e.empty, detail::chart_witness<K>(e));
  }
  for (std::size_t k = 0; k < 3; ++k) {  // (2)
    const auto g = restrict_to_line(f, pts[2 * k].coords(), pts[2 * k + 1].coords());
    std::string w;
    for (std::size_t i = 0; i < g.coeffs().size(); ++i) w += (i ? "," : "") + detail::to_str(g[i]);
    rep.conditions[1].add(std::string("line ") + kPointLabels[2 * k] + kPointLabels[2 * k + 1], !g.is_zero(),
                          "restriction coefficients [" + w + "]");
  }
  for (std::size_t a = 0; a < 6; ++a)  // (3)
    for (std::size_t b = a + 1; b < 6; ++b)
      for (std::size_t c = b + 1; c < 6; ++c)
        for (std::size_t d = c + 1; d < 6; ++d) {
          auto w = coplanar(pts[a], pts[b], pts[c], pts[d]);
          rep.conditions[2].add(std::string(kPointLabels[a]) + "," + kPointLabels[b] + "," + kPointLabels[c] + "," +
                                    kPointLabels[d],
                                !w.coplanar, "det = " + detail::to_str(w.determinant));
        }
  for (std::size_t a = 0; a < 6; ++a)  // (4)
    for (std::size_t b = a + 1; b < 6; ++b)
      for (std::size_t c = b + 1; c < 6; ++c) {
        const std::string subject = std::string("plane ") + kPointLabels[a] + "," + kPointLabels[b] + "," + kPointLabels[c];
        try {
          auto g = restrict_to_plane(f, pts[a].coords(), pts[b].coords(), pts[c].coords());
          auto e = is_empty_projective(detail::singular_ideal(g), opts);
          rep.conditions[3].add(subject, e.empty, detail::chart_witness<K>(e));
        } catch (const DegenerateError& err) {
          rep.conditions[3].add(subject, false, err.what());
        }
      }
  for (std::size_t a = 0; a < 6; ++a) {  // (5)
    const auto plane = tangent_plane(f, pts[a]);
    for (std::size_t b = 0; b < 6; ++b) {
      if (a == b) continue;
      const K pairing = dot(plane.coords(), pts[b].coords());
      rep.conditions[4].add(std::string("T_") + kPointLabels[a] + " vs " + kPointLabels[b], !is_zero(pairing),
                            "pairing = " + detail::to_str(pairing));
    }
  }
  for (std::size_t j = 0; j < 3; ++j) {  // (6)
    const auto ts = tangency_set(j);
    std::array<ProjPoint<K>, 4> nodes{pts[ts[0]], pts[ts[1]], pts[ts[2]], pts[ts[3]]};
    rep.quadrics[j] = nodal_certificate(f, cfg.quadrics[j], nodes, opts);
    rep.conditions[5].add("Q" + std::to_string(j + 1), rep.quadrics[j].simple,
                          "degree " + std::to_string(rep.quadrics[j].degree) + ", " + rep.quadrics[j].detail);
  }

  rep.tri_coble = true;
  for (const auto& c : rep.conditions) rep.tri_coble = rep.tri_coble && c.pass;
  bool any_simple = false;
  for (const auto& q : rep.quadrics) any_simple = any_simple || q.simple;
  rep.simple_tri_coble = rep.tri_coble && any_simple;
  return rep;
}

/// Outcome of re-running the certificate modulo a prime.
struct PrimeScreen {
  std::uint64_t prime = 0;
  bool good = false;
  std::string reason;  // why the prime was rejected
  std::optional<CertReport> report;
};

/// A prime is good when the configuration stays valid and the whole
/// certificate passes after reduction. Characteristics 2 and 3 are rejected
/// outright: the tangency rows rely on the Euler identity for cubics and
/// the quadric rank test on the Hessian, both of which need 2 and 3 to be
/// invertible.
inline PrimeScreen screen_prime(const TangencyConfig<Rational>& cfg, const IntVector& cubic, std::uint64_t p,
                                const GroebnerOptions& opts = {}) {
  PrimeScreen out;
  out.prime = p;
  if (!is_prime(p)) {
    out.reason = std::to_string(p) + " is not prime";
    return out;
  }
  if (p <= 3) {
    out.reason = "characteristic " + std::to_string(p) + " is not supported";
    return out;
  }
  try {
    const GF field(p);
    const auto red = reduce_mod(cfg, field);
    const auto f = reduce_mod(cubic_from_vector(cubic), field);
    if (f.is_zero()) {
      out.reason = "cubic vanishes modulo " + std::to_string(p);
      return out;
    }
    out.report = certify(red, f, opts);
    if (const auto* bad = out.report->first_failure()) {
      out.reason = "condition (" + std::to_string(bad->index) + ") fails modulo " + std::to_string(p);
      for (const auto& it : bad->items)
        if (!it.pass) {
          out.reason += ": " + it.subject + " (" + it.witness + ")";
          break;
        }
      return out;
    }
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const Error& e) {
    out.reason = std::string("modulo ") + std::to_string(p) + ": " + e.what();
    return out;
  }
  out.good = true;
  return out;
}

}  // namespace tricoble
