#pragma once

// Exact scalar fields: arbitrary precision rationals (GMP) and prime fields.
//
// Generic code in this library is written against a scalar type K together
// with a small context object Field<K> that knows how to build constants.
// For the rationals the context is empty; for F_p it carries the modulus.

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "tricoble/errors.hpp"

namespace tricoble {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Integer& x) { return sgn(x) == 0; }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

inline Integer integer_from_string(const std::string& s) {
  Integer z;
  if (s.empty() || z.set_str(s, 10) != 0) throw DomainError("not a decimal integer: '" + s + "'");
  return z;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (is_zero(den)) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace detail {
__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;
}  // namespace detail

/// Element of F_p. Carries its modulus so that values are self-describing.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t p, std::uint64_t v) : p_(p), v_(v % p) {}

  std::uint64_t modulus() const { return p_; }
  std::uint64_t value() const { return v_; }

  friend Fp operator+(Fp a, Fp b) {
    std::uint64_t s = a.v_ + b.v_;
    if (s >= a.p_) s -= a.p_;
    return Fp(a.p_, s);
  }
  friend Fp operator-(Fp a, Fp b) { return Fp(a.p_, a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_); }
  friend Fp operator*(Fp a, Fp b) {
    return Fp(a.p_, static_cast<std::uint64_t>(static_cast<detail::u128>(a.v_) * b.v_ % a.p_));
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return Fp(p_, v_ == 0 ? 0 : p_ - v_); }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }
  Fp& operator/=(Fp b) { return *this = *this / b; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }

  Fp inverse() const {
    if (v_ == 0) throw DomainError("division by zero in F_p");
    // extended Euclid on signed 128-bit values
    detail::i128 r0 = p_, r1 = v_, s0 = 0, s1 = 1;
    while (r1 != 0) {
      detail::i128 q = r0 / r1;
      detail::i128 t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = s0 - q * s1;
      s0 = s1;
      s1 = t;
    }
    detail::i128 inv = s0 % static_cast<detail::i128>(p_);
    if (inv < 0) inv += p_;
    return Fp(p_, static_cast<std::uint64_t>(inv));
  }

  friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.v_; }

 private:
  std::uint64_t p_ = 2;
  std::uint64_t v_ = 0;
};

inline bool is_zero(const Fp& x) { return x.value() == 0; }

template <class K>
struct Field;

template <>
struct Field<Rational> {
  static constexpr bool is_rational = true;
  Rational operator()(long v) const { return Rational(v); }
  Rational operator()(const Integer& v) const { return Rational(v); }
  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  std::uint64_t characteristic() const { return 0; }
  friend bool operator==(const Field&, const Field&) { return true; }
};

template <>
struct Field<Fp> {
  static constexpr bool is_rational = false;

  Field() = default;
  explicit Field(std::uint64_t prime) : p(prime) {
    if (prime >= (std::uint64_t{1} << 62) || !is_prime(prime))
      throw DomainError("modulus " + std::to_string(prime) + " is not a supported prime");
  }

  Fp operator()(long v) const {
    long r = v % static_cast<long>(p);
    if (r < 0) r += static_cast<long>(p);
    return Fp(p, static_cast<std::uint64_t>(r));
  }
  Fp operator()(const Integer& v) const {
    Integer r = v % Integer(static_cast<unsigned long>(p));
    if (sgn(r) < 0) r += static_cast<unsigned long>(p);
    return Fp(p, r.get_ui());
  }
  Fp zero() const { return Fp(p, 0); }
  Fp one() const { return Fp(p, 1); }
  std::uint64_t characteristic() const { return p; }
  friend bool operator==(const Field& a, const Field& b) { return a.p == b.p; }

  std::uint64_t p = 2;
};

using QQ = Field<Rational>;
using GF = Field<Fp>;

/// The integer v as an element of the same ring as `like`.
inline Integer from_long(const Integer&, long v) { return v; }
inline Rational from_long(const Rational&, long v) { return v; }
inline Fp from_long(const Fp& like, long v) { return GF(like.modulus())(v); }

/// gcd of all entries, always >= 0.
inline Integer content(const std::vector<Integer>& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

/// Scales a rational vector to a primitive integer vector with the first
/// nonzero entry positive. The zero vector maps to the zero vector.
inline std::vector<Integer> primitive_integer(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
  std::vector<Integer> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(Integer(x.get_num() * (l / x.get_den())));
  Integer g = content(out);
  if (is_zero(g)) return out;
  for (const auto& x : out) {
    if (!is_zero(x)) {
      if (sgn(x) < 0) g = -g;
      break;
    }
  }
  for (auto& x : out) x /= g;
  return out;
}

inline std::vector<Integer> primitive_integer(const std::vector<Integer>& v) {
  std::vector<Rational> q(v.begin(), v.end());
  return primitive_integer(q);
}

/// Canonical representative of a projective vector: over Q the primitive
/// integer vector with first nonzero entry positive, over F_p the scaling
/// with first nonzero entry 1. The zero vector is returned unchanged.
inline std::vector<Rational> normalize_projective(const std::vector<Rational>& v) {
  auto ints = primitive_integer(v);
  return std::vector<Rational>(ints.begin(), ints.end());
}

inline std::vector<Fp> normalize_projective(const std::vector<Fp>& v) {
  for (const auto& x : v) {
    if (is_zero(x)) continue;
    Fp inv = x.inverse();
    std::vector<Fp> out;
    out.reserve(v.size());
    for (const auto& y : v) out.push_back(y * inv);
    return out;
  }
  return v;
}

template <class K>
bool is_zero_vector(const std::vector<K>& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

}  // namespace tricoble
