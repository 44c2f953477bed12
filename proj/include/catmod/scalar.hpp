#pragma once

// Exact scalar fields: the rationals (GMP-backed) and prime fields with a
// runtime modulus. Every container carries its field descriptor so that zero
// and one can be produced without a sample element.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include "catmod/errors.hpp"

namespace catmod {

using Rational = mpq_class;

struct RationalField {
  bool operator==(const RationalField&) const = default;
  std::string name() const { return "Q"; }
};

struct PrimeField {
  std::uint64_t p = 0;
  bool operator==(const PrimeField&) const = default;
  std::string name() const { return "F" + std::to_string(p); }
};

/// Residue modulo a prime fixed at runtime. Operands with different moduli
/// raise FieldMismatch. A default-constructed ModP is an unbound zero that
/// takes the modulus of whatever it is combined with.
class ModP {
 public:
  ModP() = default;
  ModP(std::uint64_t value, std::uint64_t p) : v_(p ? value % p : 0), p_(p) {}

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }

  friend ModP operator+(const ModP& a, const ModP& b) {
    auto p = common(a, b);
    std::uint64_t s = a.v_ + b.v_;
    if (s >= p || s < a.v_) s -= p;
    return from_raw(s, p);
  }
  friend ModP operator-(const ModP& a, const ModP& b) {
    auto p = common(a, b);
    return from_raw(a.v_ >= b.v_ ? a.v_ - b.v_ : p - (b.v_ - a.v_), p);
  }
  friend ModP operator*(const ModP& a, const ModP& b) {
    auto p = common(a, b);
    if (p == 0) return {};
    auto prod = static_cast<unsigned __int128>(a.v_) * b.v_;
    return from_raw(static_cast<std::uint64_t>(prod % p), p);
  }
  friend ModP operator/(const ModP& a, const ModP& b) { return a * b.inverse(); }
  ModP operator-() const { return from_raw(v_ == 0 ? 0 : p_ - v_, p_); }
  ModP& operator+=(const ModP& o) { return *this = *this + o; }
  ModP& operator-=(const ModP& o) { return *this = *this - o; }
  ModP& operator*=(const ModP& o) { return *this = *this * o; }
  ModP& operator/=(const ModP& o) { return *this = *this / o; }
  friend bool operator==(const ModP& a, const ModP& b) {
    common(a, b);
    return a.v_ == b.v_;
  }

  ModP inverse() const {
    if (v_ == 0) throw DivisionByZero("inverse of 0 in F" + std::to_string(p_));
    // extended Euclid on signed 128-bit values
    __int128 t = 0, new_t = 1, r = p_, new_r = v_;
    while (new_r != 0) {
      __int128 q = r / new_r;
      __int128 tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return from_raw(static_cast<std::uint64_t>(t), p_);
  }

 private:
  static ModP from_raw(std::uint64_t v, std::uint64_t p) {
    ModP r;
    r.v_ = v;
    r.p_ = p;
    return r;
  }
  static std::uint64_t common(const ModP& a, const ModP& b) {
    if (a.p_ == b.p_ || b.p_ == 0) return a.p_;
    if (a.p_ == 0) return b.p_;
    throw FieldMismatch("F" + std::to_string(a.p_) + " vs F" + std::to_string(b.p_));
  }

  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  using Field = RationalField;

  static Rational zero(const Field&) { return Rational(0); }
  static Rational one(const Field&) { return Rational(1); }
  static Rational from_int(const Field&, long long v) { return Rational(mpz_class(std::to_string(v))); }
  static Rational from_fraction(const Field& f, long long num, long long den) {
    if (den == 0) throw DivisionByZero("zero denominator");
    Rational r = from_int(f, num) / from_int(f, den);
    return r;
  }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational inverse(const Rational& x) {
    if (is_zero(x)) throw DivisionByZero("inverse of 0 in Q");
    return Rational(1) / x;
  }
  static std::string to_string(const Rational& x) { return x.get_str(); }

  /// Accepts "n", "-n", "p/q"; the result is canonicalized.
  static Rational parse(const Field&, std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
      if (t.empty()) return false;
      std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
    if (slash == std::string::npos) {
      if (!valid_int(s)) throw ParseError("not a rational: '" + s + "'");
      return Rational(mpz_class(strip_plus(s)));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw ParseError("not a rational: '" + s + "'");
    mpz_class d(strip_plus(den));
    if (d == 0) throw ParseError("zero denominator in '" + s + "'");
    Rational r(mpz_class(strip_plus(num)), d);
    r.canonicalize();
    return r;
  }
};

template <>
struct ScalarTraits<ModP> {
  using Field = PrimeField;

  static ModP zero(const Field& f) { return ModP(0, f.p); }
  static ModP one(const Field& f) { return ModP(1, f.p); }
  static ModP from_int(const Field& f, long long v) {
    auto p = static_cast<long long>(f.p);
    long long r = v % p;
    if (r < 0) r += p;
    return ModP(static_cast<std::uint64_t>(r), f.p);
  }
  static ModP from_fraction(const Field& f, long long num, long long den) {
    ModP d = from_int(f, den);
    if (d.value() == 0) throw DivisionByZero("denominator divisible by p");
    return from_int(f, num) / d;
  }
  static bool is_zero(const ModP& x) { return x.value() == 0; }
  static ModP inverse(const ModP& x) { return x.inverse(); }
  static std::string to_string(const ModP& x) { return std::to_string(x.value()); }

  static ModP parse(const Field& f, std::string_view text) {
    Rational q = ScalarTraits<Rational>::parse(RationalField{}, text);
    mpz_class p(std::to_string(f.p));
    mpz_class num = q.get_num() % p, den = q.get_den() % p;
    if (num < 0) num += p;
    if (den == 0) throw ParseError("denominator of '" + std::string(text) + "' vanishes mod " + f.name());
    ModP n(num.get_ui(), f.p), d(den.get_ui(), f.p);
    return n / d;
  }
};

template <class S>
using FieldOf = typename ScalarTraits<S>::Field;

template <class S>
concept ExactScalar = requires(const S& a, const S& b, const FieldOf<S>& f) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { a == b } -> std::convertible_to<bool>;
  { ScalarTraits<S>::zero(f) } -> std::same_as<S>;
  { ScalarTraits<S>::one(f) } -> std::same_as<S>;
  { ScalarTraits<S>::is_zero(a) } -> std::same_as<bool>;
};

/// True iff p is prime (GMP's test is deterministic below 2^64).
inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  mpz_class z(std::to_string(p));
  return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

inline PrimeField make_prime_field(std::uint64_t p) {
  if (!is_prime(p)) throw ParseError(std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 62)) throw ParseError("modulus too large");
  return PrimeField{p};
}

}  // namespace catmod
