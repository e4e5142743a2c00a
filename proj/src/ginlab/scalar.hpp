#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

#include "errors.hpp"

namespace ginlab {

using Rational = mpq_class;
using Integer = mpz_class;

// Coefficient field descriptor: the rationals or F_p for a prime p < 2^31.
class CoefficientField {
 public:
  enum class Kind { rational, prime };

  static CoefficientField rationals() { return CoefficientField(Kind::rational, 0); }
  static CoefficientField prime_field(std::uint64_t p);
  // Accepts "q", "Q", "fp:P", "F<P>".
  static CoefficientField parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  bool is_rational() const noexcept { return kind_ == Kind::rational; }
  std::uint32_t prime() const noexcept { return prime_; }
  // "q" or "fp:P".
  std::string to_string() const;

  friend bool operator==(const CoefficientField&, const CoefficientField&) = default;

 private:
  CoefficientField(Kind k, std::uint32_t p) : kind_(k), prime_(p) {}
  Kind kind_;
  std::uint32_t prime_;
};

bool is_prime(std::uint64_t n);

// Element of F_p. Carries its modulus so that generic code needs no context.
class ModP {
 public:
  ModP() = default;
  ModP(std::int64_t value, std::uint32_t p);

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return value_ == 0; }

  ModP inverse() const;

  ModP& operator+=(const ModP& o);
  ModP& operator-=(const ModP& o);
  ModP& operator*=(const ModP& o);
  ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }
  ModP operator-() const { return ModP(value_ == 0 ? 0 : p_ - value_, p_, raw_tag{}); }

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend bool operator==(const ModP& a, const ModP& b) noexcept {
    return a.value_ == b.value_;
  }

 private:
  struct raw_tag {};
  ModP(std::uint32_t v, std::uint32_t p, raw_tag) : value_(v), p_(p) {}
  std::uint32_t value_ = 0;
  std::uint32_t p_ = 0;
};

// Uniform access to the two coefficient types for the templated algebra.
template <typename K>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static Rational from_rational(const Rational& q, const CoefficientField&) { return q; }
  static Rational from_int(std::int64_t v, const CoefficientField&) {
    return Rational(static_cast<long>(v));
  }
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static bool is_one(const Rational& a) { return a == 1; }
  static bool is_negative(const Rational& a) { return sgn(a) < 0; }
  static Rational inverse(const Rational& a) { return Rational(1) / a; }
  static std::string to_string(const Rational& a) { return a.get_str(); }
  // Integer/rational representative, used for printing and lifting.
  static Rational lift(const Rational& a) { return a; }
};

template <>
struct ScalarTraits<ModP> {
  static ModP from_rational(const Rational& q, const CoefficientField& f);
  static ModP from_int(std::int64_t v, const CoefficientField& f) { return ModP(v, f.prime()); }
  static bool is_zero(const ModP& a) { return a.is_zero(); }
  static bool is_one(const ModP& a) { return a.value() == 1; }
  static bool is_negative(const ModP&) { return false; }
  static ModP inverse(const ModP& a) { return a.inverse(); }
  static std::string to_string(const ModP& a) { return std::to_string(a.value()); }
  static Rational lift(const ModP& a) { return Rational(static_cast<unsigned long>(a.value())); }
};

}  // namespace ginlab
