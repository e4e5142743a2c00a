#include "scalar.hpp"

#include <cctype>
#include <limits>

namespace ginlab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

CoefficientField CoefficientField::prime_field(std::uint64_t p) {
  if (p > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max()))
    throw DomainError("prime field modulus must be below 2^31, got " + std::to_string(p));
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  return CoefficientField(Kind::prime, static_cast<std::uint32_t>(p));
}

CoefficientField CoefficientField::parse(const std::string& text) {
  if (text == "q" || text == "Q") return rationals();
  std::string digits;
  if (text.rfind("fp:", 0) == 0)
    digits = text.substr(3);
  else if (text.size() > 1 && text[0] == 'F')
    digits = text.substr(1);
  else
    throw DomainError("unknown coefficient field '" + text + "' (expected q or fp:P)");
  if (digits.empty() || digits.size() > 12)
    throw DomainError("bad prime field modulus in '" + text + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw DomainError("bad prime field modulus in '" + text + "'");
  return prime_field(std::stoull(digits));
}

std::string CoefficientField::to_string() const {
  return is_rational() ? std::string("q") : "fp:" + std::to_string(prime_);
}

ModP::ModP(std::int64_t value, std::uint32_t p) : p_(p) {
  std::int64_t r = value % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  value_ = static_cast<std::uint32_t>(r);
}

ModP ModP::inverse() const {
  if (value_ == 0) throw DomainError("division by zero in prime field");
  // Extended Euclid.
  std::int64_t a = value_, b = p_, x0 = 1, x1 = 0;
  while (b != 0) {
    std::int64_t q = a / b;
    std::int64_t t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return ModP(x0, p_);
}

ModP& ModP::operator+=(const ModP& o) {
  std::uint32_t s = value_ + o.value_;
  if (s >= p_) s -= p_;
  value_ = s;
  return *this;
}

ModP& ModP::operator-=(const ModP& o) {
  value_ = value_ >= o.value_ ? value_ - o.value_ : value_ + p_ - o.value_;
  return *this;
}

ModP& ModP::operator*=(const ModP& o) {
  value_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(value_) * o.value_ % p_);
  return *this;
}

ModP ScalarTraits<ModP>::from_rational(const Rational& q, const CoefficientField& f) {
  const std::uint32_t p = f.prime();
  mpz_class num = q.get_num() % p;
  mpz_class den = q.get_den() % p;
  if (den == 0)
    throw DomainError("coefficient " + q.get_str() + " is not representable in F_" +
                      std::to_string(p));
  return ModP(num.get_si(), p) / ModP(den.get_si(), p);
}

}  // namespace ginlab
