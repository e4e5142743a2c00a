#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gin.hpp"
#include "polytope.hpp"
#include "staircase.hpp"

namespace ginlab {

// Complete intersection type (d_1 <= ... <= d_r) in m >= r variables.
class CIType {
 public:
  CIType(std::vector<std::uint32_t> degrees, std::size_t ambient);

  std::span<const std::uint32_t> degrees() const noexcept { return degrees_; }
  std::uint32_t degree(std::size_t i) const { return degrees_.at(i); }
  std::size_t r() const noexcept { return degrees_.size(); }
  std::size_t ambient() const noexcept { return ambient_; }
  Integer degree_product() const;
  std::string to_string() const;  // "2,3"

  friend bool operator==(const CIType&, const CIType&) = default;

 private:
  std::vector<std::uint32_t> degrees_;
  std::size_t ambient_;
};

// "2,3" -> {2, 3}
std::vector<std::uint32_t> parse_degree_list(const std::string& text);

enum class CheckStatus { pass, fail, skip };
std::string to_string(CheckStatus s);

struct Check {
  CheckStatus status = CheckStatus::skip;
  std::string detail;

  static Check pass(std::string d = {}) { return {CheckStatus::pass, std::move(d)}; }
  static Check fail(std::string d) { return {CheckStatus::fail, std::move(d)}; }
  static Check skip(std::string d) { return {CheckStatus::skip, std::move(d)}; }
  static Check of(bool ok, std::string d) { return ok ? pass(std::move(d)) : fail(std::move(d)); }
};

// Named checks, iterated in name order.
using CheckMap = std::map<std::string, Check>;

bool any_failed(const CheckMap& checks);

// length(R/I^n) = C(n+r-1, r) d_1...d_r; requires m = r.
Integer predicted_length(const CIType& t, unsigned n);

// x_i >= 0 where facet-defining, and sum_{i<=r} x_i/d_i >= 1 scaled to a
// primitive integer normal. Coordinates r+1..m are unconstrained.
std::vector<Halfspace> predicted_limiting_polytope(const CIType& t);

// r! length(n) / n^r for n = 1, 2, ...
std::vector<Rational> system_volume_estimate(std::span<const Integer> lengths, std::size_t r);

struct ConvergenceRow {
  unsigned n = 0;
  PurePowers p;
  std::vector<std::optional<Rational>> p_over_n;
  std::optional<Integer> length;
  std::optional<Rational> volume_estimate;
  CheckMap checks;
};

struct ConvergenceReport {
  CIType type;
  std::vector<ConvergenceRow> rows;
  Integer predicted_volume;  // d_1 ... d_r

  bool passed() const;
};

// Exact per-n checks of the pure powers, lengths, and limiting polytope
// against the closed forms for a complete intersection of type t.
ConvergenceReport verify_limiting_polytope(const GinSequence& seq, const CIType& t);

struct MultiplierResult {
  MonomialIdeal ideal;
  // Every relevant monomial of degree = bound is a member, so no minimal
  // generator lies above the bound.
  bool complete = false;
};

// Howald: x^lambda with lambda + 1 in the interior of c P_J, enumerated up
// to total degree `degree_bound`. Throws DomainError if nothing qualifies.
MultiplierResult multiplier_ideal(const MonomialIdeal& j, const Rational& c, std::uint32_t degree_bound);

struct EmpiricalMultiplier {
  MultiplierResult result;
  unsigned p = 0;
  // Set when entry 2p exists: whether J(c/p a_p) == J(c/(2p) a_2p).
  std::optional<bool> stabilized;
};

EmpiricalMultiplier asymptotic_multiplier_ideal_empirical(const GinSequence& seq, const Rational& c, unsigned p,
                                                          std::uint32_t degree_bound);

// Closed form: lambda in the ideal iff sum_{i<=r} (lambda_i + 1)/d_i > c.
MultiplierResult ci_asymptotic_multiplier_ideal(const CIType& t, const Rational& c, std::uint32_t degree_bound);

// 2 max(d_i) (r + 1)
std::uint32_t default_degree_bound(const CIType& t);

Rational parse_rational(const std::string& text);

}  // namespace ginlab
