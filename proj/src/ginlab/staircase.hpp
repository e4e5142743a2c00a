#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "monomial.hpp"
#include "scalar.hpp"

namespace ginlab {

// Monomial ideal stored by its minimal generators (a divisibility antichain),
// sorted by degree and, within a degree, from the revlex-greatest down.
class MonomialIdeal {
 public:
  explicit MonomialIdeal(std::size_t var_count) : var_count_(var_count) {}

  // Drops every generator divisible by another one.
  static MonomialIdeal minimalize(std::vector<ExponentVector> gens, std::size_t var_count);

  std::size_t var_count() const noexcept { return var_count_; }
  std::span<const ExponentVector> generators() const noexcept { return gens_; }
  std::size_t size() const noexcept { return gens_.size(); }
  bool is_zero() const noexcept { return gens_.empty(); }
  bool is_unit() const noexcept { return gens_.size() == 1 && gens_[0].degree() == 0; }

  bool contains(const ExponentVector& e) const;

  // Largest generator degree; 0 for the zero ideal.
  std::uint64_t max_degree() const noexcept;

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  std::size_t var_count_;
  std::vector<ExponentVector> gens_;
};

// Canonical order used for generator lists.
bool generator_order(const ExponentVector& a, const ExponentVector& b) noexcept;

// A is contained in B.
bool contains_ideal(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal product(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b);

// Closed under x_j m / x_i for j < i; checked on minimal generators.
bool is_strongly_stable(const MonomialIdeal& j);

// Entry i is the least t with x_i^t in the ideal, if any.
struct PurePowers {
  std::vector<std::optional<std::uint32_t>> exponents;

  bool all_present() const;
  friend bool operator==(const PurePowers&, const PurePowers&) = default;
};

PurePowers pure_powers(const MonomialIdeal& j);

// Number of standard monomials of a zero-dimensional ideal. Throws
// DomainError naming the variable without a pure power otherwise.
Integer length_artinian(const MonomialIdeal& j);

// HF(R/J, d) for d = 0..d_max. Inclusion-exclusion over generator subsets
// for up to 20 generators, the last-variable recursion above that.
std::vector<Integer> hilbert_function(const MonomialIdeal& j, std::uint32_t d_max);
std::vector<Integer> hilbert_function_inclusion_exclusion(const MonomialIdeal& j, std::uint32_t d_max);
std::vector<Integer> hilbert_function_recursive(const MonomialIdeal& j, std::uint32_t d_max);

inline constexpr std::size_t kInclusionExclusionCap = 20;

struct DimDepth {
  std::size_t dimension;
  std::size_t depth;
  std::size_t d;  // largest t with a pure power of x_t in J
  std::size_t m;  // largest variable index in a minimal generator
};

// dim(R/J) = m - D(J), depth(R/J) = m - M(J) for strongly stable J.
DimDepth dim_depth(const MonomialIdeal& j);

class BettiTable {
 public:
  void add(std::uint32_t i, std::uint32_t j, const Integer& value);
  Integer at(std::uint32_t i, std::uint32_t j) const;
  // Nonzero entries keyed by (i, j).
  const std::map<std::pair<std::uint32_t, std::uint32_t>, Integer>& entries() const noexcept { return entries_; }

  friend bool operator==(const BettiTable&, const BettiTable&) = default;

 private:
  std::map<std::pair<std::uint32_t, std::uint32_t>, Integer> entries_;
};

// Eliahou-Kervaire: beta_{i, i+deg u} += C(max(u)-1, i) over minimal
// generators u of a strongly stable ideal.
BettiTable ek_betti(const MonomialIdeal& j);

Integer binomial(std::uint64_t n, std::uint64_t k);

}  // namespace ginlab
