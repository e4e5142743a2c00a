#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ginlab {

// Exponent tuple J of a monomial x^J. The length is the ambient variable
// count; the total degree is cached.
class ExponentVector {
 public:
  using value_type = std::uint32_t;

  ExponentVector() = default;
  explicit ExponentVector(std::size_t var_count) : entries_(var_count, 0) {}
  ExponentVector(std::initializer_list<value_type> entries);
  explicit ExponentVector(std::vector<value_type> entries);

  static ExponentVector unit(std::size_t var_count, std::size_t index);

  std::size_t size() const noexcept { return entries_.size(); }
  std::uint64_t degree() const noexcept { return degree_; }
  value_type operator[](std::size_t i) const { return entries_[i]; }
  std::span<const value_type> entries() const noexcept { return entries_; }

  // Largest 1-based variable index with a nonzero exponent; 0 for the unit monomial.
  std::size_t max_variable() const noexcept;

  bool divides(const ExponentVector& other) const noexcept;
  ExponentVector operator+(const ExponentVector& other) const;
  // Quotient x^this / x^other; requires other.divides(*this).
  ExponentVector operator-(const ExponentVector& other) const;
  ExponentVector lcm(const ExponentVector& other) const;
  // Copy with entry i replaced.
  ExponentVector with(std::size_t i, value_type value) const;

  std::string to_string() const;  // "(2,0,1)"

  friend bool operator==(const ExponentVector& a, const ExponentVector& b) noexcept {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<value_type> entries_;
  std::uint64_t degree_ = 0;
};

// Graded reverse lexicographic comparison (x_1 > ... > x_m): higher total
// degree wins; otherwise the last differing coordinate decides, smaller entry
// there is the greater monomial. Throws DomainError on length mismatch.
std::strong_ordering compare_revlex(const ExponentVector& a, const ExponentVector& b);

// Unchecked variant for hot loops where lengths are known to agree.
std::strong_ordering revlex_unchecked(const ExponentVector& a, const ExponentVector& b) noexcept;

struct RevlexGreater {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const noexcept {
    return revlex_unchecked(a, b) > 0;
  }
};

struct ExponentVectorHash {
  std::size_t operator()(const ExponentVector& e) const noexcept;
};

}  // namespace ginlab
