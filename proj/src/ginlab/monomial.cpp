#include "monomial.hpp"

#include <algorithm>
#include <numeric>

#include "errors.hpp"

namespace ginlab {

ExponentVector::ExponentVector(std::initializer_list<value_type> entries)
    : ExponentVector(std::vector<value_type>(entries)) {}

ExponentVector::ExponentVector(std::vector<value_type> entries) : entries_(std::move(entries)) {
  degree_ = std::accumulate(entries_.begin(), entries_.end(), std::uint64_t{0});
}

ExponentVector ExponentVector::unit(std::size_t var_count, std::size_t index) {
  if (index >= var_count) throw DomainError("unit vector index out of range");
  ExponentVector e(var_count);
  e.entries_[index] = 1;
  e.degree_ = 1;
  return e;
}

std::size_t ExponentVector::max_variable() const noexcept {
  for (std::size_t i = entries_.size(); i > 0; --i)
    if (entries_[i - 1] != 0) return i;
  return 0;
}

bool ExponentVector::divides(const ExponentVector& other) const noexcept {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] > other.entries_[i]) return false;
  return true;
}

ExponentVector ExponentVector::operator+(const ExponentVector& other) const {
  ExponentVector r(*this);
  for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] += other.entries_[i];
  r.degree_ += other.degree_;
  return r;
}

ExponentVector ExponentVector::operator-(const ExponentVector& other) const {
  ExponentVector r(*this);
  for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] -= other.entries_[i];
  r.degree_ -= other.degree_;
  return r;
}

ExponentVector ExponentVector::lcm(const ExponentVector& other) const {
  std::vector<value_type> out(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out[i] = std::max(entries_[i], other.entries_[i]);
  return ExponentVector(std::move(out));
}

ExponentVector ExponentVector::with(std::size_t i, value_type value) const {
  ExponentVector r(*this);
  r.degree_ = r.degree_ - r.entries_[i] + value;
  r.entries_[i] = value;
  return r;
}

std::string ExponentVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(entries_[i]);
  }
  return s + ")";
}

std::strong_ordering revlex_unchecked(const ExponentVector& a, const ExponentVector& b) noexcept {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  for (std::size_t i = a.size(); i > 0; --i) {
    if (a[i - 1] != b[i - 1]) return b[i - 1] <=> a[i - 1];
  }
  return std::strong_ordering::equal;
}

std::strong_ordering compare_revlex(const ExponentVector& a, const ExponentVector& b) {
  if (a.size() != b.size())
    throw DomainError("compare_revlex: exponent vectors of lengths " + std::to_string(a.size()) +
                      " and " + std::to_string(b.size()));
  return revlex_unchecked(a, b);
}

std::size_t ExponentVectorHash::operator()(const ExponentVector& e) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto v : e.entries()) {
    h ^= v;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ginlab
