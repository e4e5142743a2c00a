#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "monomial.hpp"
#include "scalar.hpp"

namespace ginlab {

// Polynomial ring K[x_1, ..., x_m]. The order of `variables` fixes
// x_1 > ... > x_m.
class RingSpec {
 public:
  RingSpec(std::vector<std::string> variables, CoefficientField field);

  // Ring with variables x1..xm.
  static std::shared_ptr<const RingSpec> standard(std::size_t var_count,
                                                  CoefficientField field = CoefficientField::rationals());

  std::size_t var_count() const noexcept { return variables_.size(); }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const CoefficientField& field() const noexcept { return field_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  // "Q[x1,x2]" / "F32003[x1,x2]"
  std::string to_string() const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

 private:
  std::vector<std::string> variables_;
  CoefficientField field_;
};

using RingPtr = std::shared_ptr<const RingSpec>;

// Same variables, different coefficient field.
RingPtr with_field(const RingPtr& ring, const CoefficientField& field);

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

template <typename K>
struct Term {
  K coeff;
  ExponentVector exponents;

  friend bool operator==(const Term&, const Term&) = default;
};

// Sparse polynomial with terms strictly decreasing in graded revlex and no
// zero coefficients. The zero polynomial has no terms.
template <typename K>
class Polynomial {
 public:
  using Traits = ScalarTraits<K>;

  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  // Sorts, merges equal monomials, drops zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term<K>> terms);
  static Polynomial constant(RingPtr ring, const K& c);
  static Polynomial monomial(RingPtr ring, const K& c, ExponentVector e);
  static Polynomial variable(RingPtr ring, std::size_t index);

  const RingSpec& ring() const noexcept { return *ring_; }
  const RingPtr& ring_ptr() const noexcept { return ring_; }
  std::span<const Term<K>> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  const Term<K>& leading_term() const;
  const ExponentVector& leading_monomial() const { return leading_term().exponents; }
  const K& leading_coeff() const { return leading_term().coeff; }

  // Total degree of the leading term (graded order); requires nonzero.
  std::uint64_t degree() const { return leading_monomial().degree(); }
  bool is_homogeneous() const noexcept;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const K& c) const;
  Polynomial monic() const;
  // Copy without the leading term.
  Polynomial tail() const;
  // this * c * x^e.
  Polynomial times_term(const K& c, const ExponentVector& e) const;
  // this - c * x^e * other, by merging the sorted term lists.
  Polynomial minus_term_times(const K& c, const ExponentVector& e, const Polynomial& other) const;

  // Canonical text form; parses back to the same polynomial.
  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
  }

 private:
  void check_ring(const Polynomial& o, const char* op) const;
  Polynomial merge(const Polynomial& o, const K* factor, const ExponentVector* shift, bool subtract) const;

  RingPtr ring_;
  std::vector<Term<K>> terms_;
};

// Invertible m x m matrix g acting by g(x_i) = sum_j g_ij x_j.
template <typename K>
class CoordinateChange {
 public:
  // `entries` row-major; throws DomainError if not square or singular.
  CoordinateChange(RingPtr ring, std::vector<K> entries);
  static CoordinateChange identity(RingPtr ring);

  const RingSpec& ring() const noexcept { return *ring_; }
  const RingPtr& ring_ptr() const noexcept { return ring_; }
  std::size_t dim() const noexcept { return ring_->var_count(); }
  const K& at(std::size_t i, std::size_t j) const { return entries_[i * dim() + j]; }
  std::span<const K> entries() const noexcept { return entries_; }

  CoordinateChange inverse() const;

  friend bool operator==(const CoordinateChange& a, const CoordinateChange& b) {
    return same_ring(a.ring_, b.ring_) && a.entries_ == b.entries_;
  }

 private:
  RingPtr ring_;
  std::vector<K> entries_;
};

// Exact determinant by Gaussian elimination.
template <typename K>
K determinant(std::vector<K> matrix, std::size_t n, const CoefficientField& field);

template <typename K>
Polynomial<K> apply_change(const CoordinateChange<K>& g, const Polynomial<K>& p);

// All products of n generators with repetition, in lexicographic index order
// (f1^n, f1^(n-1) f2, ...). C(N+n-1, n) elements.
template <typename K>
std::vector<Polynomial<K>> ideal_power(std::span<const Polynomial<K>> gens, unsigned n);

// Parses the polynomial grammar: integers, variables of `ring`, + - * / ^,
// parentheses. Division is only by nonzero constants. Throws ParseError or
// DomainError (unknown variable is a ParseError; unrepresentable coefficient
// a DomainError).
Polynomial<Rational> parse_polynomial_q(std::string_view text, const RingPtr& ring);

template <typename K>
Polynomial<K> parse_polynomial(std::string_view text, const RingPtr& ring);

// Coefficient-wise conversion (rationals to F_p, or F_p representatives lifted
// to integers).
template <typename To, typename From>
Polynomial<To> convert(const Polynomial<From>& p, const RingPtr& target);

// ---------------------------------------------------------------------------
// Implementation

template <typename K>
Polynomial<K> Polynomial<K>::from_terms(RingPtr ring, std::vector<Term<K>> terms) {
  for (const auto& t : terms)
    if (t.exponents.size() != ring->var_count())
      throw DomainError("term " + t.exponents.to_string() + " does not match ring " + ring->to_string());
  std::sort(terms.begin(), terms.end(),
            [](const Term<K>& a, const Term<K>& b) { return RevlexGreater{}(a.exponents, b.exponents); });
  Polynomial p(std::move(ring));
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().exponents == t.exponents) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && Traits::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && Traits::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
  return p;
}

template <typename K>
Polynomial<K> Polynomial<K>::constant(RingPtr ring, const K& c) {
  return monomial(ring, c, ExponentVector(ring->var_count()));
}

template <typename K>
Polynomial<K> Polynomial<K>::monomial(RingPtr ring, const K& c, ExponentVector e) {
  Polynomial p(std::move(ring));
  if (e.size() != p.ring_->var_count()) throw DomainError("monomial length does not match ring");
  if (!Traits::is_zero(c)) p.terms_.push_back({c, std::move(e)});
  return p;
}

template <typename K>
Polynomial<K> Polynomial<K>::variable(RingPtr ring, std::size_t index) {
  const auto m = ring->var_count();
  const K one = Traits::from_int(1, ring->field());
  return monomial(std::move(ring), one, ExponentVector::unit(m, index));
}

template <typename K>
const Term<K>& Polynomial<K>::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  return terms_.front();
}

template <typename K>
bool Polynomial<K>::is_homogeneous() const noexcept {
  for (const auto& t : terms_)
    if (t.exponents.degree() != terms_.front().exponents.degree()) return false;
  return true;
}

template <typename K>
void Polynomial<K>::check_ring(const Polynomial& o, const char* op) const {
  if (!same_ring(ring_, o.ring_))
    throw DomainError(std::string(op) + ": ring mismatch (" + ring_->to_string() + " vs " +
                      o.ring_->to_string() + ")");
}

template <typename K>
Polynomial<K> Polynomial<K>::merge(const Polynomial& o, const K* factor, const ExponentVector* shift,
                                   bool subtract) const {
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto other_term = [&](std::size_t j) {
    Term<K> t = o.terms_[j];
    if (shift) t.exponents = t.exponents + *shift;
    if (factor) t.coeff *= *factor;
    if (subtract) t.coeff = -t.coeff;
    return t;
  };
  std::size_t i = 0, j = 0;
  std::optional<Term<K>> pending;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (!pending && j < o.terms_.size()) pending = other_term(j);
    if (j >= o.terms_.size()) {
      r.terms_.push_back(terms_[i++]);
      continue;
    }
    if (i >= terms_.size()) {
      r.terms_.push_back(std::move(*pending));
      pending.reset();
      ++j;
      continue;
    }
    auto c = revlex_unchecked(terms_[i].exponents, pending->exponents);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(std::move(*pending));
      pending.reset();
      ++j;
    } else {
      K sum = terms_[i].coeff + pending->coeff;
      if (!Traits::is_zero(sum)) r.terms_.push_back({std::move(sum), terms_[i].exponents});
      ++i;
      ++j;
      pending.reset();
    }
  }
  return r;
}

template <typename K>
Polynomial<K> Polynomial<K>::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

template <typename K>
Polynomial<K> Polynomial<K>::operator+(const Polynomial& o) const {
  check_ring(o, "add");
  return merge(o, nullptr, nullptr, false);
}

template <typename K>
Polynomial<K> Polynomial<K>::operator-(const Polynomial& o) const {
  check_ring(o, "subtract");
  return merge(o, nullptr, nullptr, true);
}

template <typename K>
Polynomial<K> Polynomial<K>::minus_term_times(const K& c, const ExponentVector& e,
                                              const Polynomial& other) const {
  return merge(other, &c, &e, true);
}

template <typename K>
Polynomial<K> Polynomial<K>::operator*(const Polynomial& o) const {
  check_ring(o, "multiply");
  if (is_zero() || o.is_zero()) return Polynomial(ring_);
  std::unordered_map<ExponentVector, K, ExponentVectorHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      auto e = a.exponents + b.exponents;
      auto it = acc.find(e);
      if (it == acc.end())
        acc.emplace(std::move(e), a.coeff * b.coeff);
      else
        it->second += a.coeff * b.coeff;
    }
  std::vector<Term<K>> out;
  out.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (!Traits::is_zero(c)) out.push_back({std::move(c), e});
  std::sort(out.begin(), out.end(),
            [](const Term<K>& a, const Term<K>& b) { return RevlexGreater{}(a.exponents, b.exponents); });
  Polynomial r(ring_);
  r.terms_ = std::move(out);
  return r;
}

template <typename K>
Polynomial<K> Polynomial<K>::scaled(const K& c) const {
  if (Traits::is_zero(c)) return Polynomial(ring_);
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

template <typename K>
Polynomial<K> Polynomial<K>::monic() const {
  if (is_zero()) return *this;
  return scaled(Traits::inverse(leading_coeff()));
}

template <typename K>
Polynomial<K> Polynomial<K>::tail() const {
  Polynomial r(ring_);
  if (terms_.size() > 1) r.terms_.assign(terms_.begin() + 1, terms_.end());
  return r;
}

template <typename K>
Polynomial<K> Polynomial<K>::times_term(const K& c, const ExponentVector& e) const {
  if (Traits::is_zero(c)) return Polynomial(ring_);
  Polynomial r(*this);
  for (auto& t : r.terms_) {
    t.coeff *= c;
    t.exponents = t.exponents + e;
  }
  return r;
}

template <typename K>
std::string Polynomial<K>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = Traits::lift(t.coeff);
    const bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      const auto e = t.exponents[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += ring_->variables()[i];
      if (e > 1) mono += '^' + std::to_string(e);
    }
    if (mono.empty())
      out += c.get_str();
    else if (c == 1)
      out += mono;
    else
      out += c.get_str() + '*' + mono;
  }
  return out;
}

template <typename K>
K determinant(std::vector<K> a, std::size_t n, const CoefficientField& field) {
  using T = ScalarTraits<K>;
  if (a.size() != n * n) throw DomainError("determinant: matrix is not square");
  K det = T::from_int(1, field);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && T::is_zero(a[piv * n + col])) ++piv;
    if (piv == n) return T::from_int(0, field);
    if (piv != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[piv * n + k], a[col * n + k]);
      det = -det;
    }
    const K pivot = a[col * n + col];
    det *= pivot;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (T::is_zero(a[r * n + col])) continue;
      const K f = a[r * n + col] / pivot;
      for (std::size_t k = col; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
    }
  }
  return det;
}

template <typename K>
CoordinateChange<K>::CoordinateChange(RingPtr ring, std::vector<K> entries)
    : ring_(std::move(ring)), entries_(std::move(entries)) {
  const auto m = ring_->var_count();
  if (entries_.size() != m * m)
    throw DomainError("coordinate change needs " + std::to_string(m * m) + " entries, got " +
                      std::to_string(entries_.size()));
  if (m == 0) throw DomainError("coordinate change on a ring without variables");
  if (ScalarTraits<K>::is_zero(determinant(entries_, m, ring_->field())))
    throw DomainError("coordinate change is singular");
}

template <typename K>
CoordinateChange<K> CoordinateChange<K>::identity(RingPtr ring) {
  const auto m = ring->var_count();
  std::vector<K> e(m * m, ScalarTraits<K>::from_int(0, ring->field()));
  for (std::size_t i = 0; i < m; ++i) e[i * m + i] = ScalarTraits<K>::from_int(1, ring->field());
  return CoordinateChange(std::move(ring), std::move(e));
}

template <typename K>
CoordinateChange<K> CoordinateChange<K>::inverse() const {
  using T = ScalarTraits<K>;
  const auto n = dim();
  std::vector<K> a(entries_);
  std::vector<K> inv(n * n, T::from_int(0, ring_->field()));
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = T::from_int(1, ring_->field());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (T::is_zero(a[piv * n + col])) ++piv;  // nonsingular by construction
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(a[piv * n + k], a[col * n + k]);
      std::swap(inv[piv * n + k], inv[col * n + k]);
    }
    const K pinv = T::inverse(a[col * n + col]);
    for (std::size_t k = 0; k < n; ++k) {
      a[col * n + k] *= pinv;
      inv[col * n + k] *= pinv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || T::is_zero(a[r * n + col])) continue;
      const K f = a[r * n + col];
      for (std::size_t k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[col * n + k];
        inv[r * n + k] -= f * inv[col * n + k];
      }
    }
  }
  return CoordinateChange(ring_, std::move(inv));
}

template <typename K>
Polynomial<K> apply_change(const CoordinateChange<K>& g, const Polynomial<K>& p) {
  if (!same_ring(g.ring_ptr(), p.ring_ptr()))
    throw DomainError("apply_change: ring mismatch (" + g.ring().to_string() + " vs " +
                      p.ring().to_string() + ")");
  const auto& ring = p.ring_ptr();
  const auto m = ring->var_count();
  // powers[i][k] = g(x_i)^k, built on demand.
  std::vector<std::vector<Polynomial<K>>> powers(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Term<K>> row;
    for (std::size_t j = 0; j < m; ++j) row.push_back({g.at(i, j), ExponentVector::unit(m, j)});
    powers[i].push_back(Polynomial<K>::constant(ring, ScalarTraits<K>::from_int(1, ring->field())));
    powers[i].push_back(Polynomial<K>::from_terms(ring, std::move(row)));
  }
  auto power = [&](std::size_t i, std::uint32_t k) -> const Polynomial<K>& {
    while (powers[i].size() <= k) powers[i].push_back(powers[i].back() * powers[i][1]);
    return powers[i][k];
  };
  Polynomial<K> result(ring);
  for (const auto& t : p.terms()) {
    auto image = Polynomial<K>::constant(ring, t.coeff);
    for (std::size_t i = 0; i < m; ++i)
      if (t.exponents[i] != 0) image = image * power(i, t.exponents[i]);
    result = result + image;
  }
  return result;
}

template <typename K>
std::vector<Polynomial<K>> ideal_power(std::span<const Polynomial<K>> gens, unsigned n) {
  if (n == 0) throw DomainError("ideal_power: exponent must be at least 1");
  if (gens.empty()) throw DomainError("ideal_power: no generators");
  for (const auto& g : gens)
    if (g.is_zero()) throw DomainError("ideal_power: zero generator");
  std::vector<Polynomial<K>> out;
  // Nondecreasing index tuples (i_1 <= ... <= i_n) with running products.
  std::vector<std::size_t> idx;
  std::vector<Polynomial<K>> prefix;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (idx.size() == n) {
      out.push_back(prefix.back());
      return;
    }
    for (std::size_t i = start; i < gens.size(); ++i) {
      idx.push_back(i);
      prefix.push_back(prefix.empty() ? gens[i] : prefix.back() * gens[i]);
      self(self, i);
      prefix.pop_back();
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

template <typename To, typename From>
Polynomial<To> convert(const Polynomial<From>& p, const RingPtr& target) {
  if (target->variables() != p.ring().variables())
    throw DomainError("convert: variable lists differ");
  std::vector<Term<To>> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms())
    terms.push_back(
        {ScalarTraits<To>::from_rational(ScalarTraits<From>::lift(t.coeff), target->field()), t.exponents});
  return Polynomial<To>::from_terms(target, std::move(terms));
}

template <typename K>
Polynomial<K> parse_polynomial(std::string_view text, const RingPtr& ring) {
  auto q = parse_polynomial_q(text, with_field(ring, CoefficientField::rationals()));
  return convert<K>(q, ring);
}

}  // namespace ginlab
