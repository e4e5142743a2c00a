#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <span>
#include <tuple>
#include <vector>

#include "poly.hpp"
#include "staircase.hpp"

namespace ginlab {

// Reduced Groebner basis under graded revlex: monic elements, sorted by
// leading monomial from the revlex-greatest down.
template <typename K>
class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, std::vector<Polynomial<K>> elements)
      : ring_(std::move(ring)), elements_(std::move(elements)) {}

  const RingSpec& ring() const noexcept { return *ring_; }
  const RingPtr& ring_ptr() const noexcept { return ring_; }
  std::span<const Polynomial<K>> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return same_ring(a.ring_, b.ring_) && a.elements_ == b.elements_;
  }

 private:
  RingPtr ring_;
  std::vector<Polynomial<K>> elements_;
};

// Full normal form: repeatedly reduces the greatest reducible term by the
// first basis element (in list order) whose leading monomial divides it.
template <typename K>
Polynomial<K> reduce(const Polynomial<K>& p, std::span<const Polynomial<K>> basis);

template <typename K>
Polynomial<K> s_polynomial(const Polynomial<K>& f, const Polynomial<K>& g);

// Buchberger's algorithm with the coprime and chain criteria and the normal
// selection strategy. Throws DomainError if every generator is zero.
template <typename K>
GroebnerBasis<K> buchberger(std::span<const Polynomial<K>> gens);

template <typename K>
MonomialIdeal initial_ideal(const GroebnerBasis<K>& gb) {
  std::vector<ExponentVector> lms;
  for (const auto& f : gb.elements()) lms.push_back(f.leading_monomial());
  return MonomialIdeal::minimalize(std::move(lms), gb.ring().var_count());
}

// ---------------------------------------------------------------------------
// Implementation

template <typename K>
Polynomial<K> reduce(const Polynomial<K>& p, std::span<const Polynomial<K>> basis) {
  for (const auto& b : basis) {
    if (!same_ring(b.ring_ptr(), p.ring_ptr()))
      throw DomainError("reduce: ring mismatch (" + p.ring().to_string() + " vs " + b.ring().to_string() + ")");
    if (b.is_zero()) throw DomainError("reduce: zero polynomial in basis");
  }
  std::vector<Term<K>> remainder;
  Polynomial<K> h = p;
  while (!h.is_zero()) {
    const auto& lt = h.leading_term();
    const Polynomial<K>* divisor = nullptr;
    for (const auto& b : basis)
      if (b.leading_monomial().divides(lt.exponents)) {
        divisor = &b;
        break;
      }
    if (divisor) {
      const K c = lt.coeff / divisor->leading_coeff();
      const auto shift = lt.exponents - divisor->leading_monomial();
      h = h.minus_term_times(c, shift, *divisor);
    } else {
      remainder.push_back(lt);
      h = h.tail();
    }
  }
  // Remainder terms were emitted in decreasing order already.
  return Polynomial<K>::from_terms(p.ring_ptr(), std::move(remainder));
}

template <typename K>
Polynomial<K> s_polynomial(const Polynomial<K>& f, const Polynomial<K>& g) {
  const auto l = f.leading_monomial().lcm(g.leading_monomial());
  using T = ScalarTraits<K>;
  auto a = f.times_term(T::inverse(f.leading_coeff()), l - f.leading_monomial());
  return a.minus_term_times(T::inverse(g.leading_coeff()), l - g.leading_monomial(), g);
}

namespace detail {

inline bool coprime(const ExponentVector& a, const ExponentVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

// Inter-reduces a basis whose leading monomials are already minimal.
template <typename K>
std::vector<Polynomial<K>> reduce_basis(std::vector<Polynomial<K>> g) {
  // Minimal basis: drop elements whose leading monomial is divisible by
  // another's (first occurrence wins among equal leading monomials).
  std::vector<Polynomial<K>> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < g.size() && !drop; ++j) {
      if (i == j) continue;
      const auto& li = g[i].leading_monomial();
      const auto& lj = g[j].leading_monomial();
      if (lj.divides(li) && (li != lj || j < i)) drop = true;
    }
    if (!drop) minimal.push_back(g[i].monic());
  }
  std::sort(minimal.begin(), minimal.end(), [](const Polynomial<K>& a, const Polynomial<K>& b) {
    return RevlexGreater{}(a.leading_monomial(), b.leading_monomial());
  });
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial<K>> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    // Leading term is irreducible by the others; reduce the whole element.
    minimal[i] = reduce<K>(minimal[i], others).monic();
  }
  return minimal;
}

}  // namespace detail

template <typename K>
GroebnerBasis<K> buchberger(std::span<const Polynomial<K>> gens) {
  if (gens.empty()) throw DomainError("buchberger: no generators");
  const RingPtr ring = gens.front().ring_ptr();
  std::vector<Polynomial<K>> basis;
  for (const auto& f : gens) {
    if (!same_ring(f.ring_ptr(), ring)) throw DomainError("buchberger: generators live in different rings");
    if (!f.is_zero()) basis.push_back(f.monic());
  }
  if (basis.empty()) throw DomainError("buchberger: all generators are zero");

  // Pending pairs ordered by (lcm degree, lcm revlex ascending, i, j).
  struct Pair {
    std::uint64_t degree;
    ExponentVector lcm;
    std::size_t i, j;
  };
  auto pair_less = [](const Pair& a, const Pair& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    auto c = revlex_unchecked(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  };
  std::set<Pair, decltype(pair_less)> pending(pair_less);
  std::set<std::pair<std::size_t, std::size_t>> pending_keys;

  auto add_pairs_for = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      auto l = basis[i].leading_monomial().lcm(basis[k].leading_monomial());
      const auto d = l.degree();
      pending.insert(Pair{d, std::move(l), i, k});
      pending_keys.insert({i, k});
    }
  };
  for (std::size_t k = 0; k < basis.size(); ++k) add_pairs_for(k);

  auto is_pending = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return pending_keys.count({a, b}) != 0;
  };

  while (!pending.empty()) {
    const Pair p = *pending.begin();
    pending.erase(pending.begin());
    pending_keys.erase({p.i, p.j});
    const auto& fi = basis[p.i];
    const auto& fj = basis[p.j];
    if (detail::coprime(fi.leading_monomial(), fj.leading_monomial())) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == p.i || k == p.j) continue;
      if (basis[k].leading_monomial().divides(p.lcm) && !is_pending(p.i, k) && !is_pending(p.j, k)) chain = true;
    }
    if (chain) continue;
    auto r = reduce<K>(s_polynomial(fi, fj), basis);
    if (r.is_zero()) continue;
    basis.push_back(r.monic());
    add_pairs_for(basis.size() - 1);
  }
  return GroebnerBasis<K>(ring, detail::reduce_basis(std::move(basis)));
}

}  // namespace ginlab
