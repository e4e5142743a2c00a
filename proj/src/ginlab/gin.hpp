#pragma once

#include <cstdint>
#include <future>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "groebner.hpp"
#include "poly.hpp"
#include "staircase.hpp"

namespace ginlab {

struct GinOptions {
  // Entries of random coordinate changes are drawn from [-coefficient_bound, coefficient_bound].
  std::int64_t coefficient_bound = 1000;
  // Two-sample rounds before giving up.
  unsigned rounds = 3;
};

struct GinCertificate {
  std::vector<std::uint64_t> seeds_used;
  bool samples_agreed = false;
  bool borel_verified = false;
  CoefficientField field = CoefficientField::rationals();

  bool accepted() const noexcept { return samples_agreed && borel_verified; }
  friend bool operator==(const GinCertificate&, const GinCertificate&) = default;
};

struct GinResult {
  MonomialIdeal ideal;
  GinCertificate certificate;
};

// Deterministic seed derivation (splitmix64 over seed and stream index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Uniform integers in [-bound, bound], deterministic in seed (mt19937_64 with
// rejection sampling, so results do not depend on the standard library).
std::vector<std::int64_t> random_integers(std::uint64_t seed, std::size_t count, std::int64_t bound);

// Full m x m matrix with entries in [-bound, bound], resampled (up to 100
// attempts) until invertible over the ring's field.
template <typename K>
CoordinateChange<K> sample_change(const RingPtr& ring, std::uint64_t seed, std::int64_t bound = 1000);

// gin(I) for I generated by `gens`: initial ideals of g1(I) and g2(I) for
// two independent samples must agree and be strongly stable.
template <typename K>
GinResult gin(std::span<const Polynomial<K>> gens, std::uint64_t seed, const GinOptions& opts = {});

// gin(I^n) computed as In(g(I)^n); same samples and result as
// gin(ideal_power(gens, n), seed).
template <typename K>
GinResult gin_of_power(std::span<const Polynomial<K>> gens, unsigned n, std::uint64_t seed,
                       const GinOptions& opts = {});

// Initial ideal in the given coordinates.
template <typename K>
MonomialIdeal initial_ideal_of(std::span<const Polynomial<K>> gens) {
  return initial_ideal(buchberger<K>(gens));
}

struct ContainmentRecord {
  unsigned i = 0, j = 0;
  bool holds = false;
};

// n -> gin(I^n) for n = 1..n_max, plus the graded-system containment checks
// gin(I^i) gin(I^j) in gin(I^(i+j)).
struct GinSequence {
  RingPtr ring;
  std::vector<std::string> generators;  // printed input generators
  std::map<unsigned, GinResult> entries;
  std::vector<ContainmentRecord> containments;

  const GinResult& at(unsigned n) const;
  bool has(unsigned n) const { return entries.count(n) != 0; }
  unsigned n_max() const { return entries.empty() ? 0 : entries.rbegin()->first; }
  bool all_containments_hold() const;
};

// Recomputes the containment records from the entries.
void check_graded_containments(GinSequence& seq);

template <typename K>
GinSequence gin_sequence(std::span<const Polynomial<K>> gens, unsigned n_max, std::uint64_t seed,
                         const GinOptions& opts = {}, bool parallel = true);

// ---------------------------------------------------------------------------
// Implementation

namespace detail {

template <typename K>
void require_homogeneous(std::span<const Polynomial<K>> gens) {
  if (gens.empty()) throw DomainError("gin: no generators");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) throw DomainError("gin: generator " + std::to_string(i + 1) + " is zero");
    if (!gens[i].is_homogeneous())
      throw DomainError("gin: generator " + std::to_string(i + 1) + " is not homogeneous: " + gens[i].to_string());
  }
}

std::string describe_difference(const MonomialIdeal& a, const MonomialIdeal& b);

template <typename K, typename Transform>
GinResult gin_rounds(const RingPtr& ring, std::uint64_t seed, const GinOptions& opts, Transform&& transformed_gens) {
  GinCertificate cert;
  cert.field = ring->field();
  std::string last_failure;
  for (unsigned round = 0; round < opts.rounds; ++round) {
    const auto s1 = derive_seed(seed, 2 * round);
    const auto s2 = derive_seed(seed, 2 * round + 1);
    cert.seeds_used.push_back(s1);
    cert.seeds_used.push_back(s2);
    const auto g1 = sample_change<K>(ring, s1, opts.coefficient_bound);
    const auto g2 = sample_change<K>(ring, s2, opts.coefficient_bound);
    const auto in1 = initial_ideal_of<K>(transformed_gens(g1));
    const auto in2 = initial_ideal_of<K>(transformed_gens(g2));
    if (!(in1 == in2)) {
      last_failure = "round " + std::to_string(round + 1) + ": samples disagree; " + describe_difference(in1, in2);
      continue;
    }
    if (!is_strongly_stable(in1)) {
      last_failure = "round " + std::to_string(round + 1) + ": agreed initial ideal is not strongly stable";
      continue;
    }
    cert.samples_agreed = true;
    cert.borel_verified = true;
    return GinResult{in1, cert};
  }
  throw ComputationError("gin: no certified generic initial ideal after " + std::to_string(opts.rounds) +
                         " rounds (" + last_failure + ")");
}

}  // namespace detail

template <typename K>
CoordinateChange<K> sample_change(const RingPtr& ring, std::uint64_t seed, std::int64_t bound) {
  if (bound < 1) throw DomainError("sample_change: coefficient bound must be positive");
  const auto m = ring->var_count();
  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    const auto raw = random_integers(derive_seed(seed, 0x5eed0000ULL + attempt), m * m, bound);
    std::vector<K> entries;
    entries.reserve(raw.size());
    for (auto v : raw) entries.push_back(ScalarTraits<K>::from_int(v, ring->field()));
    if (ScalarTraits<K>::is_zero(determinant(entries, m, ring->field()))) continue;
    return CoordinateChange<K>(ring, std::move(entries));
  }
  throw ComputationError("sample_change: no invertible matrix in 100 attempts");
}

template <typename K>
GinResult gin(std::span<const Polynomial<K>> gens, std::uint64_t seed, const GinOptions& opts) {
  detail::require_homogeneous(gens);
  const RingPtr ring = gens.front().ring_ptr();
  return detail::gin_rounds<K>(ring, seed, opts, [&](const CoordinateChange<K>& g) {
    std::vector<Polynomial<K>> out;
    out.reserve(gens.size());
    for (const auto& f : gens) out.push_back(apply_change(g, f));
    return out;
  });
}

template <typename K>
GinResult gin_of_power(std::span<const Polynomial<K>> gens, unsigned n, std::uint64_t seed, const GinOptions& opts) {
  detail::require_homogeneous(gens);
  if (n == 0) throw DomainError("gin_of_power: power must be at least 1");
  const RingPtr ring = gens.front().ring_ptr();
  return detail::gin_rounds<K>(ring, seed, opts, [&](const CoordinateChange<K>& g) {
    std::vector<Polynomial<K>> moved;
    moved.reserve(gens.size());
    for (const auto& f : gens) moved.push_back(apply_change(g, f));
    return ideal_power<K>(moved, n);
  });
}

template <typename K>
GinSequence gin_sequence(std::span<const Polynomial<K>> gens, unsigned n_max, std::uint64_t seed,
                         const GinOptions& opts, bool parallel) {
  if (n_max == 0) throw DomainError("gin_sequence: n_max must be at least 1");
  detail::require_homogeneous(gens);
  GinSequence seq;
  seq.ring = gens.front().ring_ptr();
  for (const auto& f : gens) seq.generators.push_back(f.to_string());
  if (parallel) {
    std::vector<std::future<GinResult>> jobs;
    for (unsigned n = 1; n <= n_max; ++n)
      jobs.push_back(std::async(std::launch::async, [&, n] { return gin_of_power<K>(gens, n, seed, opts); }));
    // Joined in index order; the first failure propagates.
    for (unsigned n = 1; n <= n_max; ++n) seq.entries.emplace(n, jobs[n - 1].get());
  } else {
    for (unsigned n = 1; n <= n_max; ++n) seq.entries.emplace(n, gin_of_power<K>(gens, n, seed, opts));
  }
  check_graded_containments(seq);
  return seq;
}

}  // namespace ginlab
