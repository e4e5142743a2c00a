#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "gin.hpp"
#include "poly.hpp"

namespace ginlab {

// A homogeneous ideal to analyse. Generators are kept over the rationals
// (in the rational copy of `ring`); `ring` records the declared field.
struct IdealSpec {
  RingPtr ring;
  std::vector<Polynomial<Rational>> generators;
  std::optional<CIType> declared_type;

  // Validates homogeneity and, when a type is given, that the sorted
  // generator degrees and variable count match it.
  static IdealSpec make(RingPtr ring, std::vector<Polynomial<Rational>> generators,
                        std::optional<CIType> declared_type = std::nullopt);

  std::vector<std::string> printed_generators() const;
};

// Generators converted to the given field (over the same variables).
template <typename K>
std::vector<Polynomial<K>> generators_in(const IdealSpec& spec, const CoefficientField& field);

enum class CIStyle { diagonal, generic };
CIStyle parse_style(const std::string& text);
std::string to_string(CIStyle s);

// Diagonal: (x_1^d_1, ..., x_r^d_r). Generic: r dense forms with integer
// coefficients in [-1000, 1000]. Both are certified regular by
// dim(R/gin(I)) = m - r over `certify_field`, with up to 3 resamples.
IdealSpec make_ci(const CIType& t, CIStyle style, std::uint64_t seed,
                  const CoefficientField& certify_field = CoefficientField::prime_field(32003));

struct VerifyOptions {
  // Field for the main run; defaults to F_32003, or the declared prime field.
  std::optional<CoefficientField> field;
  // Entries n <= this are recomputed over Q and compared.
  unsigned replicate_up_to = 2;
  GinOptions gin;
  bool parallel = true;
  // Degree bound for the multiplier comparison; default_degree_bound(t) if unset.
  std::optional<std::uint32_t> multiplier_bound;
};

struct VerificationReport {
  IdealSpec spec;
  CIType type;
  CoefficientField field;
  std::uint64_t seed = 0;
  GinSequence sequence;
  // One row per n; rows carry every per-entry check.
  ConvergenceReport convergence;
  // Checks spanning several entries.
  CheckMap global_checks;
  std::optional<EmpiricalMultiplier> empirical_multiplier;
  std::optional<MultiplierResult> closed_multiplier;

  bool overall() const;
};

// Runs the gin sequence and every check against the spec's declared type.
VerificationReport verify_ci(const IdealSpec& spec, unsigned n_max, std::uint64_t seed, const VerifyOptions& opts = {});

// Same, checked against an arbitrary claimed type (used for negative
// controls; the generators need not match `claimed`).
VerificationReport verify_ci(const IdealSpec& spec, const CIType& claimed, unsigned n_max, std::uint64_t seed,
                             const VerifyOptions& opts = {});

struct EmbeddingReport {
  CIType type;        // ambient m > r
  GinSequence large;  // generic CI in m variables
  GinSequence small;  // generic CI in r variables
  // Per n: "support" and "generators_match".
  std::map<unsigned, CheckMap> checks;

  bool passed() const;
};

// Compares gin sequences of a generic type-t CI in m variables and in r
// variables.
EmbeddingReport verify_embedding_reduction(const CIType& t, unsigned n_max, std::uint64_t seed,
                                           const CoefficientField& field = CoefficientField::prime_field(32003),
                                           const GinOptions& opts = {});

template <typename K>
std::vector<Polynomial<K>> generators_in(const IdealSpec& spec, const CoefficientField& field) {
  const auto ring = with_field(spec.ring, field);
  std::vector<Polynomial<K>> out;
  out.reserve(spec.generators.size());
  for (const auto& g : spec.generators) out.push_back(convert<K>(g, ring));
  return out;
}

}  // namespace ginlab
