#include "verify.hpp"

#include <algorithm>
#include <future>

namespace ginlab {

IdealSpec IdealSpec::make(RingPtr ring, std::vector<Polynomial<Rational>> generators,
                          std::optional<CIType> declared_type) {
  if (!ring) throw DomainError("ideal spec: missing ring");
  if (generators.empty()) throw DomainError("ideal spec: no generators");
  const auto qring = with_field(ring, CoefficientField::rationals());
  std::vector<std::uint32_t> degrees;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    auto& g = generators[i];
    if (g.ring().variables() != ring->variables())
      throw DomainError("ideal spec: generator " + std::to_string(i + 1) + " is over a different ring");
    if (g.is_zero()) throw DomainError("ideal spec: generator " + std::to_string(i + 1) + " is zero");
    if (!g.is_homogeneous())
      throw DomainError("ideal spec: generator " + std::to_string(i + 1) + " is not homogeneous: " + g.to_string());
    if (ring->field().kind() == CoefficientField::Kind::prime)
      (void)convert<ModP>(g, ring);  // rejects coefficients not representable in F_p
    g = convert<Rational>(g, qring);
    degrees.push_back(static_cast<std::uint32_t>(g.degree()));
  }
  if (declared_type) {
    std::sort(degrees.begin(), degrees.end());
    const std::vector<std::uint32_t> declared(declared_type->degrees().begin(), declared_type->degrees().end());
    if (degrees != declared)
      throw DomainError("ideal spec: generator degrees do not match declared type " + declared_type->to_string());
    if (declared_type->ambient() != ring->var_count())
      throw DomainError("ideal spec: declared type has " + std::to_string(declared_type->ambient()) +
                        " variables, ring has " + std::to_string(ring->var_count()));
  }
  return IdealSpec{std::move(ring), std::move(generators), std::move(declared_type)};
}

std::vector<std::string> IdealSpec::printed_generators() const {
  std::vector<std::string> out;
  for (const auto& g : generators) out.push_back(g.to_string());
  return out;
}

CIStyle parse_style(const std::string& text) {
  if (text == "diagonal") return CIStyle::diagonal;
  if (text == "generic") return CIStyle::generic;
  throw DomainError("unknown style '" + text + "' (expected diagonal or generic)");
}

std::string to_string(CIStyle s) { return s == CIStyle::diagonal ? "diagonal" : "generic"; }

namespace {

std::vector<ExponentVector> monomials_of_degree(std::size_t m, std::uint32_t d) {
  std::vector<ExponentVector> out;
  std::vector<std::uint32_t> e(m, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == m) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (std::uint32_t k = left + 1; k-- > 0;) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

std::vector<Polynomial<Rational>> generic_forms(const RingPtr& ring, const CIType& t, std::uint64_t seed) {
  std::vector<Polynomial<Rational>> out;
  for (std::size_t k = 0; k < t.r(); ++k) {
    const auto monos = monomials_of_degree(ring->var_count(), t.degree(k));
    const auto coeffs = random_integers(derive_seed(seed, k), monos.size(), 1000);
    std::vector<Term<Rational>> terms;
    for (std::size_t i = 0; i < monos.size(); ++i) terms.push_back({Rational(coeffs[i]), monos[i]});
    out.push_back(Polynomial<Rational>::from_terms(ring, std::move(terms)));
  }
  return out;
}

template <typename K>
std::string regularity_failure(const IdealSpec& spec, const CIType& t, std::uint64_t seed,
                               const CoefficientField& field) {
  try {
    const auto gens = generators_in<K>(spec, field);
    const auto g = gin<K>(gens, seed);
    const auto dd = dim_depth(g.ideal);
    const auto want = t.ambient() - t.r();
    if (dd.dimension == want) return {};
    return "dim(R/gin(I)) = " + std::to_string(dd.dimension) + ", expected " + std::to_string(want);
  } catch (const ComputationError& e) {
    return e.what();
  } catch (const DomainError& e) {
    return e.what();
  }
}

std::string regularity_failure(const IdealSpec& spec, const CIType& t, std::uint64_t seed,
                               const CoefficientField& field) {
  return field.is_rational() ? regularity_failure<Rational>(spec, t, seed, field)
                             : regularity_failure<ModP>(spec, t, seed, field);
}

}  // namespace

IdealSpec make_ci(const CIType& t, CIStyle style, std::uint64_t seed, const CoefficientField& certify_field) {
  const auto ring = RingSpec::standard(t.ambient());
  std::string failure;
  for (std::uint64_t attempt = 0; attempt < 3; ++attempt) {
    std::vector<Polynomial<Rational>> gens;
    if (style == CIStyle::diagonal) {
      for (std::size_t i = 0; i < t.r(); ++i) {
        ExponentVector e = ExponentVector::unit(t.ambient(), i).with(i, t.degree(i));
        gens.push_back(Polynomial<Rational>::monomial(ring, Rational(1), e));
      }
    } else {
      gens = generic_forms(ring, t, derive_seed(seed, 0xc1000000ULL + attempt));
    }
    bool nonzero = std::none_of(gens.begin(), gens.end(), [](const auto& g) { return g.is_zero(); });
    if (!nonzero) {
      failure = "zero form sampled";
      continue;
    }
    auto spec = IdealSpec::make(ring, std::move(gens), t);
    failure = regularity_failure(spec, t, derive_seed(seed, 0xce000000ULL + attempt), certify_field);
    if (failure.empty()) return spec;
    if (style == CIStyle::diagonal) break;
  }
  throw ComputationError("make_ci: regularity certificate failed for type " + t.to_string() + ": " + failure);
}

bool VerificationReport::overall() const { return convergence.passed() && !any_failed(global_checks); }

bool EmbeddingReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const auto& kv) { return any_failed(kv.second); });
}

namespace {

CoefficientField effective_field(const IdealSpec& spec, const VerifyOptions& opts) {
  const auto& declared = spec.ring->field();
  if (opts.field) {
    if (!declared.is_rational() && !(*opts.field == declared))
      throw DomainError("ideal is declared over " + declared.to_string() + "; cannot compute over " +
                        opts.field->to_string());
    return *opts.field;
  }
  return declared.is_rational() ? CoefficientField::prime_field(32003) : declared;
}

template <typename K>
GinSequence run_sequence(const IdealSpec& spec, const CoefficientField& field, unsigned n_max, std::uint64_t seed,
                         const VerifyOptions& opts) {
  const auto gens = generators_in<K>(spec, field);
  return gin_sequence<K>(gens, n_max, seed, opts.gin, opts.parallel);
}

template <typename K>
MonomialIdeal identity_initial(const IdealSpec& spec, const CoefficientField& field, unsigned n) {
  const auto gens = generators_in<K>(spec, field);
  const auto power = ideal_power<K>(gens, n);
  return initial_ideal_of<K>(power);
}

// Checks on a single entry beyond those of verify_limiting_polytope.
CheckMap entry_checks(const IdealSpec& spec, const CIType& t, const CoefficientField& field,
                      const GinSequence& seq, unsigned n, std::uint64_t seed, const VerifyOptions& opts) {
  CheckMap checks;
  const auto& ideal = seq.at(n).ideal;
  const auto r = t.r();
  const bool stable = is_strongly_stable(ideal);
  checks["strongly_stable"] = Check::of(stable, "gin(I^n) is strongly stable");

  const auto p = pure_powers(ideal);
  const auto top = p.exponents[r - 1] ? *p.exponents[r - 1] : static_cast<std::uint32_t>(ideal.max_degree());
  const std::uint32_t d_max = top + 2;
  try {
    const auto in = field.is_rational() ? identity_initial<Rational>(spec, field, n)
                                        : identity_initial<ModP>(spec, field, n);
    const bool same = hilbert_function(ideal, d_max) == hilbert_function(in, d_max);
    checks["hilbert_function"] =
        Check::of(same, "HF(R/gin(I^n), d) = HF(R/In(I^n), d) for d = 0.." + std::to_string(d_max));
  } catch (const std::exception& e) {
    checks["hilbert_function"] = Check::fail(e.what());
  }

  if (stable) {
    const auto dd = dim_depth(ideal);
    checks["support"] = Check::of(dd.d == r && dd.m == r, "D = " + std::to_string(dd.d) + ", M = " +
                                                               std::to_string(dd.m) + ", expected " +
                                                               std::to_string(r));
    if (p.exponents[r - 1]) {
      const auto j = *p.exponents[r - 1] + static_cast<std::uint32_t>(r) - 1;
      const auto beta = ek_betti(ideal).at(static_cast<std::uint32_t>(r - 1), j);
      checks["betti"] = Check::of(beta >= 1, "beta_{" + std::to_string(r - 1) + "," + std::to_string(j) +
                                                 "} = " + beta.get_str());
    } else {
      checks["betti"] = Check::fail("no pure power of x_r");
    }
  } else {
    checks["support"] = Check::skip("not strongly stable");
    checks["betti"] = Check::skip("not strongly stable");
  }

  if (field.is_rational()) {
    checks["rational_replication"] = Check::skip("main run is over Q");
  } else if (!spec.ring->field().is_rational()) {
    checks["rational_replication"] = Check::skip("ideal is declared over a prime field");
  } else if (n > opts.replicate_up_to) {
    checks["rational_replication"] = Check::skip("n above replication range");
  } else {
    try {
      const auto gens = generators_in<Rational>(spec, CoefficientField::rationals());
      const auto q = gin_of_power<Rational>(gens, n, seed, opts.gin);
      checks["rational_replication"] = Check::of(q.ideal == ideal, "gin over Q equals gin over " + field.to_string());
    } catch (const std::exception& e) {
      checks["rational_replication"] = Check::fail(e.what());
    }
  }
  return checks;
}

}  // namespace

VerificationReport verify_ci(const IdealSpec& spec, unsigned n_max, std::uint64_t seed, const VerifyOptions& opts) {
  if (!spec.declared_type) throw DomainError("verify_ci: the ideal has no declared complete intersection type");
  return verify_ci(spec, *spec.declared_type, n_max, seed, opts);
}

VerificationReport verify_ci(const IdealSpec& spec, const CIType& claimed, unsigned n_max, std::uint64_t seed,
                             const VerifyOptions& opts) {
  if (n_max == 0) throw DomainError("verify_ci: n_max must be at least 1");
  if (claimed.ambient() != spec.ring->var_count())
    throw DomainError("verify_ci: type " + claimed.to_string() + " is for " + std::to_string(claimed.ambient()) +
                      " variables, ring has " + std::to_string(spec.ring->var_count()));
  const auto field = effective_field(spec, opts);
  auto seq = field.is_rational() ? run_sequence<Rational>(spec, field, n_max, seed, opts)
                                 : run_sequence<ModP>(spec, field, n_max, seed, opts);
  auto convergence = verify_limiting_polytope(seq, claimed);

  std::vector<std::future<CheckMap>> jobs;
  for (unsigned n = 1; n <= n_max; ++n)
    jobs.push_back(std::async(opts.parallel ? std::launch::async : std::launch::deferred,
                              [&, n] { return entry_checks(spec, claimed, field, seq, n, seed, opts); }));
  for (unsigned n = 1; n <= n_max; ++n) {
    auto extra = jobs[n - 1].get();
    convergence.rows[n - 1].checks.merge(extra);
  }

  VerificationReport rep{spec, claimed, field, seed, std::move(seq), std::move(convergence), {}, {}, {}};

  const bool containments = rep.sequence.all_containments_hold();
  rep.global_checks["graded_containment"] =
      rep.sequence.containments.empty()
          ? Check::skip("n_max < 2")
          : Check::of(containments, "gin(I^i) gin(I^j) in gin(I^(i+j)) for " +
                                        std::to_string(rep.sequence.containments.size()) + " pairs");

  const auto bound = opts.multiplier_bound.value_or(default_degree_bound(claimed));
  try {
    const unsigned p = n_max >= 2 ? n_max / 2 : 1;
    rep.empirical_multiplier = asymptotic_multiplier_ideal_empirical(rep.sequence, Rational(1), p, bound);
    rep.closed_multiplier = ci_asymptotic_multiplier_ideal(claimed, Rational(1), bound);
    const auto& emp = rep.empirical_multiplier->result.ideal;
    const auto& closed = rep.closed_multiplier->ideal;
    std::string detail = "p = " + std::to_string(p);
    if (rep.empirical_multiplier->stabilized)
      detail += *rep.empirical_multiplier->stabilized ? ", agrees with 2p" : ", differs from 2p";
    if (emp == closed)
      rep.global_checks["multiplier_c1"] = Check::pass(detail + ", equals closed form");
    else if (contains_ideal(emp, closed))
      rep.global_checks["multiplier_c1"] = Check::skip(detail + ", strictly inside closed form (not stabilized)");
    else
      rep.global_checks["multiplier_c1"] = Check::fail(detail + ", not contained in closed form");
  } catch (const DomainError& e) {
    rep.global_checks["multiplier_c1"] = Check::fail(e.what());
  }
  return rep;
}

namespace {

MonomialIdeal pad(const MonomialIdeal& j, std::size_t m) {
  std::vector<ExponentVector> gens;
  for (const auto& g : j.generators()) {
    std::vector<std::uint32_t> e(m, 0);
    for (std::size_t i = 0; i < g.size(); ++i) e[i] = g[i];
    gens.emplace_back(e);
  }
  return MonomialIdeal::minimalize(std::move(gens), m);
}

GinSequence generic_sequence(const CIType& t, unsigned n_max, std::uint64_t seed, const CoefficientField& field,
                             const GinOptions& opts) {
  const auto spec = make_ci(t, CIStyle::generic, seed, field);
  VerifyOptions vo;
  vo.field = field;
  vo.gin = opts;
  return field.is_rational() ? run_sequence<Rational>(spec, field, n_max, seed, vo)
                             : run_sequence<ModP>(spec, field, n_max, seed, vo);
}

}  // namespace

EmbeddingReport verify_embedding_reduction(const CIType& t, unsigned n_max, std::uint64_t seed,
                                           const CoefficientField& field, const GinOptions& opts) {
  if (t.ambient() <= t.r()) throw DomainError("verify_embedding_reduction: needs m > r");
  if (n_max == 0) throw DomainError("verify_embedding_reduction: n_max must be at least 1");
  const CIType reduced(std::vector<std::uint32_t>(t.degrees().begin(), t.degrees().end()), t.r());
  EmbeddingReport rep{t, generic_sequence(t, n_max, seed, field, opts),
                      generic_sequence(reduced, n_max, derive_seed(seed, 0x3e3), field, opts), {}};
  const auto r = t.r();
  for (unsigned n = 1; n <= n_max; ++n) {
    const auto& big = rep.large.at(n).ideal;
    std::string outside;
    for (const auto& g : big.generators())
      if (g.max_variable() > r) {
        outside = g.to_string();
        break;
      }
    auto& c = rep.checks[n];
    c["support"] = Check::of(outside.empty(), outside.empty() ? "generators only involve x1..x" + std::to_string(r)
                                                              : "generator " + outside + " leaves x1..x" +
                                                                    std::to_string(r));
    const bool same = pad(rep.small.at(n).ideal, t.ambient()) == big;
    c["generators_match"] = Check::of(same, same ? "same minimal generators as the " + std::to_string(r) +
                                                        "-variable run"
                                                  : "minimal generators differ from the " + std::to_string(r) +
                                                        "-variable run");
  }
  return rep;
}

}  // namespace ginlab
