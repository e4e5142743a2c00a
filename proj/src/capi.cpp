#include "ginlab/ginlab.h"

#include <cstdlib>
#include <cstring>
#include <future>
#include <new>

#include "ginlab/io.hpp"

struct ginlab_ideal {
  ginlab::IdealSpec spec;
};

namespace {

using namespace ginlab;

struct ErrorState {
  std::string message;
  std::uint64_t line = 0;
  std::uint64_t column = 0;
};

thread_local ErrorState last_error;

ginlab_status fail(ginlab_status code, const std::string& message, std::uint64_t line = 0, std::uint64_t column = 0) {
  last_error = {message, line, column};
  return code;
}

template <typename F>
ginlab_status guarded(F&& body) {
  last_error = {};
  try {
    body();
    return GINLAB_OK;
  } catch (const ParseError& e) {
    return fail(GINLAB_ERR_PARSE, e.what(), e.line(), e.column());
  } catch (const DomainError& e) {
    return fail(GINLAB_ERR_INVALID, e.what());
  } catch (const ComputationError& e) {
    return fail(GINLAB_ERR_COMPUTE, e.what());
  } catch (const IoError& e) {
    return fail(GINLAB_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GINLAB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GINLAB_ERR_INTERNAL, e.what());
  }
}

void require(const void* p, const char* what) {
  if (!p) throw DomainError(std::string(what) + " is NULL");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const Json& j, char** out) {
  require(out, "output pointer");
  *out = copy_string(dump(j));
}

CoefficientField resolve_field(const IdealSpec& spec, const char* requested) {
  const auto& declared = spec.ring->field();
  if (!requested) return declared;
  const auto f = CoefficientField::parse(requested);
  if (!declared.is_rational() && !(f == declared))
    throw DomainError("ideal is declared over " + declared.to_string() + "; cannot compute over " + f.to_string());
  return f;
}

struct Resolved {
  CoefficientField field;
  bool use_cache = false;
  std::filesystem::path cache_dir;
};

Resolved resolve(const IdealSpec& spec, const ginlab_options* o) {
  Resolved r{resolve_field(spec, o ? o->field : nullptr), false, {}};
  if (o && o->use_cache) {
    r.use_cache = true;
    r.cache_dir = o->cache_dir ? std::filesystem::path(o->cache_dir) : default_cache_dir();
  }
  return r;
}

GinResult compute_gin(const IdealSpec& spec, unsigned power, std::uint64_t seed, const CoefficientField& field) {
  if (field.is_rational()) {
    const auto gens = generators_in<Rational>(spec, field);
    return gin_of_power<Rational>(gens, power, seed);
  }
  const auto gens = generators_in<ModP>(spec, field);
  return gin_of_power<ModP>(gens, power, seed);
}

GinResult cached_gin(const IdealSpec& spec, unsigned power, std::uint64_t seed, const Resolved& r) {
  if (power == 0) throw DomainError("power must be at least 1");
  if (!r.use_cache) return compute_gin(spec, power, seed, r.field);
  const auto key = make_cache_key(spec, power, seed, r.field);
  if (auto hit = cache_get(r.cache_dir, key, spec.ring->var_count())) return *hit;
  auto result = compute_gin(spec, power, seed, r.field);
  cache_put(r.cache_dir, key, result);
  return result;
}

}  // namespace

extern "C" {

const char* ginlab_version(void) { return kVersionTag; }

const char* ginlab_last_error(void) { return last_error.message.c_str(); }

void ginlab_last_error_location(uint64_t* line, uint64_t* column) {
  if (line) *line = last_error.line;
  if (column) *column = last_error.column;
}

void ginlab_free_string(char* s) { std::free(s); }

ginlab_status ginlab_ideal_load(const char* path, ginlab_ideal** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output pointer");
    *out = new ginlab_ideal{load_ideal_file(path)};
  });
}

ginlab_status ginlab_ideal_parse(const char* text, ginlab_ideal** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output pointer");
    *out = new ginlab_ideal{parse_ideal_text(text)};
  });
}

ginlab_status ginlab_ideal_make_ci(const char* degrees, uint32_t vars, const char* style, uint64_t seed,
                                   ginlab_ideal** out) {
  return guarded([&] {
    require(degrees, "degrees");
    require(out, "output pointer");
    const CIType t(parse_degree_list(degrees), vars);
    *out = new ginlab_ideal{make_ci(t, style ? parse_style(style) : CIStyle::diagonal, seed)};
  });
}

void ginlab_ideal_free(ginlab_ideal* ideal) { delete ideal; }

ginlab_status ginlab_ideal_describe(const ginlab_ideal* ideal, char** out) {
  return guarded([&] {
    require(ideal, "ideal");
    emit(spec_json(ideal->spec), out);
  });
}

ginlab_status ginlab_gin(const ginlab_ideal* ideal, uint32_t power, uint64_t seed, const ginlab_options* options,
                         char** out) {
  return guarded([&] {
    require(ideal, "ideal");
    require(out, "output pointer");
    const auto r = resolve(ideal->spec, options);
    const auto g = cached_gin(ideal->spec, power, seed, r);
    emit(gin_json(g, *ideal->spec.ring, power, seed), out);
  });
}

ginlab_status ginlab_gin_sequence(const ginlab_ideal* ideal, uint32_t n_max, uint64_t seed,
                                  const ginlab_options* options, char** out) {
  return guarded([&] {
    require(ideal, "ideal");
    require(out, "output pointer");
    if (n_max == 0) throw DomainError("n_max must be at least 1");
    const auto r = resolve(ideal->spec, options);
    GinSequence seq;
    seq.ring = with_field(ideal->spec.ring, r.field);
    seq.generators = ideal->spec.printed_generators();
    std::vector<std::future<GinResult>> jobs;
    for (unsigned n = 1; n <= n_max; ++n)
      jobs.push_back(std::async(std::launch::async, [&, n] { return cached_gin(ideal->spec, n, seed, r); }));
    for (unsigned n = 1; n <= n_max; ++n) seq.entries.emplace(n, jobs[n - 1].get());
    check_graded_containments(seq);
    emit(sequence_json(seq, seed), out);
  });
}

ginlab_status ginlab_polytope(const ginlab_ideal* ideal, uint32_t power, uint64_t seed, const ginlab_options* options,
                              int halfspaces, char** out) {
  return guarded([&] {
    require(ideal, "ideal");
    require(out, "output pointer");
    const auto g = cached_gin(ideal->spec, power, seed, resolve(ideal->spec, options));
    auto j = polyhedron_json(NewtonPolyhedron::of_ideal(g.ideal), halfspaces != 0);
    j["power"] = power;
    emit(j, out);
  });
}

ginlab_status ginlab_multiplier(const ginlab_ideal* ideal, uint32_t p, uint64_t seed, const ginlab_options* options,
                                const char* c, uint32_t bound, char** out) {
  return guarded([&] {
    require(ideal, "ideal");
    require(c, "c");
    require(out, "output pointer");
    const auto coeff = parse_rational(c);
    const auto g = cached_gin(ideal->spec, p, seed, resolve(ideal->spec, options));
    const auto result = multiplier_ideal(g.ideal, Rational(coeff / p), bound);
    auto j = multiplier_json(result, *ideal->spec.ring, coeff, bound);
    j["p"] = p;
    emit(j, out);
  });
}

ginlab_status ginlab_multiplier_ci(const char* degrees, const char* c, uint32_t bound, char** out) {
  return guarded([&] {
    require(degrees, "degrees");
    require(c, "c");
    require(out, "output pointer");
    const auto d = parse_degree_list(degrees);
    const CIType t(d, d.size());
    const auto b = bound == 0 ? default_degree_bound(t) : bound;
    const auto coeff = parse_rational(c);
    const auto ring = RingSpec::standard(t.ambient());
    emit(multiplier_json(ci_asymptotic_multiplier_ideal(t, coeff, b), *ring, coeff, b), out);
  });
}

ginlab_status ginlab_betti(const ginlab_ideal* ideal, uint32_t power, uint64_t seed, const ginlab_options* options,
                           char** out) {
  return guarded([&] {
    require(ideal, "ideal");
    require(out, "output pointer");
    const auto g = cached_gin(ideal->spec, power, seed, resolve(ideal->spec, options));
    auto j = betti_json(ek_betti(g.ideal));
    j["power"] = power;
    j["ideal"] = to_json(g.ideal, *ideal->spec.ring);
    emit(j, out);
  });
}

ginlab_status ginlab_hilbert(const ginlab_ideal* ideal, uint32_t power, uint64_t seed, const ginlab_options* options,
                             uint32_t dmax, char** out) {
  return guarded([&] {
    require(ideal, "ideal");
    require(out, "output pointer");
    const auto g = cached_gin(ideal->spec, power, seed, resolve(ideal->spec, options));
    auto j = hilbert_json(hilbert_function(g.ideal, dmax));
    j["power"] = power;
    emit(j, out);
  });
}

ginlab_status ginlab_verify_ci(const ginlab_ideal* ideal, uint32_t n_max, uint64_t seed, const char* field,
                               int* overall, char** out) {
  return guarded([&] {
    require(ideal, "ideal");
    require(out, "output pointer");
    VerifyOptions opts;
    if (field) opts.field = CoefficientField::parse(field);
    const auto report = verify_ci(ideal->spec, n_max, seed, opts);
    if (overall) *overall = report.overall() ? 1 : 0;
    emit(report_json(report), out);
  });
}

}  // extern "C"
