#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "asymptotics.hpp"
#include "gin.hpp"
#include "polytope.hpp"
#include "staircase.hpp"
#include "verify.hpp"

namespace ginlab {

inline constexpr const char* kVersionTag = "ginlab-0.1.0";

using Json = nlohmann::ordered_json;

// "Q[x1,x2]" or "F32003[x,y,z]".
RingPtr parse_ring(std::string_view text);

// Ideal file:
//   ring: Q[x1,x2]
//   gens: x1^2, x2^2
//   type: 2,2          (optional)
// Blank lines and '#' comments are ignored; a gens list may continue on the
// following lines. Errors carry 1-based line and column.
IdealSpec parse_ideal_text(std::string_view text);
IdealSpec load_ideal_file(const std::filesystem::path& path);

// "x1^2*x2", or "1" for the unit monomial.
std::string monomial_string(const ExponentVector& e, const RingSpec& ring);

Json to_json(const MonomialIdeal& j, const RingSpec& ring);
Json to_json(const GinCertificate& c);
Json gin_json(const GinResult& r, const RingSpec& ring, unsigned power, std::uint64_t seed);
Json sequence_json(const GinSequence& seq, std::uint64_t seed);
Json polyhedron_json(const NewtonPolyhedron& p, bool halfspaces);
Json multiplier_json(const MultiplierResult& r, const RingSpec& ring, const Rational& c, std::uint32_t bound);
Json betti_json(const BettiTable& b);
Json hilbert_json(const std::vector<Integer>& values);
Json report_json(const VerificationReport& r);
Json spec_json(const IdealSpec& spec);

// Deterministic text form used for every command output.
std::string dump(const Json& j);

GinResult gin_result_from_json(const Json& j, std::size_t var_count);

// Content digest over the canonical inputs of a gin computation.
struct CacheKey {
  std::string hex;
  friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

CacheKey make_cache_key(const IdealSpec& spec, unsigned power, std::uint64_t seed, const CoefficientField& field,
                        const GinOptions& opts = {});

// $GINLAB_CACHE, or ./.ginlab-cache.
std::filesystem::path default_cache_dir();

// Absent on miss. Throws IoError when an entry exists but cannot be read.
std::optional<GinResult> cache_get(const std::filesystem::path& dir, const CacheKey& key, std::size_t var_count);

// Writes a temporary file and links it into place; an existing entry is
// kept. Throws IoError on failure.
void cache_put(const std::filesystem::path& dir, const CacheKey& key, const GinResult& value);

}  // namespace ginlab
