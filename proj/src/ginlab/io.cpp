#include "io.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace ginlab {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

RingPtr parse_ring(std::string_view text) {
  const auto t = trim(text);
  const auto open = t.find('[');
  if (open == std::string::npos || t.back() != ']')
    throw ParseError("ring must look like Q[x1,x2] or F32003[x1,x2]", 0);
  const auto field_text = trim(std::string_view(t).substr(0, open));
  CoefficientField field = CoefficientField::rationals();
  try {
    field = CoefficientField::parse(field_text);
  } catch (const DomainError& e) {
    throw ParseError(std::string("bad coefficient field: ") + e.what(), 0);
  }
  std::vector<std::string> vars;
  std::string_view inner = std::string_view(t).substr(open + 1, t.size() - open - 2);
  std::size_t start = 0;
  while (true) {
    const auto comma = inner.find(',', start);
    vars.push_back(trim(inner.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  try {
    return std::make_shared<const RingSpec>(std::move(vars), field);
  } catch (const DomainError& e) {
    throw ParseError(std::string("bad ring: ") + e.what(), open + 1);
  }
}

namespace {

struct Located {
  std::string text;
  std::vector<std::pair<std::size_t, std::size_t>> where;  // (line, column) per character

  void append(std::string_view s, std::size_t line, std::size_t column) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      text += s[i];
      where.emplace_back(line, column + i);
    }
  }
};

[[noreturn]] void fail_at(const std::string& msg, std::size_t line, std::size_t column) {
  throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg, 0, line,
                   column);
}

std::string strip_position(const std::string& msg) {
  const auto at = msg.rfind(" at position ");
  return at == std::string::npos ? msg : msg.substr(0, at);
}

}  // namespace

IdealSpec parse_ideal_text(std::string_view text) {
  std::optional<RingPtr> ring;
  std::optional<std::pair<std::size_t, std::size_t>> ring_at;
  std::optional<Located> gens;
  std::optional<std::vector<std::uint32_t>> type;
  std::size_t type_line = 0;
  bool in_gens = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) {
      if (nl == text.size()) break;
      continue;
    }
    const auto colon = line.find(':');
    std::string key = colon == std::string_view::npos ? std::string() : trim(line.substr(0, colon));
    const bool keyed = key == "ring" || key == "gens" || key == "type";
    if (!keyed) {
      if (in_gens) {
        gens->append(" ", line_no, 1);
        gens->append(line, line_no, 1);
        if (nl == text.size()) break;
        continue;
      }
      const auto first = line.find_first_not_of(" \t");
      fail_at(colon == std::string_view::npos ? "expected 'key: value'" : "unknown key '" + key + "'", line_no,
              first + 1);
    }
    in_gens = false;
    const auto value = line.substr(colon + 1);
    const std::size_t value_column = colon + 2;
    if (key == "ring") {
      if (ring) fail_at("duplicate ring line", line_no, 1);
      try {
        ring = parse_ring(value);
      } catch (const ParseError& e) {
        fail_at(e.what(), line_no, value_column + e.position());
      }
      ring_at = {line_no, value_column};
    } else if (key == "gens") {
      if (gens) fail_at("duplicate gens line", line_no, 1);
      gens = Located{};
      gens->append(value, line_no, value_column);
      in_gens = true;
    } else {
      if (type) fail_at("duplicate type line", line_no, 1);
      try {
        type = parse_degree_list(std::string(value));
      } catch (const DomainError& e) {
        fail_at(e.what(), line_no, value_column);
      }
      type_line = line_no;
    }
    if (nl == text.size()) break;
  }
  if (!ring) fail_at("missing 'ring:' line", 1, 1);
  if (!gens) fail_at("missing 'gens:' line", line_no, 1);

  // Split on top-level commas, then parse each piece over Q.
  const auto qring = with_field(*ring, CoefficientField::rationals());
  std::vector<Polynomial<Rational>> polys;
  std::size_t depth = 0, start = 0;
  const auto& src = gens->text;
  for (std::size_t i = 0; i <= src.size(); ++i) {
    if (i < src.size() && src[i] == '(') ++depth;
    if (i < src.size() && src[i] == ')' && depth > 0) --depth;
    if (i < src.size() && !(src[i] == ',' && depth == 0)) continue;
    const std::string piece = src.substr(start, i - start);
    const std::size_t first = piece.find_first_not_of(" \t");
    const auto loc = [&](std::size_t offset) {
      const auto k = std::min(start + offset, gens->where.size() - 1);
      return gens->where.empty() ? std::pair<std::size_t, std::size_t>{line_no, 1} : gens->where[k];
    };
    if (first == std::string::npos) {
      const auto [l, c] = loc(0);
      fail_at("empty generator", l, c);
    }
    try {
      polys.push_back(parse_polynomial_q(piece, qring));
    } catch (const ParseError& e) {
      const auto [l, c] = loc(e.position());
      fail_at(strip_position(e.what()), l, c);
    } catch (const DomainError& e) {
      const auto [l, c] = loc(first);
      fail_at(e.what(), l, c);
    }
    if (!polys.back().is_zero() && !polys.back().is_homogeneous()) {
      const auto [l, c] = loc(first);
      fail_at("generator " + std::to_string(polys.size()) + " is not homogeneous: " + trim(piece), l, c);
    }
    start = i + 1;
  }

  std::optional<CIType> ci;
  if (type) {
    try {
      ci = CIType(*type, (*ring)->var_count());
    } catch (const DomainError& e) {
      fail_at(e.what(), type_line, 1);
    }
  }
  try {
    return IdealSpec::make(*ring, std::move(polys), ci);
  } catch (const DomainError& e) {
    fail_at(e.what(), ci ? type_line : ring_at->first, 1);
  }
}

IdealSpec load_ideal_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open ideal file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read ideal file '" + path.string() + "'");
  try {
    return parse_ideal_text(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.position(), e.line(), e.column());
  }
}

std::string monomial_string(const ExponentVector& e, const RingSpec& ring) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += ring.variables()[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

namespace {

Json exponents(const ExponentVector& e) {
  Json a = Json::array();
  for (auto v : e.entries()) a.push_back(v);
  return a;
}

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Json checks_json(const CheckMap& checks) {
  Json o = Json::object();
  for (const auto& [name, c] : checks) o[name] = {{"status", to_string(c.status)}, {"detail", c.detail}};
  return o;
}

}  // namespace

Json to_json(const MonomialIdeal& j, const RingSpec& ring) {
  Json gens = Json::array();
  for (const auto& g : j.generators()) gens.push_back(exponents(g));
  return {{"vars", ring.variables()}, {"generators", gens}};
}

Json to_json(const GinCertificate& c) {
  Json seeds = Json::array();
  for (auto s : c.seeds_used) seeds.push_back(std::to_string(s));
  return {{"field", c.field.to_string()},
          {"seeds", seeds},
          {"samples_agreed", c.samples_agreed},
          {"strongly_stable", c.borel_verified}};
}

Json gin_json(const GinResult& r, const RingSpec& ring, unsigned power, std::uint64_t seed) {
  return {{"power", power}, {"seed", std::to_string(seed)}, {"ideal", to_json(r.ideal, ring)},
          {"certificate", to_json(r.certificate)}};
}

Json sequence_json(const GinSequence& seq, std::uint64_t seed) {
  Json entries = Json::array();
  for (const auto& [n, r] : seq.entries)
    entries.push_back({{"n", n}, {"ideal", to_json(r.ideal, *seq.ring)}, {"certificate", to_json(r.certificate)}});
  Json cont = Json::array();
  for (const auto& c : seq.containments) cont.push_back({{"i", c.i}, {"j", c.j}, {"holds", c.holds}});
  return {{"ring", seq.ring->to_string()},
          {"generators", seq.generators},
          {"seed", std::to_string(seed)},
          {"field", seq.ring->field().to_string()},
          {"entries", entries},
          {"containments", cont}};
}

Json polyhedron_json(const NewtonPolyhedron& p, bool halfspaces) {
  Json verts = Json::array();
  for (const auto& v : p.vertices()) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    verts.push_back(a);
  }
  Json out = {{"dim", p.dim()}, {"vertices", verts}};
  if (halfspaces) {
    Json facets = Json::array();
    for (const auto& f : p.facets()) {
      Json normal = Json::array();
      for (const auto& a : f.normal) normal.push_back(integer_json(a));
      facets.push_back({{"normal", normal}, {"rhs", f.rhs.get_str()}, {"coordinate", f.coordinate}});
    }
    out["facets"] = facets;
    try {
      out["complement_volume"] = complement_volume(p).get_str();
    } catch (const DomainError&) {
      out["complement_volume"] = nullptr;
    }
  }
  return out;
}

Json multiplier_json(const MultiplierResult& r, const RingSpec& ring, const Rational& c, std::uint32_t bound) {
  Json names = Json::array();
  Json monos = Json::array();
  for (const auto& g : r.ideal.generators()) {
    names.push_back(monomial_string(g, ring));
    monos.push_back(exponents(g));
  }
  return {{"vars", ring.variables()}, {"c", c.get_str()}, {"bound", bound}, {"generators", names},
          {"monomials", monos}, {"complete", r.complete}};
}

Json betti_json(const BettiTable& b) {
  Json rows = Json::array();
  for (const auto& [ij, v] : b.entries()) rows.push_back({{"i", ij.first}, {"j", ij.second}, {"value", v.get_str()}});
  return {{"betti", rows}};
}

Json hilbert_json(const std::vector<Integer>& values) {
  Json a = Json::array();
  for (const auto& v : values) a.push_back(v.get_str());
  return {{"dmax", values.empty() ? 0 : values.size() - 1}, {"values", a}};
}

Json spec_json(const IdealSpec& spec) {
  Json o = {{"ring", spec.ring->to_string()}, {"generators", spec.printed_generators()}};
  o["type"] = spec.declared_type ? Json(spec.declared_type->to_string()) : Json(nullptr);
  return o;
}

Json report_json(const VerificationReport& r) {
  const auto& ring = *r.sequence.ring;
  Json entries = Json::array();
  for (const auto& row : r.convergence.rows) {
    Json p = Json::array(), pn = Json::array();
    for (const auto& e : row.p.exponents) p.push_back(e ? Json(*e) : Json(nullptr));
    for (const auto& q : row.p_over_n) pn.push_back(q ? Json(q->get_str()) : Json(nullptr));
    entries.push_back({{"n", row.n},
                       {"field", r.field.to_string()},
                       {"p", p},
                       {"p_over_n", pn},
                       {"length", row.length ? Json(row.length->get_str()) : Json(nullptr)},
                       {"volume_estimate", row.volume_estimate ? Json(row.volume_estimate->get_str()) : Json(nullptr)},
                       {"ideal", to_json(r.sequence.at(row.n).ideal, ring)},
                       {"checks", checks_json(row.checks)}});
  }
  Json out = {{"spec", spec_json(r.spec)},
              {"type", r.type.to_string()},
              {"field", r.field.to_string()},
              {"seed", std::to_string(r.seed)},
              {"predicted_volume", r.convergence.predicted_volume.get_str()},
              {"entries", entries},
              {"checks", checks_json(r.global_checks)}};
  if (r.empirical_multiplier && r.closed_multiplier) {
    Json m = Json::object();
    m["p"] = r.empirical_multiplier->p;
    m["empirical"] = multiplier_json(r.empirical_multiplier->result, ring, Rational(1), 0)["generators"];
    m["closed_form"] = multiplier_json(*r.closed_multiplier, ring, Rational(1), 0)["generators"];
    m["stabilized"] = r.empirical_multiplier->stabilized ? Json(*r.empirical_multiplier->stabilized) : Json(nullptr);
    out["multiplier"] = m;
  }
  out["overall"] = r.overall();
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

GinResult gin_result_from_json(const Json& j, std::size_t var_count) {
  try {
    std::vector<ExponentVector> gens;
    for (const auto& g : j.at("ideal").at("generators")) {
      auto e = g.get<std::vector<std::uint32_t>>();
      if (e.size() != var_count) throw IoError("generator length mismatch");
      gens.emplace_back(std::move(e));
    }
    GinCertificate cert;
    const auto& c = j.at("certificate");
    cert.field = CoefficientField::parse(c.at("field").get<std::string>());
    for (const auto& s : c.at("seeds")) cert.seeds_used.push_back(std::stoull(s.get<std::string>()));
    cert.samples_agreed = c.at("samples_agreed").get<bool>();
    cert.borel_verified = c.at("strongly_stable").get<bool>();
    return GinResult{MonomialIdeal::minimalize(std::move(gens), var_count), cert};
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(std::string("malformed gin record: ") + e.what());
  }
}

CacheKey make_cache_key(const IdealSpec& spec, unsigned power, std::uint64_t seed, const CoefficientField& field,
                        const GinOptions& opts) {
  std::string canon = std::string(kVersionTag) + "\n" + spec.ring->to_string() + "\n";
  for (const auto& g : spec.generators) canon += g.to_string() + "\n";
  canon += "power=" + std::to_string(power) + "\nseed=" + std::to_string(seed) + "\nfield=" + field.to_string() +
           "\nbound=" + std::to_string(opts.coefficient_bound) + "\nrounds=" + std::to_string(opts.rounds) + "\n";
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(canon.data(), canon.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw IoError("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return CacheKey{out};
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("GINLAB_CACHE"); env && *env) return env;
  return ".ginlab-cache";
}

namespace {

std::filesystem::path entry_path(const std::filesystem::path& dir, const CacheKey& key) {
  return dir / (key.hex + ".json");
}

}  // namespace

std::optional<GinResult> cache_get(const std::filesystem::path& dir, const CacheKey& key, std::size_t var_count) {
  const auto path = entry_path(dir, key);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    if (ec) throw IoError("cache: cannot stat '" + path.string() + "': " + ec.message());
    return std::nullopt;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cache: cannot open '" + path.string() + "'");
  try {
    const auto j = Json::parse(in);
    if (j.at("key").get<std::string>() != key.hex) throw IoError("cache: key mismatch in '" + path.string() + "'");
    return gin_result_from_json(j, var_count);
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError("cache: corrupt entry '" + path.string() + "': " + e.what());
  }
}

void cache_put(const std::filesystem::path& dir, const CacheKey& key, const GinResult& value) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cache: cannot create '" + dir.string() + "': " + ec.message());
  const auto final_path = entry_path(dir, key);

  Json gens = Json::array();
  for (const auto& g : value.ideal.generators()) gens.push_back(exponents(g));
  Json record = {{"key", key.hex},
                 {"version", kVersionTag},
                 {"ideal", {{"generators", gens}}},
                 {"certificate", to_json(value.certificate)}};
  const std::string text = dump(record);

  static std::atomic<std::uint64_t> counter{0};
  const auto tid = std::hash<std::thread::id>{}(std::this_thread::get_id());
  const auto tmp = dir / (key.hex + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(tid) + "." +
                          std::to_string(counter++));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cache: cannot create '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw IoError("cache: write failed for '" + tmp.string() + "'");
    }
  }
  // A hard link never replaces an existing entry; the first writer wins.
  fs::create_hard_link(tmp, final_path, ec);
  std::error_code rm;
  if (ec && ec != std::errc::file_exists) {
    if (fs::exists(final_path, rm)) {
      fs::remove(tmp, rm);
      return;
    }
    // Filesystems without hard links: fall back to rename.
    std::error_code rn;
    fs::rename(tmp, final_path, rn);
    if (rn) {
      fs::remove(tmp, rm);
      throw IoError("cache: cannot install '" + final_path.string() + "': " + rn.message());
    }
    return;
  }
  fs::remove(tmp, rm);
}

}  // namespace ginlab
