#include <doctest.h>

#include <fstream>
#include <random>
#include <thread>

#include <unistd.h>

#include "ginlab/io.hpp"

using namespace ginlab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("ginlab-test-" + std::to_string(::getpid()) + "-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

ParseError parse_failure(const std::string& text) {
  try {
    parse_ideal_text(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for: " << text);
  return ParseError("unreachable", 0);
}

GinResult sample_result() {
  const auto r = RingSpec::standard(2);
  std::vector<Polynomial<Rational>> gens{parse_polynomial_q("x1^2", r), parse_polynomial_q("x2^2", r)};
  return gin<Rational>(gens, 7);
}

IdealSpec sample_spec() { return parse_ideal_text("ring: Q[x1,x2]\ngens: x1^2, x2^2\ntype: 2,2\n"); }

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("rings") {
    CHECK(parse_ring("Q[x1,x2]")->to_string() == "Q[x1,x2]");
    CHECK(parse_ring(" F32003[x, y, z] ")->to_string() == "F32003[x,y,z]");
    CHECK_THROWS_AS(parse_ring("R[x]"), ParseError);
    CHECK_THROWS_AS(parse_ring("Q[x,x]"), ParseError);
    CHECK_THROWS_AS(parse_ring("Q x1"), ParseError);
    CHECK_THROWS_AS(parse_ring("Q[]"), ParseError);
  }

  TEST_CASE("ideal files") {
    const auto spec = parse_ideal_text(
        "# a complete intersection\n"
        "ring: Q[x,y,z]\n"
        "\n"
        "gens: x^2 + y*z,   # first\n"
        "      y^3 - x*z^2\n"
        "type: 2,3\n");
    CHECK(spec.ring->to_string() == "Q[x,y,z]");
    CHECK(spec.printed_generators() == std::vector<std::string>{"x^2 + y*z", "y^3 - x*z^2"});
    CHECK(spec.declared_type == CIType({2, 3}, 3));

    const auto untyped = parse_ideal_text("ring: F101[a,b]\r\ngens: a*b, (a + b)^2\r\n");
    CHECK_FALSE(untyped.declared_type.has_value());
    CHECK(untyped.ring->field().prime() == 101);
    CHECK(untyped.generators.size() == 2);
  }

  TEST_CASE("ideal file errors carry line and column") {
    const auto bad_poly = parse_failure("ring: Q[x1,x2]\ngens: x1^2, x1 + * x2\n");
    CHECK(bad_poly.line() == 2);
    CHECK(bad_poly.column() == 18);
    CHECK(std::string(bad_poly.what()).find("line 2, column 18") == 0);

    const auto unknown = parse_failure("ring: Q[x1]\nbogus: 3\ngens: x1\n");
    CHECK(unknown.line() == 2);
    CHECK(unknown.column() == 1);

    const auto inhom = parse_failure("ring: Q[x1,x2]\ngens: x1^2, x1 + x2^2\n");
    CHECK(inhom.line() == 2);
    CHECK(std::string(inhom.what()).find("generator 2 is not homogeneous") != std::string::npos);

    const auto continued = parse_failure("ring: Q[x1,x2]\ngens: x1^2,\n  x2 +\n");
    CHECK(continued.line() == 3);

    CHECK(parse_failure("ring: Q[x1,x2]\ngens: x1^2, x2^2\ntype: 2,3\n").line() == 3);
    CHECK(parse_failure("ring: Q[x1,x2]\ngens: x1^2, x2^2\ntype: 3,2\n").line() == 3);
    CHECK(parse_failure("gens: x1\n").line() == 1);
    CHECK(parse_failure("ring: Q[x1]\n").line() >= 1);
    CHECK(parse_failure("ring: Q[x1]\nring: Q[x1]\ngens: x1\n").line() == 2);
    CHECK(parse_failure("ring: Q[x1]\ngens: x1, , x1\n").line() == 2);
    CHECK(parse_failure("ring: Q[x1]\ngens: y\n").line() == 2);
    CHECK(parse_failure("ring: Q[x1]\ngens: x1\nx1\n").line() == 3);
  }

  TEST_CASE("loading files") {
    TempDir dir;
    write_file(dir.path / "ok.txt", "ring: Q[x1,x2]\ngens: x1^2, x2^3\ntype: 2,3\n");
    CHECK(load_ideal_file(dir.path / "ok.txt").declared_type == CIType({2, 3}, 2));
    CHECK_THROWS_AS(load_ideal_file(dir.path / "missing.txt"), IoError);
    write_file(dir.path / "bad.txt", "ring: Q[x1,x2]\ngens: x1^\n");
    try {
      load_ideal_file(dir.path / "bad.txt");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("bad.txt") != std::string::npos);
      CHECK(e.line() == 2);
    }
  }

  TEST_CASE("monomial strings") {
    const auto r = RingSpec::standard(3);
    CHECK(monomial_string({2, 1, 0}, *r) == "x1^2*x2");
    CHECK(monomial_string({0, 0, 0}, *r) == "1");
    CHECK(monomial_string({0, 0, 1}, *r) == "x3");
  }

  TEST_CASE("JSON output") {
    const auto r = RingSpec::standard(2);
    const auto res = sample_result();
    const auto j = gin_json(res, *r, 1, 7);
    CHECK(j["power"] == 1);
    CHECK(j["seed"] == "7");
    CHECK(j["ideal"]["vars"] == Json::array({"x1", "x2"}));
    CHECK(j["ideal"]["generators"] == Json::parse("[[2,0],[1,1],[0,3]]"));
    CHECK(j["certificate"]["samples_agreed"] == true);
    CHECK(j["certificate"]["seeds"].size() == 2);
    CHECK(dump(j) == dump(gin_json(sample_result(), *r, 1, 7)));
    CHECK(dump(j).back() == '\n');

    const auto back = gin_result_from_json(j, 2);
    CHECK(back.ideal == res.ideal);
    CHECK(back.certificate == res.certificate);
    CHECK_THROWS_AS(gin_result_from_json(j, 3), IoError);
    CHECK_THROWS_AS(gin_result_from_json(Json::parse("{\"ideal\": 3}"), 2), IoError);

    const auto poly = polyhedron_json(NewtonPolyhedron::of_ideal(res.ideal), true);
    CHECK(poly["complement_volume"] == "5/2");
    CHECK(poly["vertices"] == Json::parse(R"([["0","3"],["1","1"],["2","0"]])"));
    const auto unbounded = polyhedron_json(NewtonPolyhedron::of_ideal(MonomialIdeal::minimalize({{2, 0}}, 2)), true);
    CHECK(unbounded["complement_volume"].is_null());
    CHECK_FALSE(polyhedron_json(NewtonPolyhedron::of_ideal(res.ideal), false).contains("facets"));

    CHECK(hilbert_json(hilbert_function(res.ideal, 3))["values"] == Json::parse(R"(["1","2","1","0"])"));
    const auto betti = betti_json(ek_betti(res.ideal));
    CHECK(betti["betti"].size() == 4);

    const auto spec = spec_json(sample_spec());
    CHECK(spec["type"] == "2,2");
    CHECK(spec["generators"] == Json::array({"x1^2", "x2^2"}));
  }

  TEST_CASE("verification reports serialize deterministically") {
    const auto spec = sample_spec();
    const auto a = dump(report_json(verify_ci(spec, 2, 3)));
    const auto b = dump(report_json(verify_ci(spec, 2, 3)));
    CHECK(a == b);
    const auto j = Json::parse(a);
    CHECK(j["overall"] == true);
    CHECK(j["entries"].size() == 2);
    CHECK(j["entries"][0]["checks"]["length"]["status"] == "pass");
    CHECK(j["predicted_volume"] == "4");
  }

  TEST_CASE("cache keys") {
    const auto spec = sample_spec();
    const auto f = CoefficientField::prime_field(32003);
    const auto k = make_cache_key(spec, 2, 7, f);
    CHECK(k.hex.size() == 64);
    CHECK(k == make_cache_key(spec, 2, 7, f));
    CHECK_FALSE(k == make_cache_key(spec, 3, 7, f));
    CHECK_FALSE(k == make_cache_key(spec, 2, 8, f));
    CHECK_FALSE(k == make_cache_key(spec, 2, 7, CoefficientField::rationals()));
    GinOptions more;
    more.rounds = 5;
    CHECK_FALSE(k == make_cache_key(spec, 2, 7, f, more));
    const auto other = parse_ideal_text("ring: Q[x1,x2]\ngens: x1^2, x2^2 + x1*x2\n");
    CHECK_FALSE(k == make_cache_key(other, 2, 7, f));
  }

  TEST_CASE("cache round trip") {
    TempDir dir;
    const auto key = make_cache_key(sample_spec(), 1, 7, CoefficientField::rationals());
    CHECK_FALSE(cache_get(dir.path / "absent", key, 2).has_value());
    CHECK_FALSE(cache_get(dir.path, key, 2).has_value());
    const auto res = sample_result();
    cache_put(dir.path, key, res);
    const auto hit = cache_get(dir.path, key, 2);
    REQUIRE(hit.has_value());
    CHECK(hit->ideal == res.ideal);
    CHECK(hit->certificate == res.certificate);

    // An existing entry is kept.
    GinResult other = res;
    other.ideal = MonomialIdeal::minimalize({{1, 0}}, 2);
    cache_put(dir.path, key, other);
    CHECK(cache_get(dir.path, key, 2)->ideal == res.ideal);

    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path)) ++files;
    CHECK(files == 1);
  }

  TEST_CASE("corrupt cache entries are errors") {
    TempDir dir;
    const auto key = make_cache_key(sample_spec(), 1, 7, CoefficientField::rationals());
    write_file(dir.path / (key.hex + ".json"), "{not json");
    CHECK_THROWS_AS(cache_get(dir.path, key, 2), IoError);
    write_file(dir.path / (key.hex + ".json"), "{\"key\": \"0000\"}");
    CHECK_THROWS_AS(cache_get(dir.path, key, 2), IoError);
  }

  TEST_CASE("concurrent writers leave one valid entry") {
    TempDir dir;
    const auto key = make_cache_key(sample_spec(), 1, 7, CoefficientField::rationals());
    const auto res = sample_result();
    std::vector<std::thread> ts;
    for (int i = 0; i < 8; ++i) ts.emplace_back([&] { cache_put(dir.path, key, res); });
    for (auto& t : ts) t.join();
    const auto hit = cache_get(dir.path, key, 2);
    REQUIRE(hit.has_value());
    CHECK(hit->ideal == res.ideal);
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path)) ++files;
    CHECK(files == 1);
  }

  TEST_CASE("default cache directory follows the environment") {
    const char* old = std::getenv("GINLAB_CACHE");
    const std::string saved = old ? old : "";
    ::setenv("GINLAB_CACHE", "/tmp/somewhere", 1);
    CHECK(default_cache_dir() == fs::path("/tmp/somewhere"));
    ::unsetenv("GINLAB_CACHE");
    CHECK(default_cache_dir() == fs::path(".ginlab-cache"));
    if (old) ::setenv("GINLAB_CACHE", saved.c_str(), 1);
  }
}
