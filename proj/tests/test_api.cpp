#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <unistd.h>

#include <json.hpp>

#include "ginlab/ginlab.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Ideal {
  ginlab_ideal* p = nullptr;
  ~Ideal() { ginlab_ideal_free(p); }
};

// Takes ownership of a library string.
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  ginlab_free_string(s);
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("ginlab-api-" + std::to_string(::getpid()) + "-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

const char* kDiagonal = "ring: Q[x1,x2]\ngens: x1^2, x2^2\ntype: 2,2\n";

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("version and handles") {
    CHECK(std::string(ginlab_version()) == "ginlab-0.1.0");
    Ideal i;
    REQUIRE(ginlab_ideal_parse(kDiagonal, &i.p) == GINLAB_OK);
    char* out = nullptr;
    REQUIRE(ginlab_ideal_describe(i.p, &out) == GINLAB_OK);
    const auto d = json::parse(take(out));
    CHECK(d["ring"] == "Q[x1,x2]");
    CHECK(d["type"] == "2,2");
    ginlab_ideal_free(nullptr);
    ginlab_free_string(nullptr);
  }

  TEST_CASE("errors map to status codes") {
    ginlab_ideal* p = nullptr;
    CHECK(ginlab_ideal_parse("ring: Q[x1,x2]\ngens: x1^2, x1 + * x2\n", &p) == GINLAB_ERR_PARSE);
    CHECK(p == nullptr);
    std::uint64_t line = 0, column = 0;
    ginlab_last_error_location(&line, &column);
    CHECK(line == 2);
    CHECK(column == 18);
    CHECK(std::string(ginlab_last_error()).find("line 2") != std::string::npos);

    CHECK(ginlab_ideal_parse(nullptr, &p) == GINLAB_ERR_INVALID);
    CHECK(ginlab_ideal_load("/nonexistent/ideal.txt", &p) == GINLAB_ERR_IO);
    CHECK(ginlab_ideal_make_ci("3,2", 2, nullptr, 1, &p) == GINLAB_ERR_INVALID);
    CHECK(ginlab_ideal_make_ci("2,2", 2, "weird", 1, &p) == GINLAB_ERR_INVALID);

    Ideal i;
    REQUIRE(ginlab_ideal_parse(kDiagonal, &i.p) == GINLAB_OK);
    CHECK(std::string(ginlab_last_error()).empty());
    char* out = nullptr;
    CHECK(ginlab_gin(i.p, 0, 1, nullptr, &out) == GINLAB_ERR_INVALID);
    CHECK(out == nullptr);
    ginlab_options bad{"fp:4", 0, nullptr};
    CHECK(ginlab_gin(i.p, 1, 1, &bad, &out) == GINLAB_ERR_INVALID);
    CHECK(ginlab_multiplier(i.p, 1, 1, nullptr, "abc", 5, &out) == GINLAB_ERR_INVALID);
    CHECK(ginlab_gin(nullptr, 1, 1, nullptr, &out) == GINLAB_ERR_INVALID);
  }

  TEST_CASE("prime-field ideals cannot be moved to Q") {
    Ideal i;
    REQUIRE(ginlab_ideal_parse("ring: F101[x1,x2]\ngens: x1^2, x2^2\n", &i.p) == GINLAB_OK);
    char* out = nullptr;
    ginlab_options q{"q", 0, nullptr};
    CHECK(ginlab_gin(i.p, 1, 1, &q, &out) == GINLAB_ERR_INVALID);
    REQUIRE(ginlab_gin(i.p, 1, 1, nullptr, &out) == GINLAB_OK);
    CHECK(json::parse(take(out))["certificate"]["field"] == "fp:101");
  }

  TEST_CASE("gin and friends") {
    Ideal i;
    REQUIRE(ginlab_ideal_parse(kDiagonal, &i.p) == GINLAB_OK);
    char* out = nullptr;
    REQUIRE(ginlab_gin(i.p, 1, 7, nullptr, &out) == GINLAB_OK);
    const auto g = json::parse(take(out));
    CHECK(g["ideal"]["generators"] == json::parse("[[2,0],[1,1],[0,3]]"));
    CHECK(g["certificate"]["field"] == "q");

    REQUIRE(ginlab_gin_sequence(i.p, 3, 7, nullptr, &out) == GINLAB_OK);
    const auto s = json::parse(take(out));
    CHECK(s["entries"].size() == 3);
    CHECK(s["containments"].size() == 2);
    for (const auto& c : s["containments"]) CHECK(c["holds"] == true);

    REQUIRE(ginlab_polytope(i.p, 1, 7, nullptr, 1, &out) == GINLAB_OK);
    CHECK(json::parse(take(out))["complement_volume"] == "5/2");

    REQUIRE(ginlab_multiplier(i.p, 1, 7, nullptr, "1", 8, &out) == GINLAB_OK);
    CHECK(json::parse(take(out))["generators"] == json::array({"x1", "x2"}));

    REQUIRE(ginlab_multiplier_ci("2,3", "2", 0, &out) == GINLAB_OK);
    const auto m = json::parse(take(out));
    CHECK(m["generators"] == json::array({"x1^3", "x1^2*x2", "x1*x2^3", "x2^4"}));
    CHECK(m["bound"] == 18);
    CHECK(m["complete"] == true);

    REQUIRE(ginlab_betti(i.p, 1, 7, nullptr, &out) == GINLAB_OK);
    CHECK(json::parse(take(out))["betti"].size() == 4);

    REQUIRE(ginlab_hilbert(i.p, 2, 7, nullptr, 6, &out) == GINLAB_OK);
    const auto h = json::parse(take(out));
    CHECK(h["dmax"] == 6);
    // Sum of HF(R/gin(I^2)) is the length 12 of R/I^2.
    long total = 0;
    for (const auto& v : h["values"]) total += std::stol(v.get<std::string>());
    CHECK(total == 12);
  }

  TEST_CASE("verify_ci") {
    Ideal i;
    REQUIRE(ginlab_ideal_make_ci("2,3", 2, "generic", 5, &i.p) == GINLAB_OK);
    char* out = nullptr;
    int overall = 0;
    REQUIRE(ginlab_verify_ci(i.p, 2, 5, nullptr, &overall, &out) == GINLAB_OK);
    CHECK(overall == 1);
    const auto r = json::parse(take(out));
    CHECK(r["overall"] == true);
    CHECK(r["field"] == "fp:32003");

    Ideal bad;
    REQUIRE(ginlab_ideal_parse("ring: Q[x1,x2]\ngens: x1^2, x1*x2\ntype: 2,2\n", &bad.p) == GINLAB_OK);
    REQUIRE(ginlab_verify_ci(bad.p, 2, 1, nullptr, &overall, &out) == GINLAB_OK);
    CHECK(overall == 0);
    CHECK(json::parse(take(out))["overall"] == false);

    Ideal untyped;
    REQUIRE(ginlab_ideal_parse("ring: Q[x1,x2]\ngens: x1^2, x2^2\n", &untyped.p) == GINLAB_OK);
    CHECK(ginlab_verify_ci(untyped.p, 2, 1, nullptr, &overall, &out) == GINLAB_ERR_INVALID);
  }

  TEST_CASE("cached results are byte-identical to fresh ones") {
    TempDir dir;
    const std::string cache = (dir.path / "cache").string();
    Ideal i;
    REQUIRE(ginlab_ideal_parse("ring: Q[x,y,z]\ngens: x^2 + y*z, y^3 - x*z^2\n", &i.p) == GINLAB_OK);
    ginlab_options cached{"fp:32003", 1, cache.c_str()};
    ginlab_options fresh{"fp:32003", 0, nullptr};
    char* out = nullptr;
    REQUIRE(ginlab_gin_sequence(i.p, 2, 3, &fresh, &out) == GINLAB_OK);
    const auto cold = take(out);
    REQUIRE(ginlab_gin_sequence(i.p, 2, 3, &cached, &out) == GINLAB_OK);
    const auto first = take(out);
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(cache)) ++entries;
    CHECK(entries == 2);
    REQUIRE(ginlab_gin_sequence(i.p, 2, 3, &cached, &out) == GINLAB_OK);
    const auto warm = take(out);
    CHECK(cold == first);
    CHECK(cold == warm);

    for (const auto& e : fs::directory_iterator(cache)) std::ofstream(e.path(), std::ios::trunc) << "garbage";
    CHECK(ginlab_gin_sequence(i.p, 2, 3, &cached, &out) == GINLAB_ERR_IO);
  }
}
