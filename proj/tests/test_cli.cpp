#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout when `merge` is set.
Run run(const std::string& args, bool merge = false, const std::string& env = {}) {
  const std::string cmd = env + std::string(GINLAB_CLI_PATH) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct Workspace {
  fs::path path;
  Workspace() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("ginlab-cli-" + std::to_string(::getpid()) + "-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name, const std::string& text) const {
    std::ofstream(path / name, std::ios::binary) << text;
    return (path / name).string();
  }
  std::string cache() const { return "GINLAB_CACHE=" + (path / "cache").string() + " "; }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("gin prints JSON and is deterministic") {
    Workspace w;
    const auto ideal = w.file("i.txt", "ring: Q[x1,x2]\ngens: x1^2, x2^2\ntype: 2,2\n");
    const auto a = run("gin --ideal " + ideal + " --seed 7 --no-cache");
    REQUIRE(a.code == 0);
    CHECK(json::parse(a.out)["ideal"]["generators"] == json::parse("[[2,0],[1,1],[0,3]]"));
    CHECK(run("gin --ideal " + ideal + " --seed 7 --no-cache").out == a.out);
    const auto out = (w.path / "o.json").string();
    REQUIRE(run("gin --ideal " + ideal + " --seed 7 --no-cache --out " + out).code == 0);
    std::ifstream in(out);
    CHECK(std::string(std::istreambuf_iterator<char>(in), {}) == a.out);
  }

  TEST_CASE("a cache hit prints the same bytes as a cold run") {
    Workspace w;
    const auto ideal = w.file("i.txt", "ring: Q[x,y,z]\ngens: x^2 + y*z, y^3 - x*z^2\n");
    const auto cold = run("gin-seq --ideal " + ideal + " --nmax 2 --seed 3 --no-cache");
    REQUIRE(cold.code == 0);
    const std::string args = "gin-seq --ideal " + ideal + " --nmax 2 --seed 3";
    const auto miss = run(args, false, w.cache());
    REQUIRE(fs::exists(w.path / "cache"));
    const auto hit = run(args, false, w.cache());
    CHECK(miss.code == 0);
    CHECK(hit.code == 0);
    CHECK(miss.out == cold.out);
    CHECK(hit.out == cold.out);
  }

  TEST_CASE("verify-ci exit codes") {
    Workspace w;
    const auto good = run("verify-ci --type 2,2 --vars 2 --style diagonal --nmax 2");
    CHECK(good.code == 0);
    CHECK(json::parse(good.out)["overall"] == true);
    const auto generic = run("verify-ci --type 2,3 --vars 2 --nmax 2 --seed 4");
    CHECK(generic.code == 0);
    const auto bad_ideal = w.file("bad.txt", "ring: Q[x1,x2]\ngens: x1^2, x1*x2\ntype: 2,2\n");
    const auto bad = run("verify-ci --ideal " + bad_ideal + " --nmax 2");
    CHECK(bad.code == 1);
    CHECK(json::parse(bad.out)["overall"] == false);
  }

  TEST_CASE("other subcommands") {
    Workspace w;
    const auto ideal = w.file("i.txt", "ring: Q[x1,x2]\ngens: x1^2, x2^2\ntype: 2,2\n");
    const auto poly = run("polytope --ideal " + ideal + " --halfspace --no-cache --seed 7");
    REQUIRE(poly.code == 0);
    CHECK(json::parse(poly.out)["complement_volume"] == "5/2");
    const auto mult = run("multiplier --type 2,2 -c 1");
    REQUIRE(mult.code == 0);
    CHECK(json::parse(mult.out)["generators"] == json::array({"x1", "x2"}));
    const auto mi = run("multiplier --ideal " + ideal + " --power 2 -c 2 --bound 10 --no-cache");
    REQUIRE(mi.code == 0);
    const auto betti = run("betti --ideal " + ideal + " --no-cache --seed 7");
    REQUIRE(betti.code == 0);
    CHECK(json::parse(betti.out)["betti"].size() == 4);
    const auto hilb = run("hilbert --ideal " + ideal + " --dmax 3 --no-cache --seed 7");
    REQUIRE(hilb.code == 0);
    CHECK(json::parse(hilb.out)["values"] == json::parse(R"(["1","2","1","0"])"));
  }

  TEST_CASE("usage and input errors exit with 2") {
    Workspace w;
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("gin").code == 2);
    CHECK(run("verify-ci --type 2,2").code == 2);
    CHECK(run("verify-ci").code == 2);
    const auto ideal = w.file("i.txt", "ring: Q[x1,x2]\ngens: x1^2, x2^2\n");
    CHECK(run("multiplier --ideal " + ideal + " -c 1").code == 2);
    const auto missing = run("gin --ideal " + (w.path / "nope.txt").string(), true);
    CHECK(missing.code == 2);
    CHECK(missing.out.find("ginlab: error:") != std::string::npos);
    const auto broken = w.file("b.txt", "ring: Q[x1,x2]\ngens: x1^2, x1 + * x2\n");
    const auto parse = run("gin --no-cache --ideal " + broken, true);
    CHECK(parse.code == 2);
    CHECK(parse.out.find("line 2, column 18") != std::string::npos);
    CHECK(run("gin --no-cache --ideal " + ideal + " --field fp:4").code == 2);
    CHECK(run("--version").code == 0);
    CHECK(run("--help").code == 0);
  }
}
