#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "ginlab/ginlab.h"

namespace {

constexpr int kExitFailedCheck = 1;
constexpr int kExitError = 2;

struct IdealDeleter {
  void operator()(ginlab_ideal* p) const { ginlab_ideal_free(p); }
};
using IdealHandle = std::unique_ptr<ginlab_ideal, IdealDeleter>;

struct Failure {
  std::string message;
};

void check(ginlab_status s) {
  if (s == GINLAB_OK) return;
  throw Failure{ginlab_last_error()};
}

IdealHandle load(const std::string& path) {
  ginlab_ideal* raw = nullptr;
  check(ginlab_ideal_load(path.c_str(), &raw));
  return IdealHandle(raw);
}

// Takes ownership of a C string from the library and writes it out.
void deliver(char* json, const std::string& out_path) {
  std::unique_ptr<char, void (*)(char*)> guard(json, ginlab_free_string);
  if (out_path.empty()) {
    std::fputs(json, stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  out << json;
  out.close();
  if (!out) throw Failure{"cannot write '" + out_path + "'"};
}

struct Common {
  std::string ideal;
  unsigned power = 1;
  std::uint64_t seed = 1;
  std::string field;
  bool no_cache = false;
  std::string out;

  ginlab_options options() const {
    return ginlab_options{field.empty() ? nullptr : field.c_str(), no_cache ? 0 : 1, nullptr};
  }
};

void add_seed_field_out(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Random seed")->default_val(1);
  sub->add_option("--field", c.field, "Coefficient field: q or fp:P (default: the ideal's field)");
  sub->add_flag("--no-cache", c.no_cache, "Bypass the result cache");
  sub->add_option("--out", c.out, "Write JSON to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generic initial ideals of complete intersections and their limiting polytopes", "ginlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ginlab_version()));

  Common gin_opts;
  auto* gin = app.add_subcommand("gin", "Generic initial ideal of a power of an ideal");
  gin->add_option("--ideal", gin_opts.ideal, "Ideal file")->required();
  gin->add_option("--power", gin_opts.power, "Power n of I^n")->default_val(1)->check(CLI::PositiveNumber);
  add_seed_field_out(gin, gin_opts);

  Common seq_opts;
  unsigned seq_nmax = 0;
  auto* seq = app.add_subcommand("gin-seq", "gin(I^n) for n = 1..nmax with containment checks");
  seq->add_option("--ideal", seq_opts.ideal, "Ideal file")->required();
  seq->add_option("--nmax", seq_nmax, "Largest power")->required()->check(CLI::PositiveNumber);
  add_seed_field_out(seq, seq_opts);

  Common ver_opts;
  std::string ver_type, ver_style = "generic";
  unsigned ver_vars = 0, ver_nmax = 4;
  auto* ver = app.add_subcommand("verify-ci", "Check a complete intersection against the closed forms");
  auto* ver_ideal = ver->add_option("--ideal", ver_opts.ideal, "Ideal file with a 'type:' line");
  auto* ver_type_opt = ver->add_option("--type", ver_type, "Degrees d1,..,dr");
  auto* ver_vars_opt = ver->add_option("--vars", ver_vars, "Number of variables m")->check(CLI::PositiveNumber);
  ver->add_option("--style", ver_style, "diagonal or generic")->check(CLI::IsMember({"diagonal", "generic"}));
  ver->add_option("--nmax", ver_nmax, "Largest power")->default_val(4)->check(CLI::PositiveNumber);
  ver->add_option("--seed", ver_opts.seed, "Random seed")->default_val(1);
  ver->add_option("--field", ver_opts.field, "Coefficient field for the main run (default fp:32003)");
  ver->add_option("--out", ver_opts.out, "Write JSON to this file instead of stdout");
  ver_ideal->excludes(ver_type_opt);
  ver_type_opt->needs(ver_vars_opt);
  ver_vars_opt->needs(ver_type_opt);

  Common poly_opts;
  bool poly_half = false;
  auto* poly = app.add_subcommand("polytope", "Newton polyhedron of gin(I^n)");
  poly->add_option("--ideal", poly_opts.ideal, "Ideal file")->required();
  poly->add_option("--power", poly_opts.power, "Power n")->default_val(1)->check(CLI::PositiveNumber);
  poly->add_flag("--halfspace", poly_half, "Include facet inequalities and the complement volume");
  add_seed_field_out(poly, poly_opts);

  Common mult_opts;
  std::string mult_type, mult_c;
  unsigned mult_bound = 0;
  auto* mult = app.add_subcommand("multiplier", "Multiplier ideal J((c/p) gin(I^p)) or the closed form for a type");
  auto* mult_ideal = mult->add_option("--ideal", mult_opts.ideal, "Ideal file");
  auto* mult_power = mult->add_option("--power", mult_opts.power, "Power p")->check(CLI::PositiveNumber);
  auto* mult_type_opt = mult->add_option("--type", mult_type, "Degrees d1,..,dr (closed form in r variables)");
  mult->add_option("-c", mult_c, "Coefficient, e.g. 1 or 3/2")->required();
  mult->add_option("--bound", mult_bound, "Total degree bound for the enumeration");
  add_seed_field_out(mult, mult_opts);
  mult_ideal->excludes(mult_type_opt);
  mult_power->needs(mult_ideal);

  Common betti_opts;
  auto* betti = app.add_subcommand("betti", "Eliahou-Kervaire Betti table of gin(I^n)");
  betti->add_option("--ideal", betti_opts.ideal, "Ideal file")->required();
  betti->add_option("--power", betti_opts.power, "Power n")->default_val(1)->check(CLI::PositiveNumber);
  add_seed_field_out(betti, betti_opts);

  Common hilb_opts;
  unsigned hilb_dmax = 0;
  auto* hilb = app.add_subcommand("hilbert", "Hilbert function of R/gin(I^n)");
  hilb->add_option("--ideal", hilb_opts.ideal, "Ideal file")->required();
  hilb->add_option("--power", hilb_opts.power, "Power n")->default_val(1)->check(CLI::PositiveNumber);
  hilb->add_option("--dmax", hilb_dmax, "Largest degree")->required();
  add_seed_field_out(hilb, hilb_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    char* json = nullptr;
    if (*gin) {
      auto ideal = load(gin_opts.ideal);
      const auto o = gin_opts.options();
      check(ginlab_gin(ideal.get(), gin_opts.power, gin_opts.seed, &o, &json));
      deliver(json, gin_opts.out);
    } else if (*seq) {
      auto ideal = load(seq_opts.ideal);
      const auto o = seq_opts.options();
      check(ginlab_gin_sequence(ideal.get(), seq_nmax, seq_opts.seed, &o, &json));
      deliver(json, seq_opts.out);
    } else if (*ver) {
      IdealHandle ideal;
      if (!ver_opts.ideal.empty()) {
        ideal = load(ver_opts.ideal);
      } else if (!ver_type.empty()) {
        ginlab_ideal* raw = nullptr;
        check(ginlab_ideal_make_ci(ver_type.c_str(), ver_vars, ver_style.c_str(), ver_opts.seed, &raw));
        ideal.reset(raw);
      } else {
        std::cerr << "ginlab: error: verify-ci: give --ideal PATH or --type d1,..,dr --vars M\n";
        return kExitError;
      }
      int overall = 0;
      check(ginlab_verify_ci(ideal.get(), ver_nmax, ver_opts.seed,
                             ver_opts.field.empty() ? nullptr : ver_opts.field.c_str(), &overall, &json));
      deliver(json, ver_opts.out);
      return overall ? 0 : kExitFailedCheck;
    } else if (*poly) {
      auto ideal = load(poly_opts.ideal);
      const auto o = poly_opts.options();
      check(ginlab_polytope(ideal.get(), poly_opts.power, poly_opts.seed, &o, poly_half ? 1 : 0, &json));
      deliver(json, poly_opts.out);
    } else if (*mult) {
      if (!mult_type.empty()) {
        check(ginlab_multiplier_ci(mult_type.c_str(), mult_c.c_str(), mult_bound, &json));
      } else if (!mult_opts.ideal.empty()) {
        if (mult_bound == 0) {
          std::cerr << "ginlab: error: multiplier: --bound is required with --ideal\n";
          return kExitError;
        }
        auto ideal = load(mult_opts.ideal);
        const auto o = mult_opts.options();
        check(ginlab_multiplier(ideal.get(), mult_opts.power, mult_opts.seed, &o, mult_c.c_str(), mult_bound, &json));
      } else {
        std::cerr << "ginlab: error: multiplier: give --ideal PATH --power P or --type d1,..,dr\n";
        return kExitError;
      }
      deliver(json, mult_opts.out);
    } else if (*betti) {
      auto ideal = load(betti_opts.ideal);
      const auto o = betti_opts.options();
      check(ginlab_betti(ideal.get(), betti_opts.power, betti_opts.seed, &o, &json));
      deliver(json, betti_opts.out);
    } else if (*hilb) {
      auto ideal = load(hilb_opts.ideal);
      const auto o = hilb_opts.options();
      check(ginlab_hilbert(ideal.get(), hilb_opts.power, hilb_opts.seed, &o, hilb_dmax, &json));
      deliver(json, hilb_opts.out);
    }
  } catch (const Failure& f) {
    std::cerr << "ginlab: error: " << f.message << "\n";
    return kExitError;
  }
  return 0;
}
