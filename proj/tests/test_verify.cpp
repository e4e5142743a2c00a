#include <doctest.h>

#include "ginlab/verify.hpp"

using namespace ginlab;

namespace {

Polynomial<Rational> P(const char* text, const RingPtr& ring) { return parse_polynomial_q(text, ring); }

const Check& entry_check(const VerificationReport& rep, unsigned n, const std::string& name) {
  return rep.convergence.rows.at(n - 1).checks.at(name);
}

void require_no_failures(const VerificationReport& rep) {
  for (const auto& row : rep.convergence.rows)
    for (const auto& [name, check] : row.checks)
      CHECK_MESSAGE(check.status != CheckStatus::fail, "n = " << row.n << ", " << name << ": " << check.detail);
  for (const auto& [name, check] : rep.global_checks)
    CHECK_MESSAGE(check.status != CheckStatus::fail, name << ": " << check.detail);
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("ideal specs validate their input") {
    const auto r = RingSpec::standard(2);
    const auto ok = IdealSpec::make(r, {P("x1^2", r), P("x2^3 + x1*x2^2", r)}, CIType({2, 3}, 2));
    CHECK(ok.printed_generators() == std::vector<std::string>{"x1^2", "x1*x2^2 + x2^3"});
    CHECK_THROWS_AS(IdealSpec::make(r, {P("x1^2 + x2", r)}), DomainError);
    CHECK_THROWS_AS(IdealSpec::make(r, {}), DomainError);
    CHECK_THROWS_AS(IdealSpec::make(r, {P("0", r)}), DomainError);
    CHECK_THROWS_AS(IdealSpec::make(r, {P("x1^2", r), P("x2^2", r)}, CIType({2, 3}, 2)), DomainError);
    CHECK_THROWS_AS(IdealSpec::make(r, {P("x1^2", r), P("x2^2", r)}, CIType({2, 2}, 3)), DomainError);
    const auto f7 = RingSpec::standard(2, CoefficientField::prime_field(7));
    CHECK_THROWS_AS(IdealSpec::make(f7, {P("x1^2/7", r)}), DomainError);
  }

  TEST_CASE("styles") {
    CHECK(parse_style("generic") == CIStyle::generic);
    CHECK(to_string(CIStyle::diagonal) == "diagonal");
    CHECK_THROWS_AS(parse_style("random"), DomainError);
  }

  TEST_CASE("make_ci") {
    const auto diag = make_ci(CIType({2, 3}, 2), CIStyle::diagonal, 1);
    CHECK(diag.printed_generators() == std::vector<std::string>{"x1^2", "x2^3"});
    CHECK(diag.declared_type == CIType({2, 3}, 2));

    const auto a = make_ci(CIType({2, 2}, 3), CIStyle::generic, 5);
    const auto b = make_ci(CIType({2, 2}, 3), CIStyle::generic, 5);
    CHECK(a.printed_generators() == b.printed_generators());
    REQUIRE(a.generators.size() == 2);
    for (const auto& g : a.generators) {
      CHECK(g.degree() == 2);
      CHECK(g.size() >= 5);  // six monomials of degree 2, each coefficient nonzero with high probability
      for (const auto& t : g.terms()) {
        CHECK(abs(t.coeff) <= 1000);
        CHECK(t.coeff.get_den() == 1);
      }
    }
    CHECK(make_ci(CIType({2, 2}, 3), CIStyle::generic, 6).printed_generators() != a.printed_generators());
  }

  TEST_CASE("verify_ci on the diagonal complete intersection of type (2,2)") {
    const auto spec = make_ci(CIType({2, 2}, 2), CIStyle::diagonal, 1);
    const auto rep = verify_ci(spec, 3, 1);
    require_no_failures(rep);
    CHECK(rep.overall());
    CHECK(rep.field.prime() == 32003);
    CHECK(entry_check(rep, 1, "rational_replication").status == CheckStatus::pass);
    CHECK(entry_check(rep, 2, "rational_replication").status == CheckStatus::pass);
    CHECK(entry_check(rep, 3, "rational_replication").status == CheckStatus::skip);
    CHECK(rep.global_checks.at("graded_containment").status == CheckStatus::pass);
    for (const char* name : {"certificate", "p1", "pr", "monotone", "length", "limiting_containment",
                             "strongly_stable", "hilbert_function", "support", "betti"})
      CHECK_MESSAGE(entry_check(rep, 2, name).status == CheckStatus::pass, name);
  }

  TEST_CASE("verify_ci on a generic complete intersection of type (2,3)") {
    const auto spec = make_ci(CIType({2, 3}, 2), CIStyle::generic, 3);
    const auto rep = verify_ci(spec, 3, 3);
    require_no_failures(rep);
    CHECK(rep.overall());
    CHECK(rep.sequence.at(1).ideal.generators().front() == ExponentVector{2, 0});
  }

  TEST_CASE("verify_ci with more variables than equations") {
    const auto spec = make_ci(CIType({2, 2}, 3), CIStyle::generic, 2);
    const auto rep = verify_ci(spec, 2, 2);
    require_no_failures(rep);
    CHECK(rep.overall());
    CHECK(entry_check(rep, 1, "length").status == CheckStatus::skip);
  }

  TEST_CASE("field selection") {
    const auto spec = make_ci(CIType({2, 2}, 2), CIStyle::diagonal, 1);
    VerifyOptions q;
    q.field = CoefficientField::rationals();
    const auto rep = verify_ci(spec, 2, 1, q);
    CHECK(rep.overall());
    CHECK(entry_check(rep, 1, "rational_replication").status == CheckStatus::skip);

    const auto f = RingSpec::standard(2, CoefficientField::prime_field(101));
    const auto fq = with_field(f, CoefficientField::rationals());
    const auto over_f = IdealSpec::make(f, {P("x1^2", fq), P("x2^2", fq)}, CIType({2, 2}, 2));
    CHECK(verify_ci(over_f, 2, 1).field.prime() == 101);
    CHECK_THROWS_AS(verify_ci(over_f, 2, 1, q), DomainError);
  }

  TEST_CASE("negative controls fail") {
    const auto r = RingSpec::standard(2);
    // Not a complete intersection: the ideal has dimension one.
    const auto bad = IdealSpec::make(r, {P("x1^2", r), P("x1*x2", r)}, CIType({2, 2}, 2));
    const auto rep = verify_ci(bad, 2, 1);
    CHECK_FALSE(rep.overall());
    CHECK(entry_check(rep, 1, "length").status == CheckStatus::fail);

    // A genuine complete intersection checked against the wrong type.
    const auto spec = make_ci(CIType({2, 2}, 2), CIStyle::generic, 4);
    const auto wrong = verify_ci(spec, CIType({1, 3}, 2), 2, 4);
    CHECK_FALSE(wrong.overall());
    CHECK(entry_check(wrong, 1, "p1").status == CheckStatus::fail);

    CHECK_THROWS_AS(verify_ci(IdealSpec::make(r, {P("x1^2", r)}), 2, 1), DomainError);
    CHECK_THROWS_AS(verify_ci(spec, 0, 1), DomainError);
  }

  TEST_CASE("embedding reduction") {
    const auto rep = verify_embedding_reduction(CIType({2, 2}, 3), 2, 9);
    CHECK(rep.passed());
    REQUIRE(rep.checks.size() == 2);
    for (const auto& [n, checks] : rep.checks) {
      CHECK(checks.at("support").status == CheckStatus::pass);
      CHECK(checks.at("generators_match").status == CheckStatus::pass);
    }
    CHECK_THROWS_AS(verify_embedding_reduction(CIType({2, 2}, 2), 2, 9), DomainError);
  }
}
