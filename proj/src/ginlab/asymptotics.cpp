#include "asymptotics.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "errors.hpp"

namespace ginlab {

CIType::CIType(std::vector<std::uint32_t> degrees, std::size_t ambient)
    : degrees_(std::move(degrees)), ambient_(ambient) {
  if (degrees_.empty()) throw DomainError("complete intersection type needs at least one degree");
  for (auto d : degrees_)
    if (d == 0) throw DomainError("complete intersection degrees must be positive");
  if (!std::is_sorted(degrees_.begin(), degrees_.end()))
    throw DomainError("complete intersection degrees must be ascending, got " + to_string());
  if (ambient_ < degrees_.size())
    throw DomainError("type " + to_string() + " needs at least " + std::to_string(degrees_.size()) +
                      " variables, got " + std::to_string(ambient_));
}

Integer CIType::degree_product() const {
  Integer p = 1;
  for (auto d : degrees_) p *= d;
  return p;
}

std::string CIType::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < degrees_.size(); ++i) s += (i ? "," : "") + std::to_string(degrees_[i]);
  return s;
}

std::vector<std::uint32_t> parse_degree_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw DomainError("bad degree list '" + text + "'");
    if (cur.size() > 6) throw DomainError("degree too large in '" + text + "'");
    out.push_back(static_cast<std::uint32_t>(std::stoul(cur)));
    cur.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == ',') {
      flush();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      cur += c;
    } else {
      throw DomainError("bad degree list '" + text + "'");
    }
  }
  flush();
  return out;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
  }
  return "skip";
}

bool any_failed(const CheckMap& checks) {
  return std::any_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second.status == CheckStatus::fail; });
}

Integer predicted_length(const CIType& t, unsigned n) {
  if (n == 0) throw DomainError("predicted_length: n must be at least 1");
  if (t.ambient() != t.r())
    throw DomainError("predicted_length: needs m = r (got m = " + std::to_string(t.ambient()) +
                      ", r = " + std::to_string(t.r()) + ")");
  return binomial(n + t.r() - 1, t.r()) * t.degree_product();
}

std::vector<Halfspace> predicted_limiting_polytope(const CIType& t) {
  const auto m = t.ambient();
  const auto r = t.r();
  std::vector<Halfspace> out;
  for (std::size_t i = 0; i < m; ++i) {
    if (i < r && r < 2) continue;  // x_1 >= 0 is not a facet when r = 1
    Halfspace h;
    h.normal.assign(m, 0);
    h.normal[i] = 1;
    h.rhs = 0;
    h.coordinate = true;
    out.push_back(std::move(h));
  }
  Integer l = 1;
  for (auto d : t.degrees()) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), d);
  Halfspace h;
  h.normal.assign(m, 0);
  Integer g = 0;
  for (std::size_t i = 0; i < r; ++i) {
    h.normal[i] = l / t.degree(i);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), h.normal[i].get_mpz_t());
  }
  for (auto& a : h.normal) a /= g;
  h.rhs = Rational(l) / Rational(g);
  out.push_back(std::move(h));
  return out;
}

std::vector<Rational> system_volume_estimate(std::span<const Integer> lengths, std::size_t r) {
  if (lengths.empty()) throw DomainError("system_volume_estimate: no lengths");
  Integer rf;
  mpz_fac_ui(rf.get_mpz_t(), r);
  std::vector<Rational> out;
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    Integer nr;
    mpz_ui_pow_ui(nr.get_mpz_t(), k + 1, r);
    Rational v(rf * lengths[k], nr);
    v.canonicalize();
    out.push_back(v);
  }
  return out;
}

bool ConvergenceReport::passed() const {
  return std::none_of(rows.begin(), rows.end(), [](const ConvergenceRow& row) { return any_failed(row.checks); });
}

namespace {

std::string show(const std::optional<std::uint32_t>& v) { return v ? std::to_string(*v) : std::string("none"); }

}  // namespace

ConvergenceReport verify_limiting_polytope(const GinSequence& seq, const CIType& t) {
  ConvergenceReport rep{t, {}, t.degree_product()};
  const auto r = t.r();
  const auto m = t.ambient();
  if (seq.ring && seq.ring->var_count() != m)
    throw DomainError("verify_limiting_polytope: sequence has " + std::to_string(seq.ring->var_count()) +
                      " variables but the type declares " + std::to_string(m));
  std::uint32_t sum_lower = 0;
  for (std::size_t i = 0; i + 1 < r; ++i) sum_lower += t.degree(i);

  for (unsigned n = 1; seq.has(n); ++n) {
    const auto& entry = seq.at(n);
    const auto& ideal = entry.ideal;
    ConvergenceRow row;
    row.n = n;
    row.p = pure_powers(ideal);
    for (const auto& e : row.p.exponents)
      row.p_over_n.push_back(e ? std::optional<Rational>(Rational(*e, n)) : std::nullopt);
    // Rational(a, b) does not canonicalize.
    for (auto& q : row.p_over_n)
      if (q) q->canonicalize();

    row.checks["certificate"] = Check::of(entry.certificate.accepted(), "two-sample agreement and strong stability");

    const auto& p = row.p.exponents;
    const std::uint64_t p1_expected = static_cast<std::uint64_t>(n) * t.degree(0);
    row.checks["p1"] = Check::of(p[0] && *p[0] == p1_expected,
                                 "p_1 = " + show(p[0]) + ", expected " + std::to_string(p1_expected));
    const std::int64_t pr_expected =
        static_cast<std::int64_t>(sum_lower) + static_cast<std::int64_t>(n) * t.degree(r - 1) - static_cast<std::int64_t>(r) + 1;
    row.checks["pr"] = Check::of(p[r - 1] && static_cast<std::int64_t>(*p[r - 1]) == pr_expected,
                                 "p_r = " + show(p[r - 1]) + ", expected " + std::to_string(pr_expected));
    bool monotone = true;
    for (std::size_t i = 0; i < r; ++i)
      if (!p[i] || (i > 0 && *p[i - 1] > *p[i])) monotone = false;
    row.checks["monotone"] = Check::of(monotone, "p_1 <= ... <= p_r");

    if (m == r) {
      if (row.p.all_present()) {
        row.length = length_artinian(ideal);
        const auto expected = predicted_length(t, n);
        row.checks["length"] = Check::of(*row.length == expected,
                                         "length " + row.length->get_str() + ", expected " + expected.get_str());
        Integer rf, nr;
        mpz_fac_ui(rf.get_mpz_t(), r);
        mpz_ui_pow_ui(nr.get_mpz_t(), n, r);
        Rational v(rf * *row.length, nr);
        v.canonicalize();
        row.volume_estimate = v;
      } else {
        row.checks["length"] = Check::fail("ideal is not zero-dimensional");
      }
    } else {
      row.checks["length"] = Check::skip("R/gin(I^n) is not Artinian when m > r");
    }

    bool inside = true;
    std::string witness;
    for (const auto& g : ideal.generators()) {
      Rational s = 0;
      for (std::size_t i = 0; i < r; ++i) s += Rational(g[i], t.degree(i));
      if (s < n) {
        inside = false;
        witness = g.to_string();
        break;
      }
    }
    row.checks["limiting_containment"] =
        Check::of(inside, inside ? "sum J_i/d_i >= n for every minimal generator" : "violated by " + witness);

    if (seq.has(n + 1)) {
      if (m > kPolytopeDimensionCap) {
        row.checks["nested"] = Check::skip("dimension above polytope cap");
      } else {
        const auto here = NewtonPolyhedron::of_ideal(ideal).scaled(Rational(1, n));
        const auto next = NewtonPolyhedron::of_ideal(seq.at(n + 1).ideal).scaled(Rational(1, n + 1));
        row.checks["nested"] = Check::of(contains_polyhedron(here, next), "(1/n)P_n inside (1/(n+1))P_(n+1)");
      }
    } else {
      row.checks["nested"] = Check::skip("no entry n+1");
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

namespace {

// Calls f on every exponent vector of total degree <= bound.
template <typename F>
void for_each_monomial(std::size_t m, std::uint32_t bound, F&& f) {
  std::vector<std::uint32_t> e(m, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == m) {
      for (std::uint32_t k = 0; k <= left; ++k) {
        e[i] = k;
        f(e);
      }
      e[i] = 0;
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(rec, 0, bound);
}

// Shared enumeration: members are collected and minimalized; completeness
// requires every degree-`bound` monomial supported on `relevant` to be a member.
template <typename Member>
MultiplierResult enumerate_multiplier(std::size_t m, std::uint32_t bound, const std::vector<bool>& relevant,
                                      Member&& is_member) {
  std::vector<ExponentVector> members;
  bool complete = true;
  for_each_monomial(m, bound, [&](const std::vector<std::uint32_t>& e) {
    const bool in = is_member(e);
    if (in) members.emplace_back(e);
    std::uint64_t deg = 0;
    bool supported = true;
    for (std::size_t i = 0; i < m; ++i) {
      deg += e[i];
      if (e[i] != 0 && !relevant[i]) supported = false;
    }
    if (!in && supported && deg == bound) complete = false;
  });
  if (members.empty())
    throw DomainError("multiplier ideal has no generator of degree <= " + std::to_string(bound) +
                      "; increase the degree bound");
  return {MonomialIdeal::minimalize(std::move(members), m), complete};
}

}  // namespace

MultiplierResult multiplier_ideal(const MonomialIdeal& j, const Rational& c, std::uint32_t degree_bound) {
  if (sgn(c) <= 0) throw DomainError("multiplier_ideal: coefficient must be positive");
  if (j.is_zero()) throw DomainError("multiplier_ideal: zero ideal");
  const auto m = j.var_count();
  const auto poly = NewtonPolyhedron::of_ideal(j).scaled(c);
  std::vector<Halfspace> facets;
  std::vector<bool> relevant(m, false);
  for (const auto& f : poly.facets()) {
    if (f.coordinate) continue;
    for (std::size_t i = 0; i < m; ++i)
      if (f.normal[i] != 0) relevant[i] = true;
    facets.push_back(f);
  }
  std::vector<Rational> shifted(m);
  return enumerate_multiplier(m, degree_bound, relevant, [&](const std::vector<std::uint32_t>& e) {
    for (std::size_t i = 0; i < m; ++i) shifted[i] = e[i] + 1;
    return std::all_of(facets.begin(), facets.end(), [&](const Halfspace& h) { return h.strictly_satisfied_by(shifted); });
  });
}

EmpiricalMultiplier asymptotic_multiplier_ideal_empirical(const GinSequence& seq, const Rational& c, unsigned p,
                                                          std::uint32_t degree_bound) {
  if (p == 0 || !seq.has(p)) throw DomainError("gin sequence has no entry for p = " + std::to_string(p));
  EmpiricalMultiplier out{multiplier_ideal(seq.at(p).ideal, Rational(c / p), degree_bound), p, std::nullopt};
  if (seq.has(2 * p)) {
    const auto twice = multiplier_ideal(seq.at(2 * p).ideal, Rational(c / (2 * p)), degree_bound);
    out.stabilized = twice.ideal == out.result.ideal;
  }
  return out;
}

MultiplierResult ci_asymptotic_multiplier_ideal(const CIType& t, const Rational& c, std::uint32_t degree_bound) {
  if (sgn(c) <= 0) throw DomainError("ci_asymptotic_multiplier_ideal: coefficient must be positive");
  const auto m = t.ambient();
  const auto r = t.r();
  std::vector<bool> relevant(m, false);
  for (std::size_t i = 0; i < r; ++i) relevant[i] = true;
  return enumerate_multiplier(m, degree_bound, relevant, [&](const std::vector<std::uint32_t>& e) {
    Rational s = 0;
    for (std::size_t i = 0; i < r; ++i) s += Rational(e[i] + 1, t.degree(i));
    return s > c;
  });
}

std::uint32_t default_degree_bound(const CIType& t) {
  return 2 * t.degrees().back() * static_cast<std::uint32_t>(t.r() + 1);
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& x, bool allow_sign) {
    if (x.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (x[0] == '-' || x[0] == '+')) i = 1;
    if (i == x.size()) return false;
    for (; i < x.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(x[i]))) return false;
    return true;
  };
  const std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) throw DomainError("bad rational number '" + text + "'");
  Rational q(Integer(num[0] == '+' ? num.substr(1) : num), Integer(den));
  if (q.get_den() == 0) throw DomainError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace ginlab
