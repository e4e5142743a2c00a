#pragma once

// Independent reference computations used to cross-check the library.
// These deliberately avoid the library's own algorithms (no Buchberger, no
// inclusion-exclusion, no facet search).

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "ginlab/poly.hpp"

namespace oracle {

using Exp = std::vector<std::uint32_t>;
using ginlab::Integer;
using ginlab::Rational;

inline bool divides(const Exp& a, const Exp& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline std::vector<Exp> monomials(std::size_t m, std::uint32_t d) {
  std::vector<Exp> out;
  Exp e(m, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == m) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

inline bool member(const std::vector<Exp>& gens, const Exp& e) {
  return std::any_of(gens.begin(), gens.end(), [&](const Exp& g) { return divides(g, e); });
}

// HF(R/J, d) by listing every degree-d monomial.
inline std::vector<long> hilbert_by_enumeration(const std::vector<Exp>& gens, std::size_t m, std::uint32_t d_max) {
  std::vector<long> out;
  for (std::uint32_t d = 0; d <= d_max; ++d) {
    long count = 0;
    for (const auto& e : monomials(m, d))
      if (!member(gens, e)) ++count;
    out.push_back(count);
  }
  return out;
}

inline std::vector<Exp> minimal(std::vector<Exp> gens) {
  std::vector<Exp> out;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& h : gens)
      if (h != g && divides(h, g)) redundant = true;
    if (!redundant) out.push_back(g);
  }
  return out;
}

// Rank of a dense rational matrix by Gaussian elimination.
inline std::size_t rank(std::vector<std::vector<Rational>> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

// HF(R/I, d) for homogeneous I over Q: monomials of degree d minus the rank
// of the span of {x^u f}.
inline std::vector<long> hilbert_by_linear_algebra(const std::vector<ginlab::Polynomial<Rational>>& gens,
                                                   std::size_t m, std::uint32_t d_max) {
  std::vector<long> out;
  for (std::uint32_t d = 0; d <= d_max; ++d) {
    const auto basis = monomials(m, d);
    std::vector<std::vector<Rational>> rows;
    for (const auto& f : gens) {
      if (f.is_zero() || f.degree() > d) continue;
      for (const auto& u : monomials(m, d - static_cast<std::uint32_t>(f.degree()))) {
        std::vector<Rational> row(basis.size(), 0);
        for (const auto& t : f.terms()) {
          Exp e(m);
          for (std::size_t i = 0; i < m; ++i) e[i] = t.exponents[i] + u[i];
          const auto pos = std::find(basis.begin(), basis.end(), e) - basis.begin();
          row[pos] += t.coeff;
        }
        rows.push_back(std::move(row));
      }
    }
    out.push_back(static_cast<long>(basis.size()) - static_cast<long>(rank(std::move(rows))));
  }
  return out;
}

struct Line {
  Integer a, b;  // a x + b y >= c
  Integer c;
  bool operator==(const Line&) const = default;
};

// Facets of conv(points) + orthant in the plane, by testing every pair of
// points and both axes.
inline std::vector<Line> dualize_2d(const std::vector<Exp>& pts) {
  std::vector<Line> out;
  std::uint32_t min_x = pts.front()[0], min_y = pts.front()[1];
  for (const auto& p : pts) {
    min_x = std::min(min_x, p[0]);
    min_y = std::min(min_y, p[1]);
  }
  // The leftmost and lowest points each start an unbounded edge.
  out.push_back({1, 0, min_x});
  out.push_back({0, 1, min_y});
  for (const auto& p : pts)
    for (const auto& q : pts) {
      if (!(p[0] < q[0] && p[1] > q[1])) continue;
      Integer a = p[1] - q[1], b = q[0] - p[0];
      Integer g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      a /= g;
      b /= g;
      const Integer c = a * p[0] + b * p[1];
      bool valid = true;
      for (const auto& s : pts)
        if (a * s[0] + b * s[1] < c) valid = false;
      Line l{a, b, c};
      if (valid && std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    }
  // Every valid pair line is tight at two points, hence an edge.
  return out;
}

// Howald membership in 2D: lambda + 1 strictly above every slanted facet of c P.
inline std::vector<Exp> multiplier_2d(const std::vector<Exp>& gens, const Rational& c, std::uint32_t bound) {
  const auto facets = dualize_2d(gens);
  std::vector<Exp> members;
  for (std::uint32_t d = 0; d <= bound; ++d)
    for (const auto& e : monomials(2, d)) {
      bool in = true;
      for (const auto& f : facets) {
        if (f.c == 0) continue;
        const Rational lhs = Rational(f.a * (e[0] + 1) + f.b * (e[1] + 1));
        if (!(lhs > c * Rational(f.c))) in = false;
      }
      if (in) members.push_back(e);
    }
  return minimal(members);
}

// Area of a simple polygon given in order.
inline Rational shoelace(const std::vector<std::pair<Rational, Rational>>& poly) {
  Rational twice = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& [x1, y1] = poly[i];
    const auto& [x2, y2] = poly[(i + 1) % poly.size()];
    twice += x1 * y2 - x2 * y1;
  }
  return abs(twice) / 2;
}

// Area of the bounded region between the axes and the staircase hull of a
// zero-dimensional monomial ideal in two variables.
inline Rational complement_area_2d(const std::vector<Exp>& gens) {
  // Lower hull of the points, from the y-axis to the x-axis.
  std::vector<Exp> pts = gens;
  std::sort(pts.begin(), pts.end());
  std::vector<Exp> hull;
  for (const auto& p : pts) {
    if (!hull.empty() && hull.back()[1] <= p[1]) continue;
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const long long cross = (static_cast<long long>(b[0]) - a[0]) * (static_cast<long long>(p[1]) - a[1]) -
                              (static_cast<long long>(b[1]) - a[1]) * (static_cast<long long>(p[0]) - a[0]);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  std::vector<std::pair<Rational, Rational>> poly{{0, 0}};
  for (auto it = hull.rbegin(); it != hull.rend(); ++it) poly.emplace_back((*it)[0], (*it)[1]);
  return shoelace(poly);
}

}  // namespace oracle
