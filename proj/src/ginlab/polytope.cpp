#include "polytope.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "errors.hpp"

namespace ginlab {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(Matrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t piv = row;
    while (piv < a.size() && sgn(a[piv][col]) == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[row]);
    const Rational inv = 1 / a[row][col];
    for (auto& v : a[row]) v *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || sgn(a[r][col]) == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t k = col; k < a[r].size(); ++k) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank_of(Matrix a, std::size_t cols) { return row_reduce(a, cols).size(); }

// Nullspace vector when the nullity is exactly one.
std::optional<std::vector<Rational>> nullspace_line(Matrix a, std::size_t cols) {
  auto pivots = row_reduce(a, cols);
  if (pivots.size() + 1 != cols) return std::nullopt;
  std::size_t free_col = 0;
  while (std::find(pivots.begin(), pivots.end(), free_col) != pivots.end()) ++free_col;
  std::vector<Rational> v(cols, 0);
  v[free_col] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free_col];
  return v;
}

// Solution of a square system [A | b], if unique.
std::optional<RationalPoint> solve_square(Matrix a, std::size_t n) {
  auto pivots = row_reduce(a, n);
  if (pivots.size() != n) return std::nullopt;
  RationalPoint x(n);
  for (std::size_t r = 0; r < n; ++r) x[pivots[r]] = a[r][n];
  return x;
}

std::vector<Integer> primitive_integer(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& q : v) {
    Integer x = q.get_num() * (l / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    out.push_back(x);
  }
  if (g != 0)
    for (auto& x : out) x /= g;
  return out;
}

Rational dot(std::span<const Integer> a, std::span<const Rational> x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += Rational(a[i]) * x[i];
  return s;
}

std::size_t affine_dimension(const std::vector<const RationalPoint*>& pts, std::size_t m) {
  if (pts.size() <= 1) return 0;
  Matrix rows;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<Rational> r(m);
    for (std::size_t k = 0; k < m; ++k) r[k] = (*pts[i])[k] - (*pts[0])[k];
    rows.push_back(std::move(r));
  }
  return rank_of(std::move(rows), m);
}

Rational factorial(std::size_t n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational abs_det(Matrix a, std::size_t n) {
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a[piv][col]) == 0) ++piv;
    if (piv == n) return 0;
    std::swap(a[piv], a[col]);
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(a[r][col]) == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return abs(det);
}

void check_cap(std::size_t m) {
  if (m > kPolytopeDimensionCap)
    throw DomainError("polyhedral computations are capped at " + std::to_string(kPolytopeDimensionCap) +
                      " dimensions, got " + std::to_string(m));
}

Halfspace coordinate_facet(std::size_t m, std::size_t i) {
  Halfspace h;
  h.normal.assign(m, 0);
  h.normal[i] = 1;
  h.rhs = 0;
  h.coordinate = true;
  return h;
}

bool facet_order(const Halfspace& a, const Halfspace& b) {
  if (a.coordinate != b.coordinate) return a.coordinate;
  if (a.normal != b.normal) return a.normal > b.normal;
  return a.rhs < b.rhs;
}

}  // namespace

Rational Halfspace::evaluate(std::span<const Rational> x) const {
  if (x.size() != normal.size()) throw DomainError("halfspace: point has wrong dimension");
  return dot(normal, x);
}

struct NewtonPolyhedron::Impl {
  std::size_t dim = 0;
  std::vector<RationalPoint> points;
  std::once_flag once;
  std::vector<RationalPoint> vertices;
  std::vector<Halfspace> facets;
};

namespace {

void compute_representation(std::size_t m, const std::vector<RationalPoint>& points,
                            std::vector<RationalPoint>& vertices, std::vector<Halfspace>& facets) {
  check_cap(m);
  facets.clear();
  vertices.clear();
  for (std::size_t i = 0; i < m; ++i)
    if (std::any_of(points.begin(), points.end(), [&](const RationalPoint& p) { return sgn(p[i]) == 0; }))
      facets.push_back(coordinate_facet(m, i));

  const std::size_t n = points.size();
  std::set<std::pair<std::vector<Integer>, Rational>> seen;
  std::vector<std::size_t> chosen;
  // Hyperplanes through k points and m-k unit directions.
  auto try_hyperplane = [&](const std::vector<std::size_t>& pts, std::uint32_t dir_mask) {
    Matrix rows;
    for (std::size_t l = 1; l < pts.size(); ++l) {
      std::vector<Rational> r(m);
      for (std::size_t k = 0; k < m; ++k) r[k] = points[pts[l]][k] - points[pts[0]][k];
      rows.push_back(std::move(r));
    }
    for (std::size_t t = 0; t < m; ++t)
      if (dir_mask & (1u << t)) {
        std::vector<Rational> r(m, 0);
        r[t] = 1;
        rows.push_back(std::move(r));
      }
    auto line = nullspace_line(std::move(rows), m);
    if (!line) return;
    auto normal = primitive_integer(*line);
    const bool has_pos = std::any_of(normal.begin(), normal.end(), [](const Integer& x) { return x > 0; });
    const bool has_neg = std::any_of(normal.begin(), normal.end(), [](const Integer& x) { return x < 0; });
    if (has_pos && has_neg) return;
    if (has_neg)
      for (auto& x : normal) x = -x;
    const Rational rhs = dot(normal, points[pts[0]]);
    if (sgn(rhs) <= 0) return;
    for (const auto& p : points)
      if (dot(normal, p) < rhs) return;
    if (!seen.insert({normal, rhs}).second) return;
    facets.push_back(Halfspace{std::move(normal), rhs, false});
  };
  auto choose_points = [&](auto&& self, std::size_t start, std::size_t k) -> void {
    if (chosen.size() == k) {
      for (std::uint32_t mask = 0; mask < (1u << m); ++mask)
        if (static_cast<std::size_t>(__builtin_popcount(mask)) == m - k) try_hyperplane(chosen, mask);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      chosen.push_back(i);
      self(self, i + 1, k);
      chosen.pop_back();
    }
  };
  for (std::size_t k = 1; k <= std::min(m, n); ++k) choose_points(choose_points, 0, k);
  std::sort(facets.begin(), facets.end(), facet_order);

  // Vertices: points whose tight constraints (facets plus all coordinate
  // inequalities) have full rank.
  std::set<RationalPoint> unique(points.begin(), points.end());
  for (const auto& p : unique) {
    Matrix tight;
    for (const auto& f : facets)
      if (!f.coordinate && dot(f.normal, p) == f.rhs) {
        std::vector<Rational> r(m);
        for (std::size_t k = 0; k < m; ++k) r[k] = Rational(f.normal[k]);
        tight.push_back(std::move(r));
      }
    for (std::size_t i = 0; i < m; ++i)
      if (sgn(p[i]) == 0) {
        std::vector<Rational> r(m, 0);
        r[i] = 1;
        tight.push_back(std::move(r));
      }
    if (rank_of(std::move(tight), m) == m) vertices.push_back(p);
  }
}

}  // namespace

NewtonPolyhedron NewtonPolyhedron::from_points(std::size_t dim, std::vector<RationalPoint> points) {
  if (dim == 0) throw DomainError("newton polyhedron needs at least one dimension");
  if (points.empty()) throw DomainError("newton polyhedron of the zero ideal is empty");
  for (const auto& p : points) {
    if (p.size() != dim) throw DomainError("newton polyhedron: point of wrong dimension");
    for (const auto& c : p)
      if (sgn(c) < 0) throw DomainError("newton polyhedron: negative coordinate");
  }
  auto impl = std::make_shared<Impl>();
  impl->dim = dim;
  impl->points = std::move(points);
  return NewtonPolyhedron(std::move(impl));
}

RationalPoint to_point(const ExponentVector& e) {
  RationalPoint p;
  p.reserve(e.size());
  for (auto v : e.entries()) p.emplace_back(static_cast<unsigned long>(v));
  return p;
}

NewtonPolyhedron NewtonPolyhedron::of_ideal(const MonomialIdeal& j) {
  if (j.is_zero()) throw DomainError("newton polyhedron of the zero ideal is empty");
  std::vector<RationalPoint> pts;
  for (const auto& g : j.generators()) pts.push_back(to_point(g));
  return from_points(j.var_count(), std::move(pts));
}

std::size_t NewtonPolyhedron::dim() const noexcept { return impl_->dim; }

const NewtonPolyhedron::Impl& NewtonPolyhedron::ensure() const {
  std::call_once(impl_->once, [&] { compute_representation(impl_->dim, impl_->points, impl_->vertices, impl_->facets); });
  return *impl_;
}

const std::vector<RationalPoint>& NewtonPolyhedron::vertices() const { return ensure().vertices; }
const std::vector<Halfspace>& NewtonPolyhedron::facets() const { return ensure().facets; }

NewtonPolyhedron NewtonPolyhedron::scaled(const Rational& t) const {
  if (sgn(t) <= 0) throw DomainError("scale factor must be positive, got " + t.get_str());
  const auto& src = ensure();
  auto impl = std::make_shared<Impl>();
  impl->dim = src.dim;
  for (const auto& p : src.vertices) {
    RationalPoint q(p);
    for (auto& c : q) c *= t;
    impl->points.push_back(q);
  }
  std::call_once(impl->once, [&] {
    impl->vertices = impl->points;
    impl->facets = src.facets;
    for (auto& f : impl->facets) f.rhs *= t;
  });
  return NewtonPolyhedron(std::move(impl));
}

bool NewtonPolyhedron::contains(std::span<const Rational> x) const {
  if (x.size() != dim()) throw DomainError("contains: point has wrong dimension");
  for (const auto& c : x)
    if (sgn(c) < 0) return false;
  return satisfies_all(x, facets());
}

std::vector<Halfspace> halfspace_rep(const NewtonPolyhedron& p) { return p.facets(); }

NewtonPolyhedron scale(const NewtonPolyhedron& p, const Rational& t) { return p.scaled(t); }

bool satisfies_all(std::span<const Rational> x, std::span<const Halfspace> hs) {
  return std::all_of(hs.begin(), hs.end(), [&](const Halfspace& h) { return h.satisfied_by(x); });
}

bool contains_polyhedron(const NewtonPolyhedron& inner, const NewtonPolyhedron& outer) {
  if (inner.dim() != outer.dim()) throw DomainError("contains_polyhedron: dimension mismatch");
  const auto& hs = outer.facets();
  return std::all_of(inner.vertices().begin(), inner.vertices().end(),
                     [&](const RationalPoint& v) { return satisfies_all(v, hs); });
}

Rational simplex_volume(std::span<const RationalPoint> points) {
  const std::size_t r = points.size();
  if (r == 0) throw DomainError("simplex_volume: no points");
  Matrix a(r, std::vector<Rational>(r));
  for (std::size_t c = 0; c < r; ++c) {
    if (points[c].size() != r)
      throw DomainError("simplex_volume: expected " + std::to_string(r) + " points in " + std::to_string(r) +
                        "-space");
    for (std::size_t k = 0; k < r; ++k) a[k][c] = points[c][k];
  }
  return abs_det(std::move(a), r) / factorial(r);
}

namespace {

struct BoxedPolytope {
  std::size_t m;
  std::vector<Halfspace> constraints;  // all as <a, x> >= b, a may be negative
  std::vector<RationalPoint> vertices;
  std::vector<std::vector<bool>> tight;  // tight[c][v]
};

// Pulling triangulation: cone from the lowest vertex over the
// triangulations of the facets not containing it.
void triangulate(const BoxedPolytope& k, const std::vector<std::size_t>& face, std::size_t dim,
                 std::vector<std::vector<std::size_t>>& out) {
  if (dim == 0) {
    out.push_back({face.front()});
    return;
  }
  const std::size_t base = face.front();
  std::set<std::vector<std::size_t>> subfaces;
  for (std::size_t c = 0; c < k.constraints.size(); ++c) {
    if (k.tight[c][base]) continue;
    std::vector<std::size_t> sub;
    for (auto v : face)
      if (k.tight[c][v]) sub.push_back(v);
    if (sub.size() < dim || subfaces.count(sub)) continue;
    std::vector<const RationalPoint*> pts;
    for (auto v : sub) pts.push_back(&k.vertices[v]);
    if (affine_dimension(pts, k.m) != dim - 1) continue;
    subfaces.insert(std::move(sub));
  }
  for (const auto& sub : subfaces) {
    std::vector<std::vector<std::size_t>> inner;
    triangulate(k, sub, dim - 1, inner);
    for (auto& s : inner) {
      s.insert(s.begin(), base);
      out.push_back(std::move(s));
    }
  }
}

Rational boxed_volume(const std::vector<Halfspace>& facets, std::size_t m, const Rational& bound) {
  BoxedPolytope k;
  k.m = m;
  for (const auto& f : facets)
    if (!f.coordinate) k.constraints.push_back(f);
  for (std::size_t i = 0; i < m; ++i) {
    k.constraints.push_back(coordinate_facet(m, i));
    Halfspace upper;
    upper.normal.assign(m, 0);
    upper.normal[i] = -1;
    upper.rhs = -bound;
    k.constraints.push_back(upper);
  }
  // Vertex enumeration over m-subsets of constraints.
  std::set<RationalPoint> found;
  std::vector<std::size_t> chosen;
  const std::size_t nc = k.constraints.size();
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (chosen.size() == m) {
      Matrix sys;
      for (auto c : chosen) {
        std::vector<Rational> row(m + 1);
        for (std::size_t j = 0; j < m; ++j) row[j] = Rational(k.constraints[c].normal[j]);
        row[m] = k.constraints[c].rhs;
        sys.push_back(std::move(row));
      }
      auto x = solve_square(std::move(sys), m);
      if (x && satisfies_all(*x, k.constraints)) found.insert(*x);
      return;
    }
    for (std::size_t c = start; c < nc; ++c) {
      chosen.push_back(c);
      self(self, c + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  k.vertices.assign(found.begin(), found.end());
  k.tight.assign(nc, std::vector<bool>(k.vertices.size(), false));
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t v = 0; v < k.vertices.size(); ++v)
      k.tight[c][v] = k.constraints[c].evaluate(k.vertices[v]) == k.constraints[c].rhs;

  std::vector<std::size_t> all(k.vertices.size());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
  std::vector<std::vector<std::size_t>> simplices;
  triangulate(k, all, m, simplices);
  Rational total = 0;
  const Rational mf = factorial(m);
  for (const auto& s : simplices) {
    Matrix a(m, std::vector<Rational>(m));
    for (std::size_t c = 1; c <= m; ++c)
      for (std::size_t r = 0; r < m; ++r) a[r][c - 1] = k.vertices[s[c]][r] - k.vertices[s[0]][r];
    total += abs_det(std::move(a), m) / mf;
  }
  return total;
}

}  // namespace

Rational complement_volume(const NewtonPolyhedron& p) {
  const std::size_t m = p.dim();
  check_cap(m);
  const auto& facets = p.facets();
  Rational bound = 0;
  for (std::size_t i = 0; i < m; ++i) {
    Rational intercept = 0;
    for (const auto& f : facets) {
      if (f.coordinate) continue;
      if (f.normal[i] == 0)
        throw DomainError("complement_volume: complement is unbounded along variable " + std::to_string(i + 1));
      intercept = std::max(intercept, Rational(f.rhs / Rational(f.normal[i])));
    }
    bound = std::max(bound, intercept);
  }
  if (sgn(bound) == 0) return 0;
  Rational box = 1;
  for (std::size_t i = 0; i < m; ++i) box *= bound;
  return box - boxed_volume(facets, m, bound);
}

}  // namespace ginlab
