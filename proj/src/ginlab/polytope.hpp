#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "scalar.hpp"
#include "staircase.hpp"

namespace ginlab {

using RationalPoint = std::vector<Rational>;

// <normal, x> >= rhs. Normals are primitive nonnegative integer vectors.
// Coordinate facets are x_i >= 0.
struct Halfspace {
  std::vector<Integer> normal;
  Rational rhs;
  bool coordinate = false;

  Rational evaluate(std::span<const Rational> x) const;
  bool satisfied_by(std::span<const Rational> x) const { return evaluate(x) >= rhs; }
  bool strictly_satisfied_by(std::span<const Rational> x) const { return evaluate(x) > rhs; }

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

// H-representation and volumes are exhaustive searches; capped at this
// many dimensions.
inline constexpr std::size_t kPolytopeDimensionCap = 6;

// conv(points) + nonnegative orthant, with lazily computed vertices and
// facets. Copies share the cache.
class NewtonPolyhedron {
 public:
  static NewtonPolyhedron of_ideal(const MonomialIdeal& j);
  static NewtonPolyhedron from_points(std::size_t dim, std::vector<RationalPoint> points);

  std::size_t dim() const noexcept;
  // Extreme points, sorted lexicographically.
  const std::vector<RationalPoint>& vertices() const;
  // Facet-defining inequalities: coordinate facets first, then the rest
  // ordered by normal and right-hand side.
  const std::vector<Halfspace>& facets() const;

  NewtonPolyhedron scaled(const Rational& t) const;
  bool contains(std::span<const Rational> x) const;

 private:
  struct Impl;
  explicit NewtonPolyhedron(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  const Impl& ensure() const;
  std::shared_ptr<Impl> impl_;
};

std::vector<Halfspace> halfspace_rep(const NewtonPolyhedron& p);
NewtonPolyhedron scale(const NewtonPolyhedron& p, const Rational& t);

// Every vertex of `inner` satisfies every facet of `outer`.
bool contains_polyhedron(const NewtonPolyhedron& inner, const NewtonPolyhedron& outer);

// Point satisfies every inequality in the list.
bool satisfies_all(std::span<const Rational> x, std::span<const Halfspace> hs);

// Volume of the closure of the orthant minus P. Throws DomainError when the
// complement is unbounded.
Rational complement_volume(const NewtonPolyhedron& p);

// |det(A)| / r! for r points in r-space (columns of A).
Rational simplex_volume(std::span<const RationalPoint> points);

RationalPoint to_point(const ExponentVector& e);

}  // namespace ginlab
