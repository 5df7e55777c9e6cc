#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "setrisk/rational.hpp"

namespace setrisk {

/// normal . u >= offset, or normal . u > offset when strict.
struct Halfspace {
  Vec normal;
  Rational offset;
  bool strict = false;

  bool satisfied_by(std::span<const Rational> point) const;
  /// The open (resp. closed) complementary halfspace.
  Halfspace complement() const;
  Halfspace strictified() const { return {normal, offset, true}; }
};

/// Lexicographic order on (normal, offset, strict); used for canonical output.
int compare(const Halfspace& a, const Halfspace& b);
bool operator==(const Halfspace& a, const Halfspace& b);

/// V-representation: conv(vertices) + cone(rays). A line is stored as the
/// pair of opposite rays.
struct Generators {
  std::vector<Vec> vertices;
  std::vector<Vec> rays;
};

/// Lines and extreme rays of the closed cone {r : normal . r >= 0 for all normals}.
struct ConeGenerators {
  std::vector<Vec> lines;
  std::vector<Vec> rays;
};

ConeGenerators cone_generators(const std::vector<Vec>& normals, std::size_t dim);

/// Finite intersection of (possibly strict) halfspaces in R^dim. The empty
/// list denotes the whole space.
class Polyhedron {
 public:
  explicit Polyhedron(std::size_t dim = 0) : dim_(dim) {}
  Polyhedron(std::size_t dim, std::vector<Halfspace> halfspaces);

  static Polyhedron empty_set(std::size_t dim);
  /// V -> H. No vertices means the empty set.
  static Polyhedron from_generators(std::size_t dim, const Generators& gens);

  std::size_t dim() const { return dim_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  bool has_strict() const;
  bool is_whole_space() const { return halfspaces_.empty(); }

  bool contains(std::span<const Rational> point) const;
  bool is_empty() const;
  /// Nonempty interior in R^dim.
  bool is_full_dimensional() const;
  /// Every direction in the recession cone: normal . dir >= 0 for all rows.
  bool recedes_along(std::span<const Rational> dir) const;

  Polyhedron intersect(const Polyhedron& other) const;
  Polyhedron with(Halfspace h) const;
  Polyhedron translated(std::span<const Rational> shift) const;
  /// t * P for t > 0.
  Polyhedron scaled(const Rational& t) const;

  /// Primitive rows, no redundancy, sorted. Empty sets collapse to a single
  /// infeasible row 0 >= 1.
  Polyhedron canonical() const;

  /// H -> V (cached copy when produced by convert_rep). Throws
  /// Error{StrictUnsupported} for systems with strict rows.
  Generators generators() const;
  const std::optional<Generators>& cached_generators() const { return vrep_; }

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) {
    return a.dim_ == b.dim_ && a.halfspaces_ == b.halfspaces_;
  }

 private:
  friend Polyhedron convert_rep(const Polyhedron& p);

  std::size_t dim_;
  std::vector<Halfspace> halfspaces_;
  std::optional<Generators> vrep_;
};

int compare(const Polyhedron& a, const Polyhedron& b);

/// Returns p with its V-representation computed and cached.
Polyhedron convert_rep(const Polyhedron& p);

/// Exact projection dropping the listed coordinates (Fourier-Motzkin).
Polyhedron eliminate(const Polyhedron& p, std::span<const std::size_t> drop);

/// Exact feasibility of a mixed strict/weak system.
bool feasible(const std::vector<Halfspace>& rows, std::size_t dim);

/// Some rational point satisfying every row (strict rows strictly), chosen
/// coordinate by coordinate with a preference for small values.
std::optional<Vec> find_point(const std::vector<Halfspace>& rows, std::size_t dim);

}  // namespace setrisk
