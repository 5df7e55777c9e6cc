#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "setrisk/polyhedron.hpp"
#include "setrisk/rational.hpp"

namespace setrisk {

/// Closed convex polyhedral cone {x : n . x >= 0 for every normal n}, kept
/// together with a generating set (lines appear as opposite ray pairs).
struct PolyhedralCone {
  std::size_t dim = 0;
  std::vector<Vec> normals;
  std::vector<Vec> rays;

  static PolyhedralCone from_normals(std::size_t dim, std::vector<Vec> normals);
  static PolyhedralCone from_rays(std::size_t dim, std::vector<Vec> rays);

  bool contains(std::span<const Rational> x) const;
  bool has_interior() const;
  Polyhedron as_polyhedron() const;
  /// Sum of all generators; lies in the interior whenever the cone has one.
  Vec interior_point() const;
};

/// A finite union of closed convex pieces in M-coordinates, each absorbing
/// the recession cone (P + C = P). Always held in canonical form.
class UpperSet {
 public:
  /// Canonicalizes. Throws Error{EmptyInterior} if the cone has no interior,
  /// Error{StrictUnsupported} if a piece carries a strict row.
  UpperSet(PolyhedralCone recession, std::vector<Polyhedron> pieces);

  static UpperSet empty(const PolyhedralCone& recession);
  static UpperSet whole(const PolyhedralCone& recession);
  /// The recession cone itself (the value 0 * D).
  static UpperSet of_cone(const PolyhedralCone& recession);

  std::size_t dim() const { return recession_.dim; }
  const std::vector<Polyhedron>& pieces() const { return pieces_; }
  const PolyhedralCone& recession() const { return recession_; }
  bool is_empty() const { return pieces_.empty(); }
  bool is_whole() const { return pieces_.size() == 1 && pieces_.front().is_whole_space(); }

  bool contains(std::span<const Rational> point) const;
  /// other is a subset of *this.
  bool includes(const UpperSet& other) const;
  bool equals(const UpperSet& other) const { return includes(other) && other.includes(*this); }

  /// D + shift.
  UpperSet translated(std::span<const Rational> shift) const;

 private:
  PolyhedralCone recession_;
  std::vector<Polyhedron> pieces_;
};

enum class SetOp { intersect, minkowski_add, unite };

UpperSet combine(SetOp op, const UpperSet& a, const UpperSet& b);
UpperSet intersect(const UpperSet& a, const UpperSet& b);
UpperSet unite(const UpperSet& a, const UpperSet& b);
UpperSet minkowski_add(const UpperSet& a, const UpperSet& b);
/// t * D; t = 0 yields the recession cone; t < 0 throws Error{NegativeScale}.
UpperSet scale(const UpperSet& a, const Rational& t);

/// Canonical pieces: nonempty, irredundant, absorbing, sorted, and none
/// contained in the union of the others.
std::vector<Polyhedron> canonical_pieces(const PolyhedralCone& recession,
                                         std::vector<Polyhedron> pieces);
UpperSet canonicalize(const UpperSet& a);

/// p is a subset of the union of `cover`; p must be closed and equal to the
/// closure of its interior (true for every nonempty absorbing piece).
bool covered(const Polyhedron& p, std::span<const Polyhedron> cover);

/// A point of p outside every polyhedron of `cover`, if one exists (same
/// preconditions as covered).
std::optional<Vec> uncovered_point(const Polyhedron& p, std::span<const Polyhedron> cover);

/// A point of `small` outside `big`; none iff big includes small.
std::optional<Vec> inclusion_witness(const UpperSet& big, const UpperSet& small);

}  // namespace setrisk
