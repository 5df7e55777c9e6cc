#pragma once

#include <optional>
#include <vector>

#include "setrisk/polyhedron.hpp"
#include "setrisk/upper_set.hpp"

namespace setrisk {

/// K with R^d_+ inside, plus its positive dual K+.
struct SolvencyCone {
  PolyhedralCone cone;
  PolyhedralCone dual;

  std::size_t dim() const { return cone.dim; }
  bool contains(std::span<const Rational> x) const { return cone.contains(x); }
  /// x in -int K, i.e. n . x < 0 for every normal.
  bool in_negative_interior(std::span<const Rational> x) const;

  /// Throws Error{OrthantNotContained} when some e_j is not in K.
  static SolvencyCone from_halfspaces(std::size_t d, std::vector<Vec> normals);
  static SolvencyCone from_generators(std::size_t d, std::vector<Vec> rays);
};

PolyhedralCone dual_cone(const PolyhedralCone& k);

/// Spread matrix pi (pi_ii = 1, pi_ij >= 1): K = cone{e_i, pi_ij e_i - e_j}.
SolvencyCone bidask_cone(const std::vector<Vec>& spread);

/// Linear subspace M = span(basis) of R^d with coordinates c -> B c.
class EligibleSubspace {
 public:
  EligibleSubspace() = default;
  /// Throws Error{MalformedDocument} unless the basis has full rank m, 1 <= m <= d.
  EligibleSubspace(std::size_t d, std::vector<Vec> basis);
  static EligibleSubspace coordinates(std::size_t d, const std::vector<std::size_t>& axes);
  static EligibleSubspace full(std::size_t d);

  std::size_t d() const { return d_; }
  std::size_t m() const { return basis_.size(); }
  bool is_full() const { return m() == d_; }
  const std::vector<Vec>& basis() const { return basis_; }

  Vec from_m(std::span<const Rational> coords) const;
  /// Coordinates of u in M, or nullopt if u is not in M.
  std::optional<Vec> to_m(std::span<const Rational> u) const;
  /// a . (B c) as a vector in M-coordinates: (a . b_1, ..., a . b_m).
  Vec pull_back(std::span<const Rational> a) const;
  /// Basis of the orthogonal complement of M in R^d.
  std::vector<Vec> orthogonal_complement() const;
  bool orthogonal_to_m(std::span<const Rational> y) const;

 private:
  std::size_t d_ = 0;
  std::vector<Vec> basis_;
};

/// K & M in M-coordinates.
struct ConeInM {
  PolyhedralCone cone;

  /// Strict system describing -int(K & M) in M-coordinates.
  std::vector<Halfspace> neg_interior() const;
};

/// Throws Error{EmptyInterior} when K & M has empty interior in M.
ConeInM restrict_to_subspace(const SolvencyCone& k, const EligibleSubspace& m);

}  // namespace setrisk
