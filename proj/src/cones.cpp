#include "setrisk/cones.hpp"

#include <algorithm>

#include "setrisk/error.hpp"
#include "setrisk/linalg.hpp"

namespace setrisk {

bool SolvencyCone::in_negative_interior(std::span<const Rational> x) const {
  return std::all_of(cone.normals.begin(), cone.normals.end(),
                     [&](const Vec& n) { return sgn(dot(n, x)) < 0; });
}

namespace {

void require_orthant(const PolyhedralCone& k) {
  for (std::size_t j = 0; j < k.dim; ++j) {
    Vec e = zeros(k.dim);
    e[j] = 1;
    if (!k.contains(e))
      throw Error(ErrorKind::OrthantNotContained,
                  "solvency cone must contain the nonnegative orthant (fails at e" +
                      std::to_string(j + 1) + ")");
  }
}

}  // namespace

PolyhedralCone dual_cone(const PolyhedralCone& k) { return PolyhedralCone::from_rays(k.dim, k.normals); }

SolvencyCone SolvencyCone::from_halfspaces(std::size_t d, std::vector<Vec> normals) {
  for (const auto& n : normals) {
    if (n.size() != d) throw Error(ErrorKind::MalformedDocument, "halfspace row has wrong length");
  }
  SolvencyCone k;
  k.cone = PolyhedralCone::from_normals(d, std::move(normals));
  require_orthant(k.cone);
  k.dual = dual_cone(k.cone);
  return k;
}

SolvencyCone SolvencyCone::from_generators(std::size_t d, std::vector<Vec> rays) {
  SolvencyCone k;
  k.cone = PolyhedralCone::from_rays(d, std::move(rays));
  require_orthant(k.cone);
  k.dual = dual_cone(k.cone);
  return k;
}

SolvencyCone bidask_cone(const std::vector<Vec>& spread) {
  const std::size_t d = spread.size();
  if (d == 0) throw Error(ErrorKind::InvalidSpread, "empty spread matrix");
  std::vector<Vec> rays;
  for (std::size_t i = 0; i < d; ++i) {
    if (spread[i].size() != d) throw Error(ErrorKind::InvalidSpread, "spread matrix must be square");
    if (spread[i][i] != 1) throw Error(ErrorKind::InvalidSpread, "spread diagonal must be 1");
    Vec e = zeros(d);
    e[i] = 1;
    rays.push_back(e);
    for (std::size_t j = 0; j < d; ++j) {
      if (j == i) continue;
      if (spread[i][j] < 1) throw Error(ErrorKind::InvalidSpread, "spread entries must be >= 1");
      Vec g = zeros(d);
      g[i] = spread[i][j];
      g[j] = -1;
      rays.push_back(std::move(g));
    }
  }
  return SolvencyCone::from_generators(d, std::move(rays));
}

EligibleSubspace::EligibleSubspace(std::size_t d, std::vector<Vec> basis)
    : d_(d), basis_(std::move(basis)) {
  if (basis_.empty() || basis_.size() > d_)
    throw Error(ErrorKind::MalformedDocument, "subspace dimension must satisfy 1 <= m <= d");
  for (const auto& b : basis_) {
    if (b.size() != d_) throw Error(ErrorKind::MalformedDocument, "subspace basis vector length");
  }
  if (linalg::rank(basis_, d_) != basis_.size())
    throw Error(ErrorKind::MalformedDocument, "subspace basis is linearly dependent");
}

EligibleSubspace EligibleSubspace::coordinates(std::size_t d, const std::vector<std::size_t>& axes) {
  std::vector<Vec> basis;
  for (auto j : axes) {
    if (j >= d) throw Error(ErrorKind::MalformedDocument, "subspace axis out of range");
    Vec e = zeros(d);
    e[j] = 1;
    basis.push_back(std::move(e));
  }
  return EligibleSubspace(d, std::move(basis));
}

EligibleSubspace EligibleSubspace::full(std::size_t d) {
  std::vector<std::size_t> axes(d);
  for (std::size_t j = 0; j < d; ++j) axes[j] = j;
  return coordinates(d, axes);
}

Vec EligibleSubspace::from_m(std::span<const Rational> coords) const {
  if (coords.size() != m()) throw Error(ErrorKind::DimensionMismatch, "M-coordinate length");
  Vec u = zeros(d_);
  for (std::size_t k = 0; k < m(); ++k) {
    for (std::size_t j = 0; j < d_; ++j) u[j] += coords[k] * basis_[k][j];
  }
  return u;
}

std::optional<Vec> EligibleSubspace::to_m(std::span<const Rational> u) const {
  if (u.size() != d_) throw Error(ErrorKind::DimensionMismatch, "portfolio length");
  auto cols = linalg::transpose(basis_, d_);
  return linalg::solve(cols, Vec(u.begin(), u.end()), m());
}

Vec EligibleSubspace::pull_back(std::span<const Rational> a) const {
  Vec out(m());
  for (std::size_t k = 0; k < m(); ++k) out[k] = dot(a, basis_[k]);
  return out;
}

std::vector<Vec> EligibleSubspace::orthogonal_complement() const {
  return linalg::nullspace(basis_, d_);
}

bool EligibleSubspace::orthogonal_to_m(std::span<const Rational> y) const {
  return is_zero(pull_back(y));
}

std::vector<Halfspace> ConeInM::neg_interior() const {
  std::vector<Halfspace> out;
  for (const auto& n : cone.normals) out.push_back({negated(n), Rational(0), true});
  return out;
}

ConeInM restrict_to_subspace(const SolvencyCone& k, const EligibleSubspace& m) {
  if (k.dim() != m.d()) throw Error(ErrorKind::DimensionMismatch, "cone and subspace dimensions");
  std::vector<Vec> normals;
  for (const auto& n : k.cone.normals) normals.push_back(m.pull_back(n));
  ConeInM out{PolyhedralCone::from_normals(m.m(), std::move(normals))};
  if (!out.cone.has_interior())
    throw Error(ErrorKind::EmptyInterior, "K & M has empty interior in M");
  return out;
}

}  // namespace setrisk
