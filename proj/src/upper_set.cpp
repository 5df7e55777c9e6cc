#include "setrisk/upper_set.hpp"

#include <algorithm>
#include <utility>

#include "setrisk/error.hpp"

namespace setrisk {

PolyhedralCone PolyhedralCone::from_normals(std::size_t dim, std::vector<Vec> normals) {
  PolyhedralCone c;
  c.dim = dim;
  for (auto& n : normals) {
    if (n.size() != dim) throw Error(ErrorKind::DimensionMismatch, "cone normal dimension");
    if (is_zero(n)) continue;
    make_primitive(n);
    if (std::find(c.normals.begin(), c.normals.end(), n) == c.normals.end())
      c.normals.push_back(std::move(n));
  }
  auto gens = cone_generators(c.normals, dim);
  for (const auto& l : gens.lines) {
    c.rays.push_back(l);
    c.rays.push_back(negated(l));
  }
  for (auto& r : gens.rays) c.rays.push_back(std::move(r));
  return c;
}

PolyhedralCone PolyhedralCone::from_rays(std::size_t dim, std::vector<Vec> rays) {
  for (const auto& r : rays) {
    if (r.size() != dim) throw Error(ErrorKind::DimensionMismatch, "cone ray dimension");
  }
  // The H-representation is read off the polar cone's generators.
  auto polar = cone_generators(rays, dim);
  std::vector<Vec> normals;
  for (const auto& l : polar.lines) {
    normals.push_back(l);
    normals.push_back(negated(l));
  }
  for (const auto& r : polar.rays) normals.push_back(r);
  return from_normals(dim, std::move(normals));
}

bool PolyhedralCone::contains(std::span<const Rational> x) const {
  return std::all_of(normals.begin(), normals.end(),
                     [&](const Vec& n) { return sgn(dot(n, x)) >= 0; });
}

bool PolyhedralCone::has_interior() const {
  std::vector<Halfspace> open;
  for (const auto& n : normals) open.push_back({n, Rational(0), true});
  return feasible(open, dim);
}

Polyhedron PolyhedralCone::as_polyhedron() const {
  std::vector<Halfspace> hs;
  for (const auto& n : normals) hs.push_back({n, Rational(0), false});
  return Polyhedron(dim, std::move(hs));
}

Vec PolyhedralCone::interior_point() const {
  Vec p = zeros(dim);
  for (const auto& r : rays) p = add(p, r);
  return p;
}

namespace {

// Full-dimensional pieces whose union is p minus the union of cover (up to
// boundaries). Stops early once nothing is left.
std::vector<Polyhedron> residual_pieces(const Polyhedron& p, std::span<const Polyhedron> cover) {
  std::vector<Polyhedron> residual{p};
  for (const auto& q : cover) {
    std::vector<Polyhedron> next;
    for (const auto& r : residual) {
      // Disjoint split of r minus q: r & h1 & ... & h(j-1) & not hj.
      Polyhedron inside = r;
      for (const auto& h : q.halfspaces()) {
        Polyhedron outside = inside.with(h.complement());
        if (outside.is_full_dimensional()) next.push_back(std::move(outside));
        inside = inside.with(h);
        if (!inside.is_full_dimensional()) break;
      }
    }
    residual = std::move(next);
    if (residual.empty()) break;
  }
  return residual;
}

}  // namespace

bool covered(const Polyhedron& p, std::span<const Polyhedron> cover) {
  return residual_pieces(p, cover).empty();
}

std::optional<Vec> uncovered_point(const Polyhedron& p, std::span<const Polyhedron> cover) {
  for (const auto& r : residual_pieces(p, cover)) {
    if (auto point = find_point(r.halfspaces(), r.dim())) return point;
  }
  return std::nullopt;
}

std::optional<Vec> inclusion_witness(const UpperSet& big, const UpperSet& small) {
  if (big.dim() != small.dim()) throw Error(ErrorKind::DimensionMismatch, "upper sets live in different spaces");
  for (const auto& p : small.pieces()) {
    if (auto point = uncovered_point(p, big.pieces())) return point;
  }
  return std::nullopt;
}

namespace {

bool absorbs(const Polyhedron& p, const PolyhedralCone& cone) {
  return std::all_of(cone.rays.begin(), cone.rays.end(),
                     [&](const Vec& r) { return p.recedes_along(r); });
}

Polyhedron plus_cone(const Polyhedron& p, const PolyhedralCone& cone) {
  auto g = p.generators();
  g.rays.insert(g.rays.end(), cone.rays.begin(), cone.rays.end());
  return Polyhedron::from_generators(p.dim(), g);
}

void check_compatible(const UpperSet& a, const UpperSet& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "upper sets differ in dimension");
}

}  // namespace

std::vector<Polyhedron> canonical_pieces(const PolyhedralCone& recession,
                                         std::vector<Polyhedron> pieces) {
  std::vector<Polyhedron> out;
  for (auto& p : pieces) {
    if (p.dim() != recession.dim) throw Error(ErrorKind::DimensionMismatch, "piece dimension");
    if (p.has_strict()) throw Error(ErrorKind::StrictUnsupported, "upper-set pieces must be closed");
    Polyhedron q = p.canonical();
    if (q.is_empty()) continue;
    if (!absorbs(q, recession)) q = plus_cone(q, recession);
    if (q.is_whole_space()) return {q};
    out.push_back(std::move(q));
  }
  std::sort(out.begin(), out.end(),
            [](const Polyhedron& x, const Polyhedron& y) { return compare(x, y) < 0; });
  out.erase(std::unique(out.begin(), out.end()), out.end());

  std::vector<bool> keep(out.size(), true);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<Polyhedron> others;
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (j != i && keep[j]) others.push_back(out[j]);
    }
    if (!others.empty() && covered(out[i], others)) keep[i] = false;
  }
  std::vector<Polyhedron> kept;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (keep[i]) kept.push_back(std::move(out[i]));
  }
  return kept;
}

UpperSet::UpperSet(PolyhedralCone recession, std::vector<Polyhedron> pieces)
    : recession_(std::move(recession)) {
  if (!recession_.has_interior())
    throw Error(ErrorKind::EmptyInterior, "recession cone has empty interior");
  pieces_ = canonical_pieces(recession_, std::move(pieces));
}

UpperSet UpperSet::empty(const PolyhedralCone& recession) { return UpperSet(recession, {}); }

UpperSet UpperSet::whole(const PolyhedralCone& recession) {
  return UpperSet(recession, {Polyhedron(recession.dim)});
}

UpperSet UpperSet::of_cone(const PolyhedralCone& recession) {
  return UpperSet(recession, {recession.as_polyhedron()});
}

bool UpperSet::contains(std::span<const Rational> point) const {
  if (point.size() != dim()) throw Error(ErrorKind::DimensionMismatch, "point dimension");
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [&](const Polyhedron& p) { return p.contains(point); });
}

bool UpperSet::includes(const UpperSet& other) const {
  check_compatible(*this, other);
  return std::all_of(other.pieces_.begin(), other.pieces_.end(),
                     [&](const Polyhedron& p) { return covered(p, pieces_); });
}

UpperSet UpperSet::translated(std::span<const Rational> shift) const {
  if (shift.size() != dim()) throw Error(ErrorKind::DimensionMismatch, "shift dimension");
  std::vector<Polyhedron> moved;
  for (const auto& p : pieces_) moved.push_back(p.translated(shift));
  return UpperSet(recession_, std::move(moved));
}

UpperSet intersect(const UpperSet& a, const UpperSet& b) {
  check_compatible(a, b);
  std::vector<Polyhedron> out;
  for (const auto& p : a.pieces()) {
    for (const auto& q : b.pieces()) out.push_back(p.intersect(q));
  }
  return UpperSet(a.recession(), std::move(out));
}

UpperSet unite(const UpperSet& a, const UpperSet& b) {
  check_compatible(a, b);
  auto out = a.pieces();
  out.insert(out.end(), b.pieces().begin(), b.pieces().end());
  return UpperSet(a.recession(), std::move(out));
}

UpperSet minkowski_add(const UpperSet& a, const UpperSet& b) {
  check_compatible(a, b);
  std::vector<Polyhedron> out;
  for (const auto& p : a.pieces()) {
    auto gp = p.generators();
    for (const auto& q : b.pieces()) {
      auto gq = q.generators();
      Generators sum;
      for (const auto& v : gp.vertices) {
        for (const auto& w : gq.vertices) sum.vertices.push_back(add(v, w));
      }
      sum.rays = gp.rays;
      sum.rays.insert(sum.rays.end(), gq.rays.begin(), gq.rays.end());
      out.push_back(Polyhedron::from_generators(a.dim(), sum));
    }
  }
  return UpperSet(a.recession(), std::move(out));
}

UpperSet scale(const UpperSet& a, const Rational& t) {
  if (sgn(t) < 0) throw Error(ErrorKind::NegativeScale, "upper sets scale by t >= 0 only");
  if (sgn(t) == 0) return UpperSet::of_cone(a.recession());
  std::vector<Polyhedron> out;
  for (const auto& p : a.pieces()) out.push_back(p.scaled(t));
  return UpperSet(a.recession(), std::move(out));
}

UpperSet combine(SetOp op, const UpperSet& a, const UpperSet& b) {
  switch (op) {
    case SetOp::intersect: return intersect(a, b);
    case SetOp::minkowski_add: return minkowski_add(a, b);
    case SetOp::unite: return unite(a, b);
  }
  return a;
}

UpperSet canonicalize(const UpperSet& a) { return UpperSet(a.recession(), a.pieces()); }

}  // namespace setrisk
