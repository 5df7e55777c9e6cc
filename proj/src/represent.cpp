#include "setrisk/represent.hpp"

#include <array>

#include "setrisk/error.hpp"

namespace setrisk {

namespace {

constexpr std::array<std::pair<FamilyKind, std::string_view>, 4> kKinds{{
    {FamilyKind::monetary, "monetary"},
    {FamilyKind::star_normalized, "star_normalized"},
    {FamilyKind::coherent, "coherent"},
    {FamilyKind::hull, "hull"},
}};

struct PieceVertices {
  std::vector<Vec> vertices;
};

std::vector<PieceVertices> value_vertices(const UpperSet& value) {
  std::vector<PieceVertices> out;
  for (const auto& piece : value.pieces()) out.push_back({piece.generators().vertices});
  return out;
}

AccExpr wrap(FamilyKind kind, const RandomVector& z) {
  switch (kind) {
    case FamilyKind::star_normalized: return segment(z);
    case FamilyKind::coherent: return ray(z);
    default: return dominance_at(z);
  }
}

void push_anchor(std::vector<RandomVector>& list, const RandomVector& z) {
  if (std::find(list.begin(), list.end(), z) == list.end()) list.push_back(z);
}

LawReport report_for(std::string law) {
  LawReport r;
  r.law = std::move(law);
  r.samples = 1;
  r.budget = 1;
  return r;
}

// Some piece of the value recedes along a direction outside K & M.
bool recedes_beyond(const UpperSet& value) {
  const auto& cone = value.recession();
  for (const auto& piece : value.pieces()) {
    for (const auto& ray : piece.generators().rays) {
      if (!cone.contains(ray)) return true;
    }
  }
  return false;
}

}  // namespace

FamilyKind parse_family_kind(std::string_view name) {
  for (const auto& [kind, label] : kKinds) {
    if (label == name) return kind;
  }
  throw Error(ErrorKind::UnknownLaw, "unknown decomposition theorem: " + std::string(name));
}

std::string_view to_string(FamilyKind kind) {
  for (const auto& [k, label] : kKinds) {
    if (k == kind) return label;
  }
  return "?";
}

std::vector<AccExpr> DecompositionFamily::acceptances() const {
  std::vector<AccExpr> out;
  for (const auto& m : members) out.push_back(m.acceptance);
  return out;
}

DecompositionFamily decompose(const Market& market, const MeasureExpr& r, FamilyKind theorem,
                              const RandomVector& x, const DecomposeOptions& options) {
  if (theorem == FamilyKind::hull)
    throw Error(ErrorKind::UnknownLaw, "hull families need a base position; use decompose_hull");
  DecompositionFamily family;
  family.kind = theorem;
  auto value = eval_measure(market, r, x);
  for (const auto& piece : value_vertices(value)) {
    std::vector<RandomVector> anchors;
    for (const auto& v : piece.vertices) {
      auto z = x + eligible_position(market, v);
      push_anchor(anchors, z);
      push_anchor(family.vertex_anchors, z);
    }
    for (const auto& z : anchors) {
      if (std::none_of(family.members.begin(), family.members.end(),
                       [&](const FamilyMember& m) { return !m.edge_from && m.anchor == z; }))
        family.members.push_back({wrap(theorem, z), z, std::nullopt});
    }
    for (std::size_t i = 0; i < anchors.size(); ++i)
      for (std::size_t j = i + 1; j < anchors.size(); ++j)
        family.members.push_back({segment_hull(anchors[i], anchors[j]), anchors[j], anchors[i]});
  }
  if (options.extra_anchors > 0) {
    SampleBudget budget;
    budget.seed = options.seed;
    Sampler sampler(market, budget);
    auto acceptance = of_measure(r);
    for (std::size_t k = 0; k < options.extra_anchors; ++k) {
      if (auto z = sampler.accepted(acceptance)) family.members.push_back({wrap(theorem, *z), *z, std::nullopt});
    }
  }
  family.sampled_only = value.is_empty();
  if (family.members.empty()) throw Error(ErrorKind::EmptyValue, "R(x) is empty and no anchors were sampled");
  return family;
}

DecompositionFamily decompose_hull(const Market& market, const MeasureExpr& r, const RandomVector& x,
                                   const RandomVector& y) {
  require_shape(market, y);
  DecompositionFamily family;
  family.kind = FamilyKind::hull;
  family.base = y;
  auto value = eval_measure(market, r, x);
  if (value.is_empty()) throw Error(ErrorKind::EmptyValue, "R(x) is empty: no vertex anchors");
  for (const auto& piece : value_vertices(value)) {
    for (const auto& v : piece.vertices) {
      auto z = x + eligible_position(market, v);
      if (std::find(family.vertex_anchors.begin(), family.vertex_anchors.end(), z) != family.vertex_anchors.end())
        continue;
      family.vertex_anchors.push_back(z);
      family.members.push_back({segment_hull(y, z), z, y});
    }
  }
  return family;
}

LawReport reconstruct_check(const Market& market, const MeasureExpr& r, const DecompositionFamily& family,
                            const RandomVector& x) {
  auto value = eval_measure(market, r, x);
  std::vector<Polyhedron> pieces;
  for (const auto& m : family.members) {
    auto part = eval_acceptance(market, m.acceptance, x);
    pieces.insert(pieces.end(), part.pieces().begin(), part.pieces().end());
  }
  UpperSet rebuilt(market.recession(), std::move(pieces));

  auto report = report_for("reconstruct");
  if (auto p = inclusion_witness(value, rebuilt)) {
    Witness w;
    w.law = "reconstruct_sound";
    w.relation = "⋃ R_member(x) ⊆ R(x)";
    w.x = x;
    w.point = p;
    report.pass = false;
    report.witness = std::move(w);
    return report;
  }
  auto vertices = value_vertices(value);
  bool all_anchors = true;
  for (const auto& piece : vertices) {
    for (const auto& v : piece.vertices) {
      auto z = x + eligible_position(market, v);
      all_anchors = all_anchors && std::any_of(family.members.begin(), family.members.end(),
                                               [&](const FamilyMember& m) { return m.anchor == z; });
    }
  }
  if (!all_anchors) {
    report.note = "containment only: family lacks some vertex anchor of R(x)";
    return report;
  }
  if (recedes_beyond(value)) {
    report.note = "containment only: R(x) recedes along directions outside K&M";
    return report;
  }
  if (auto p = inclusion_witness(rebuilt, value)) {
    Witness w;
    w.law = "reconstruct_exact";
    w.relation = "R(x) ⊆ ⋃ R_member(x)";
    w.x = x;
    w.point = p;
    report.pass = false;
    report.witness = std::move(w);
  }
  return report;
}

std::optional<DualCertificate> dual_certificate(const Market& market, const RandomVector& y_vec,
                                                const PortfolioVector& u) {
  require_shape(market, y_vec);
  if (u.size() != market.d() || !market.subspace.to_m(u))
    throw Error(ErrorKind::ShapeMismatch, "certificate portfolio is not eligible (not in M)");
  bool separated = false;
  for (std::size_t w = 0; w < y_vec.n(); ++w) {
    auto row = add(y_vec.row(w), u);
    for (const auto& a : market.cone.dual.rays) {
      if (dot(a, row) >= 0) continue;
      separated = true;
      if (is_zero(market.subspace.pull_back(a))) continue;
      DualCertificate cert;
      Vec delta = zeros(y_vec.n());
      delta[w] = 1;
      cert.q.assign(market.d(), delta);
      cert.y = a;
      cert.excluded_point = u;
      cert.scenario = w;
      return cert;
    }
  }
  if (separated)
    throw Error(ErrorKind::OnlyOrthogonalSeparators,
                "every separating dual generator is orthogonal to M; exclusion cannot be certified");
  return std::nullopt;
}

bool validate_certificate(const Market& market, const RandomVector& y_vec, const DualCertificate& cert) {
  const std::size_t n = market.n();
  const std::size_t d = market.d();
  if (y_vec.n() != n || y_vec.d() != d) return false;
  if (cert.q.size() != d || cert.y.size() != d || cert.excluded_point.size() != d) return false;
  for (const auto& column : cert.q) {
    if (column.size() != n) return false;
    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (column[i] < 0) return false;
      total += column[i];
    }
    if (total != 1) return false;
  }
  // diag(y) dQ/dP, scenario by scenario, must lie in K+.
  for (std::size_t i = 0; i < n; ++i) {
    Vec density(d);
    for (std::size_t j = 0; j < d; ++j) density[j] = cert.y[j] * cert.q[j][i] / market.space.prob(i);
    if (!market.cone.dual.contains(density)) return false;
  }
  if (!market.cone.dual.contains(cert.y) || market.subspace.orthogonal_to_m(cert.y)) return false;
  if (!market.subspace.to_m(cert.excluded_point)) return false;
  // E^Q[-y_vec], component j under Q_j.
  Vec expectation(d);
  for (std::size_t j = 0; j < d; ++j) {
    Rational e = 0;
    for (std::size_t i = 0; i < n; ++i) e -= cert.q[j][i] * y_vec.at(i, j);
    expectation[j] = e;
  }
  return dot(cert.y, sub(cert.excluded_point, expectation)) < 0;
}

std::pair<MeasureExpr, LawReport> star_link(const Market& market, const std::vector<AccExpr>& members,
                                            const RandomVector& y, const SampleBudget& budget) {
  require_shape(market, y);
  if (members.empty()) throw Error(ErrorKind::EmptyBaseSet, "star link needs at least one member");
  for (const auto& m : members) {
    if (!accepts(market, m, y))
      throw Error(ErrorKind::NotInIntersection, "Y is rejected by member " + m.describe());
  }
  auto measure = translate(of_acceptance(acc_union(members)), y);
  auto report = check_measure_law(market, measure, MeasureLaw::R6, budget);
  return {measure, report};
}

LawReport esssup_bridge(const Market& market, const std::vector<AccExpr>& members, const SampleBudget& budget) {
  if (!market.subspace.is_full())
    throw Error(ErrorKind::SubspaceNotFull, "the ess-sup bridge needs every asset eligible (M = R^d)");
  if (members.empty()) throw Error(ErrorKind::EmptyBaseSet, "the ess-sup bridge needs at least one member");
  return check_esssup(market, acc_intersection(members), budget);
}

std::optional<std::size_t> find_star_member(const Market& market, const DecompositionFamily& family,
                                            const SampleBudget& budget) {
  if (family.members.empty()) return std::nullopt;
  auto union_measure = of_acceptance(acc_union(family.acceptances()));
  if (!check_measure_law(market, union_measure, MeasureLaw::R6, budget).pass) return std::nullopt;
  RandomVector zero(market.n(), market.d());
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    if (accepts(market, family.members[i].acceptance, zero)) return i;
  }
  return std::nullopt;
}

}  // namespace setrisk
