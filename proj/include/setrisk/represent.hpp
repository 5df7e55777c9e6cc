#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "setrisk/laws.hpp"
#include "setrisk/measures.hpp"

namespace setrisk {

enum class FamilyKind { monetary, star_normalized, coherent, hull };

FamilyKind parse_family_kind(std::string_view name);
std::string_view to_string(FamilyKind kind);

struct FamilyMember {
  AccExpr acceptance;
  /// The generating Z (for edge members, the second endpoint).
  RandomVector anchor;
  /// First endpoint of an edge member (a SegmentHull between two anchors).
  std::optional<RandomVector> edge_from;
};

struct DecompositionFamily {
  FamilyKind kind = FamilyKind::monetary;
  /// Y for hull families.
  std::optional<RandomVector> base;
  std::vector<FamilyMember> members;
  /// The anchors x + v for the vertices v of the value at the position used
  /// to build the family.
  std::vector<RandomVector> vertex_anchors;
  /// The value was empty, so every anchor comes from sampling.
  bool sampled_only = false;

  std::vector<AccExpr> acceptances() const;
};

struct DecomposeOptions {
  /// Accepted positions drawn as additional anchors.
  std::size_t extra_anchors = 0;
  std::uint64_t seed = 0;
};

/// Anchors Z_v = x + v for the vertices v of each piece of R(x), wrapped in
/// the theorem's acceptance-set constructor (DominanceAt, Segment or Ray).
/// Pieces with several vertices also get SegmentHull members between vertex
/// pairs of the piece, which reproduce the bounded edges when m <= 2.
/// Throws Error{EmptyValue} when R(x) is empty and no anchors were sampled.
DecompositionFamily decompose(const Market& market, const MeasureExpr& r, FamilyKind theorem,
                              const RandomVector& x, const DecomposeOptions& options = {});

/// Members SegmentHull(Y, Z_v) = conv(A(Y) u A(Z_v)) for the vertex anchors
/// of R(x). Throws Error{EmptyValue} when R(x) is empty.
DecompositionFamily decompose_hull(const Market& market, const MeasureExpr& r, const RandomVector& x,
                                   const RandomVector& y);

/// Checks that the members' union at x is contained in R(x), and equal to it
/// when the family carries every vertex anchor of R(x). Equality is skipped
/// (with a note) when some piece recedes along a direction outside K & M,
/// since no finite union of anchored cones can then reproduce it.
LawReport reconstruct_check(const Market& market, const MeasureExpr& r, const DecompositionFamily& family,
                            const RandomVector& x);

struct DualCertificate {
  /// d columns, each a probability vector over the scenarios.
  std::vector<Vec> q;
  Vec y;
  /// Portfolio in R^d.
  PortfolioVector excluded_point;
  std::size_t scenario = 0;
};

/// None if u lies in WC(y_vec). Otherwise Q concentrated on the first
/// scenario w with a K+ generator a, a . (y_vec(w) + u) < 0, a not in M-perp.
/// Throws Error{OnlyOrthogonalSeparators} when every separator is orthogonal
/// to M and Error{ShapeMismatch} when u is not eligible.
std::optional<DualCertificate> dual_certificate(const Market& market, const RandomVector& y_vec,
                                                const PortfolioVector& u);

bool validate_certificate(const Market& market, const RandomVector& y_vec, const DualCertificate& cert);

/// Translate(OfAcceptance(Union(members)), y) and its R6 report. Throws
/// Error{NotInIntersection} when some member rejects y.
std::pair<MeasureExpr, LawReport> star_link(const Market& market, const std::vector<AccExpr>& members,
                                            const RandomVector& y, const SampleBudget& budget);

/// Needs M = R^d (Error{SubspaceNotFull}); sampled positions accepted by
/// every member must keep their componentwise sup accepted.
LawReport esssup_bridge(const Market& market, const std::vector<AccExpr>& members, const SampleBudget& budget);

/// Index of a member accepting 0, provided the union measure passes R6.
std::optional<std::size_t> find_star_member(const Market& market, const DecompositionFamily& family,
                                            const SampleBudget& budget);

}  // namespace setrisk
