#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "setrisk/scenario.hpp"
#include "setrisk/upper_set.hpp"

namespace setrisk {

enum class VaRKind { weak, strong };

class AccExpr;

/// Expression tree for a set-valued risk measure. Cheap to copy (shared,
/// immutable nodes).
class MeasureExpr {
 public:
  struct WorstCase {};
  struct VaR {
    VaRKind kind;
    Rational level;
  };
  struct OfAcceptance {
    std::shared_ptr<const AccExpr> acceptance;
  };
  /// inner(x + y)
  struct Translate {
    std::shared_ptr<const MeasureExpr> inner;
    RandomVector y;
  };
  /// inner(x) - u, with u an eligible portfolio in R^d.
  struct Shift {
    std::shared_ptr<const MeasureExpr> inner;
    PortfolioVector u;
  };
  struct Union {
    std::vector<MeasureExpr> items;
  };
  struct Intersection {
    std::vector<MeasureExpr> items;
  };
  /// mu * left + (1 - mu) * right (Minkowski).
  struct ConvexCombo {
    Rational mu;
    std::shared_ptr<const MeasureExpr> left;
    std::shared_ptr<const MeasureExpr> right;
  };

  using Node = std::variant<WorstCase, VaR, OfAcceptance, Translate, Shift, Union, Intersection,
                            ConvexCombo>;

  MeasureExpr() : node_(std::make_shared<Node>(WorstCase{})) {}
  explicit MeasureExpr(Node node) : node_(std::make_shared<Node>(std::move(node))) {}

  const Node& node() const { return *node_; }
  std::string describe() const;

 private:
  std::shared_ptr<const Node> node_;
};

/// Expression tree for an acceptance set.
class AccExpr {
 public:
  /// {X : X - z in L(K)}
  struct DominanceAt {
    RandomVector z;
  };
  /// conv({0, z} + L(K)) = {X : X - t z in L(K) for some t in [0, 1]}
  struct Segment {
    RandomVector z;
  };
  /// {X : X - t z in L(K) for some t >= 0}
  struct Ray {
    RandomVector z;
  };
  /// conv(A(y) u A(z)) = {X : X - t z - (1 - t) y in L(K), t in [0, 1]}
  struct SegmentHull {
    RandomVector y;
    RandomVector z;
  };
  struct OfMeasure {
    MeasureExpr measure;
  };
  struct Intersection {
    std::vector<AccExpr> items;
  };
  struct Union {
    std::vector<AccExpr> items;
  };

  using Node = std::variant<DominanceAt, Segment, Ray, SegmentHull, OfMeasure, Intersection, Union>;

  explicit AccExpr(Node node) : node_(std::make_shared<Node>(std::move(node))) {}

  const Node& node() const { return *node_; }
  std::string describe() const;

 private:
  std::shared_ptr<const Node> node_;
};

// Builders.
MeasureExpr worst_case_measure();
MeasureExpr var_measure(VaRKind kind, Rational level);
MeasureExpr of_acceptance(AccExpr a);
MeasureExpr translate(MeasureExpr inner, RandomVector y);
MeasureExpr shift(MeasureExpr inner, PortfolioVector u);
MeasureExpr union_of(std::vector<MeasureExpr> items);
MeasureExpr intersection_of(std::vector<MeasureExpr> items);
MeasureExpr convex_combo(Rational mu, MeasureExpr left, MeasureExpr right);

AccExpr dominance_at(RandomVector z);
AccExpr segment(RandomVector z);
AccExpr ray(RandomVector z);
AccExpr segment_hull(RandomVector y, RandomVector z);
AccExpr of_measure(MeasureExpr r);
AccExpr acc_intersection(std::vector<AccExpr> items);
AccExpr acc_union(std::vector<AccExpr> items);

/// Rational or one of the infinities; +inf iff the underlying set is empty.
struct ExtendedScalar {
  enum class Kind { finite, minus_infinity, plus_infinity };
  Kind kind = Kind::finite;
  Rational value;

  std::string str() const;
};

/// {c : x(w) + Bc in K for every scenario w}, one convex piece.
UpperSet worst_case(const Market& market, const RandomVector& x);

/// Union over inclusion-minimal scenario sets T with P(not T) <= level of the
/// per-scenario good sets intersected over T. Throws Error{BadLevel}.
UpperSet value_at_risk(const Market& market, VaRKind kind, const Rational& level,
                       const RandomVector& x);

/// R_A(x) = {c : x + Bc in A}.
UpperSet eval_acceptance(const Market& market, const AccExpr& a, const RandomVector& x);
UpperSet eval_measure(const Market& market, const MeasureExpr& r, const RandomVector& x);

/// x in A.
bool accepts(const Market& market, const AccExpr& a, const RandomVector& x);

/// inf R(x) for d = m = 1. Throws Error{DimensionNotOne}.
ExtendedScalar scalarize_1d(const Market& market, const MeasureExpr& r, const RandomVector& x);

}  // namespace setrisk
