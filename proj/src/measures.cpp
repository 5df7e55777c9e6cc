#include "setrisk/measures.hpp"

#include <sstream>

#include "setrisk/error.hpp"

namespace setrisk {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string rows_str(const RandomVector& x) {
  std::string out = "[";
  for (std::size_t i = 0; i < x.n(); ++i) {
    if (i) out += ", ";
    out += to_string(x.row(i));
  }
  return out + "]";
}

}  // namespace

std::string MeasureExpr::describe() const {
  return std::visit(
      overloaded{
          [](const WorstCase&) { return std::string("WC"); },
          [](const VaR& v) {
            return std::string(v.kind == VaRKind::weak ? "VaRWeak(" : "VaRStrong(") +
                   to_string(v.level) + ")";
          },
          [](const OfAcceptance& a) { return "R[" + a.acceptance->describe() + "]"; },
          [](const Translate& t) { return "Translate(" + t.inner->describe() + ", " + rows_str(t.y) + ")"; },
          [](const Shift& s) { return "Shift(" + s.inner->describe() + ", " + to_string(s.u) + ")"; },
          [](const Union& u) {
            std::string out = "Union(";
            for (std::size_t i = 0; i < u.items.size(); ++i) out += (i ? ", " : "") + u.items[i].describe();
            return out + ")";
          },
          [](const Intersection& u) {
            std::string out = "Intersection(";
            for (std::size_t i = 0; i < u.items.size(); ++i) out += (i ? ", " : "") + u.items[i].describe();
            return out + ")";
          },
          [](const ConvexCombo& c) {
            return "Combo(" + to_string(c.mu) + ", " + c.left->describe() + ", " + c.right->describe() + ")";
          },
      },
      node());
}

std::string AccExpr::describe() const {
  return std::visit(
      overloaded{
          [](const DominanceAt& n) { return "A" + rows_str(n.z); },
          [](const Segment& n) { return "Segment" + rows_str(n.z); },
          [](const Ray& n) { return "Ray" + rows_str(n.z); },
          [](const SegmentHull& n) { return "Hull(" + rows_str(n.y) + ", " + rows_str(n.z) + ")"; },
          [](const OfMeasure& n) { return "A[" + n.measure.describe() + "]"; },
          [](const Intersection& n) {
            std::string out = "AccIntersection(";
            for (std::size_t i = 0; i < n.items.size(); ++i) out += (i ? ", " : "") + n.items[i].describe();
            return out + ")";
          },
          [](const Union& n) {
            std::string out = "AccUnion(";
            for (std::size_t i = 0; i < n.items.size(); ++i) out += (i ? ", " : "") + n.items[i].describe();
            return out + ")";
          },
      },
      node());
}

MeasureExpr worst_case_measure() { return MeasureExpr(MeasureExpr::WorstCase{}); }

MeasureExpr var_measure(VaRKind kind, Rational level) {
  if (level < 0 || level > 1) throw Error(ErrorKind::BadLevel, "V@R level must lie in [0, 1]");
  return MeasureExpr(MeasureExpr::VaR{kind, std::move(level)});
}

MeasureExpr of_acceptance(AccExpr a) {
  return MeasureExpr(MeasureExpr::OfAcceptance{std::make_shared<const AccExpr>(std::move(a))});
}

MeasureExpr translate(MeasureExpr inner, RandomVector y) {
  return MeasureExpr(MeasureExpr::Translate{std::make_shared<const MeasureExpr>(std::move(inner)), std::move(y)});
}

MeasureExpr shift(MeasureExpr inner, PortfolioVector u) {
  return MeasureExpr(MeasureExpr::Shift{std::make_shared<const MeasureExpr>(std::move(inner)), std::move(u)});
}

MeasureExpr union_of(std::vector<MeasureExpr> items) { return MeasureExpr(MeasureExpr::Union{std::move(items)}); }

MeasureExpr intersection_of(std::vector<MeasureExpr> items) {
  return MeasureExpr(MeasureExpr::Intersection{std::move(items)});
}

MeasureExpr convex_combo(Rational mu, MeasureExpr left, MeasureExpr right) {
  if (mu < 0 || mu > 1) throw Error(ErrorKind::BadLevel, "combination weight must lie in [0, 1]");
  return MeasureExpr(MeasureExpr::ConvexCombo{std::move(mu), std::make_shared<const MeasureExpr>(std::move(left)),
                                              std::make_shared<const MeasureExpr>(std::move(right))});
}

AccExpr dominance_at(RandomVector z) { return AccExpr(AccExpr::DominanceAt{std::move(z)}); }
AccExpr segment(RandomVector z) { return AccExpr(AccExpr::Segment{std::move(z)}); }
AccExpr ray(RandomVector z) { return AccExpr(AccExpr::Ray{std::move(z)}); }
AccExpr segment_hull(RandomVector y, RandomVector z) {
  return AccExpr(AccExpr::SegmentHull{std::move(y), std::move(z)});
}
AccExpr of_measure(MeasureExpr r) { return AccExpr(AccExpr::OfMeasure{std::move(r)}); }
AccExpr acc_intersection(std::vector<AccExpr> items) { return AccExpr(AccExpr::Intersection{std::move(items)}); }
AccExpr acc_union(std::vector<AccExpr> items) { return AccExpr(AccExpr::Union{std::move(items)}); }

std::string ExtendedScalar::str() const {
  switch (kind) {
    case Kind::minus_infinity: return "-inf";
    case Kind::plus_infinity: return "+inf";
    case Kind::finite: break;
  }
  return to_string(value);
}

namespace {

// {c : n . (x_row + B c) >= 0} for one normal n of K.
Halfspace scenario_row(const Market& market, const Vec& normal, std::span<const Rational> x_row) {
  return {market.subspace.pull_back(normal), -dot(normal, x_row), false};
}

// {c : x_row + B c in K}
std::vector<Halfspace> solvent_rows(const Market& market, std::span<const Rational> x_row) {
  std::vector<Halfspace> rows;
  for (const auto& n : market.cone.cone.normals) rows.push_back(scenario_row(market, n, x_row));
  return rows;
}

// Inclusion-minimal scenario sets T (bitmasks) with P(complement of T) <= level.
std::vector<std::uint32_t> minimal_scenario_sets(const ScenarioSpace& space, const Rational& level) {
  const std::size_t n = space.n();
  if (n > 20) throw Error(ErrorKind::ShapeMismatch, "V@R enumeration supports at most 20 scenarios");
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  auto valid = [&](std::uint32_t t) {
    Rational missing = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(t & (1u << i))) missing += space.prob(i);
    }
    return missing <= level;
  };
  std::vector<std::uint32_t> out;
  for (std::uint32_t t = 0; t <= full; ++t) {
    if (!valid(t)) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < n && minimal; ++i) {
      if ((t & (1u << i)) && valid(t & ~(1u << i))) minimal = false;
    }
    if (minimal) out.push_back(t);
  }
  return out;
}

UpperSet single_piece(const Market& market, std::vector<Halfspace> rows) {
  return UpperSet(market.recession(), {Polyhedron(market.m(), std::move(rows))});
}

// The t-parametrized acceptance sets: x + Bc - t w - base in L(K) with t in
// [0, 1] (or t >= 0 when unbounded). Variables are (c, t).
Polyhedron parametrized_system(const Market& market, const RandomVector& offset,
                               const RandomVector& direction, bool bounded) {
  const std::size_t m = market.m();
  std::vector<Halfspace> rows;
  for (std::size_t i = 0; i < offset.n(); ++i) {
    for (const auto& n : market.cone.cone.normals) {
      Vec a = market.subspace.pull_back(n);
      a.push_back(-dot(n, direction.row(i)));
      rows.push_back({std::move(a), -dot(n, offset.row(i)), false});
    }
  }
  Vec t_lo = zeros(m + 1);
  t_lo[m] = 1;
  rows.push_back({t_lo, Rational(0), false});
  if (bounded) {
    Vec t_hi = zeros(m + 1);
    t_hi[m] = -1;
    rows.push_back({t_hi, Rational(-1), false});
  }
  return Polyhedron(m + 1, std::move(rows));
}

UpperSet eliminate_parameter(const Market& market, const Polyhedron& system) {
  std::size_t drop[] = {market.m()};
  return UpperSet(market.recession(), {eliminate(system, drop)});
}

// Feasibility of the parametrized system at c = 0.
bool parameter_feasible(const Market& market, const Polyhedron& system) {
  std::vector<Halfspace> rows;
  for (const auto& h : system.halfspaces()) rows.push_back({Vec{h.normal[market.m()]}, h.offset, h.strict});
  return feasible(rows, 1);
}

struct Parametrized {
  RandomVector offset;
  RandomVector direction;
  bool bounded;
};

std::optional<Parametrized> as_parametrized(const AccExpr& a, const RandomVector& x) {
  if (auto* s = std::get_if<AccExpr::Segment>(&a.node())) return Parametrized{x, s->z, true};
  if (auto* r = std::get_if<AccExpr::Ray>(&a.node())) return Parametrized{x, r->z, false};
  if (auto* h = std::get_if<AccExpr::SegmentHull>(&a.node()))
    return Parametrized{x - h->y, h->z - h->y, true};
  return std::nullopt;
}

void require_position(const Market& market, const RandomVector& x) { require_shape(market, x); }

}  // namespace

UpperSet worst_case(const Market& market, const RandomVector& x) {
  require_position(market, x);
  std::vector<Halfspace> rows;
  for (std::size_t i = 0; i < x.n(); ++i) {
    auto r = solvent_rows(market, x.row(i));
    rows.insert(rows.end(), r.begin(), r.end());
  }
  return single_piece(market, std::move(rows));
}

UpperSet value_at_risk(const Market& market, VaRKind kind, const Rational& level, const RandomVector& x) {
  if (level < 0 || level > 1) throw Error(ErrorKind::BadLevel, "V@R level must lie in [0, 1]");
  require_position(market, x);
  const auto& normals = market.cone.cone.normals;
  std::vector<Polyhedron> pieces;
  for (auto t : minimal_scenario_sets(market.space, level)) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < x.n(); ++i) {
      if (t & (1u << i)) members.push_back(i);
    }
    if (kind == VaRKind::strong) {
      std::vector<Halfspace> rows;
      for (auto i : members) {
        auto r = solvent_rows(market, x.row(i));
        rows.insert(rows.end(), r.begin(), r.end());
      }
      pieces.emplace_back(market.m(), std::move(rows));
      continue;
    }
    // Weak: scenario i is good when some normal of K is nonnegative at x_i + Bc
    // (the closed complement of -int K); expand the product of these unions.
    std::vector<std::size_t> choice(members.size(), 0);
    while (true) {
      std::vector<Halfspace> rows;
      for (std::size_t k = 0; k < members.size(); ++k)
        rows.push_back(scenario_row(market, normals[choice[k]], x.row(members[k])));
      pieces.emplace_back(market.m(), std::move(rows));
      std::size_t k = 0;
      while (k < choice.size() && ++choice[k] == normals.size()) choice[k++] = 0;
      if (k == choice.size()) break;
    }
  }
  return UpperSet(market.recession(), std::move(pieces));
}

UpperSet eval_acceptance(const Market& market, const AccExpr& a, const RandomVector& x) {
  require_position(market, x);
  if (auto p = as_parametrized(a, x)) {
    require_position(market, p->direction);
    return eliminate_parameter(market, parametrized_system(market, p->offset, p->direction, p->bounded));
  }
  return std::visit(
      overloaded{
          [&](const AccExpr::DominanceAt& n) { return worst_case(market, x - n.z); },
          // R_{A_R} = R for every measure with cash additivity, which holds for
          // every expression this library builds.
          [&](const AccExpr::OfMeasure& n) { return eval_measure(market, n.measure, x); },
          [&](const AccExpr::Intersection& n) {
            UpperSet acc = UpperSet::whole(market.recession());
            for (const auto& item : n.items) acc = intersect(acc, eval_acceptance(market, item, x));
            return acc;
          },
          [&](const AccExpr::Union& n) {
            std::vector<Polyhedron> pieces;
            for (const auto& item : n.items) {
              auto v = eval_acceptance(market, item, x);
              pieces.insert(pieces.end(), v.pieces().begin(), v.pieces().end());
            }
            return UpperSet(market.recession(), std::move(pieces));
          },
          [&](const auto&) -> UpperSet {
            throw Error(ErrorKind::MembershipOnly, "acceptance node cannot be evaluated as a set");
          },
      },
      a.node());
}

bool accepts(const Market& market, const AccExpr& a, const RandomVector& x) {
  require_position(market, x);
  if (auto p = as_parametrized(a, x)) {
    require_position(market, p->direction);
    return parameter_feasible(market, parametrized_system(market, p->offset, p->direction, p->bounded));
  }
  return std::visit(
      overloaded{
          [&](const AccExpr::DominanceAt& n) { return dominates(market, x, n.z); },
          [&](const AccExpr::OfMeasure& n) {
            return eval_measure(market, n.measure, x).contains(zeros(market.m()));
          },
          [&](const AccExpr::Intersection& n) {
            for (const auto& item : n.items) {
              if (!accepts(market, item, x)) return false;
            }
            return true;
          },
          [&](const AccExpr::Union& n) {
            for (const auto& item : n.items) {
              if (accepts(market, item, x)) return true;
            }
            return false;
          },
          [&](const auto&) -> bool { return false; },
      },
      a.node());
}

UpperSet eval_measure(const Market& market, const MeasureExpr& r, const RandomVector& x) {
  require_position(market, x);
  return std::visit(
      overloaded{
          [&](const MeasureExpr::WorstCase&) { return worst_case(market, x); },
          [&](const MeasureExpr::VaR& v) { return value_at_risk(market, v.kind, v.level, x); },
          [&](const MeasureExpr::OfAcceptance& n) { return eval_acceptance(market, *n.acceptance, x); },
          [&](const MeasureExpr::Translate& n) { return eval_measure(market, *n.inner, x + n.y); },
          [&](const MeasureExpr::Shift& n) {
            auto c = market.subspace.to_m(n.u);
            if (!c) throw Error(ErrorKind::ShapeMismatch, "shift portfolio is not eligible (not in M)");
            return eval_measure(market, *n.inner, x).translated(negated(*c));
          },
          [&](const MeasureExpr::Union& n) {
            std::vector<Polyhedron> pieces;
            for (const auto& item : n.items) {
              auto v = eval_measure(market, item, x);
              pieces.insert(pieces.end(), v.pieces().begin(), v.pieces().end());
            }
            return UpperSet(market.recession(), std::move(pieces));
          },
          [&](const MeasureExpr::Intersection& n) {
            UpperSet acc = UpperSet::whole(market.recession());
            for (const auto& item : n.items) acc = intersect(acc, eval_measure(market, item, x));
            return acc;
          },
          [&](const MeasureExpr::ConvexCombo& n) {
            return minkowski_add(scale(eval_measure(market, *n.left, x), n.mu),
                                 scale(eval_measure(market, *n.right, x), 1 - n.mu));
          },
      },
      r.node());
}

ExtendedScalar scalarize_1d(const Market& market, const MeasureExpr& r, const RandomVector& x) {
  if (market.d() != 1 || market.m() != 1)
    throw Error(ErrorKind::DimensionNotOne, "scalarization needs d = m = 1");
  auto value = eval_measure(market, r, x);
  if (value.is_empty()) return {ExtendedScalar::Kind::plus_infinity, 0};
  if (value.is_whole()) return {ExtendedScalar::Kind::minus_infinity, 0};
  std::optional<Rational> best;
  for (const auto& piece : value.pieces()) {
    // An absorbing piece on the line is {c >= b}: a single row with normal +1.
    for (const auto& h : piece.halfspaces()) {
      if (sgn(h.normal[0]) > 0) {
        Rational b = h.offset / h.normal[0];
        if (!best || b < *best) best = b;
      }
    }
  }
  if (!best) return {ExtendedScalar::Kind::minus_infinity, 0};
  return {ExtendedScalar::Kind::finite, *best};
}

}  // namespace setrisk
