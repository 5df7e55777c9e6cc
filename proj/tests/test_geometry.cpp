#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "setrisk/error.hpp"
#include "setrisk/polyhedron.hpp"
#include "setrisk/upper_set.hpp"

using namespace setrisk;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Halfspace ge(Vec a, Rational b) { return {std::move(a), std::move(b), false}; }

std::vector<Vec> grid2(long lo, long hi, long den) {
  std::vector<Vec> pts;
  for (long i = lo * den; i <= hi * den; ++i)
    for (long j = lo * den; j <= hi * den; ++j) pts.push_back({q(i, den), q(j, den)});
  return pts;
}

// Independent oracle: is there t with (u, t) satisfying every row? Rows are
// bounds on t once u is fixed.
bool exists_last_coordinate(const Polyhedron& p, const Vec& u) {
  std::optional<Rational> lo, hi;
  for (const auto& h : p.halfspaces()) {
    Rational rest = h.offset;
    for (std::size_t j = 0; j < u.size(); ++j) rest -= h.normal[j] * u[j];
    const Rational& c = h.normal.back();
    if (sgn(c) == 0) {
      if (sgn(rest) > 0) return false;
      continue;
    }
    Rational bound = rest / c;
    if (sgn(c) > 0) {
      if (!lo || bound > *lo) lo = bound;
    } else if (!hi || bound < *hi) {
      hi = bound;
    }
  }
  return !lo || !hi || *lo <= *hi;
}

Polyhedron random_polyhedron(std::mt19937_64& rng, std::size_t dim, std::size_t rows) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < rows; ++i) {
    Vec a(dim);
    for (auto& v : a) v = coef(rng);
    hs.push_back(ge(a, q(coef(rng))));
  }
  return Polyhedron(dim, hs);
}

PolyhedralCone orthant2() { return PolyhedralCone::from_normals(2, {{q(1), q(0)}, {q(0), q(1)}}); }
PolyhedralCone halfline() { return PolyhedralCone::from_normals(1, {{q(1)}}); }

UpperSet up2(long a, long b) {
  return UpperSet(orthant2(), {Polyhedron(2, {ge({q(1), q(0)}, q(a)), ge({q(0), q(1)}, q(b))})});
}

UpperSet ray1(Rational b) { return UpperSet(halfline(), {Polyhedron(1, {ge({q(1)}, b)})}); }

}  // namespace

TEST_CASE("feasibility handles strict rows exactly") {
  // u > 0 and u < 0 is infeasible; u >= 0 and u <= 0 is the point 0.
  CHECK_FALSE(feasible({{{q(1)}, q(0), true}, {{q(-1)}, q(0), true}}, 1));
  CHECK(feasible({{{q(1)}, q(0), false}, {{q(-1)}, q(0), false}}, 1));
  // x + y > 1, x < 0, y < 1 is infeasible.
  CHECK_FALSE(feasible({{{q(1), q(1)}, q(1), true}, {{q(-1), q(0)}, q(0), true},
                        {{q(0), q(-1)}, q(-1), true}},
                       2));
  CHECK(Polyhedron(2, {ge({q(1), q(1)}, q(0)), ge({q(-1), q(-1)}, q(0))}).is_empty() == false);
  CHECK_FALSE(Polyhedron(2, {ge({q(1), q(1)}, q(0)), ge({q(-1), q(-1)}, q(0))}).is_full_dimensional());
}

TEST_CASE("eliminate: documented projections") {
  SUBCASE("coupled segment parameter") {
    // {(u, t) : 0 <= t <= 1, u + 2t >= 0}
    Polyhedron p(2, {ge({q(0), q(1)}, q(0)), ge({q(0), q(-1)}, q(-1)), ge({q(1), q(2)}, q(0))});
    std::size_t drop[] = {1};
    auto proj = eliminate(p, drop);
    // Frozen from the grid oracle below: {u >= -2}.
    REQUIRE(proj.halfspaces().size() == 1);
    CHECK(proj.halfspaces()[0] == ge({q(1)}, q(-2)));
    for (long i = -24; i <= 24; ++i) {
      Vec u{q(i, 4)};
      CHECK(proj.contains(u) == exists_last_coordinate(p, u));
    }
  }
  SUBCASE("unconstrained coupling") {
    Polyhedron p(2, {ge({q(1), q(0)}, q(0)), ge({q(0), q(1)}, q(0))});
    std::size_t drop[] = {1};
    auto proj = eliminate(p, drop);
    REQUIRE(proj.halfspaces().size() == 1);
    CHECK(proj.halfspaces()[0] == ge({q(1)}, q(0)));
  }
  SUBCASE("infeasible system") {
    Polyhedron p(2, {ge({q(0), q(1)}, q(1)), ge({q(0), q(-1)}, q(0))});
    std::size_t drop[] = {1};
    CHECK(eliminate(p, drop).is_empty());
  }
  SUBCASE("strictness propagates through combination") {
    // {(u, t) : t > 0, u - t >= 0} projects to {u > 0}.
    Polyhedron p(2, {{{q(0), q(1)}, q(0), true}, ge({q(1), q(-1)}, q(0))});
    std::size_t drop[] = {1};
    auto proj = eliminate(p, drop);
    CHECK_FALSE(proj.contains(Vec{q(0)}));
    CHECK(proj.contains(Vec{q(1, 100)}));
  }
}

TEST_CASE("eliminate: projection soundness on random systems") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    auto p = random_polyhedron(rng, 3, 5);
    std::size_t drop[] = {2};
    auto proj = eliminate(p, drop);
    for (const auto& u : grid2(-3, 3, 2)) CHECK(proj.contains(u) == exists_last_coordinate(p, u));
  }
}

TEST_CASE("convert_rep: documented generators") {
  SUBCASE("orthant") {
    auto g = Polyhedron(2, {ge({q(1), q(0)}, q(0)), ge({q(0), q(1)}, q(0))}).generators();
    REQUIRE(g.vertices.size() == 1);
    CHECK(g.vertices[0] == Vec{q(0), q(0)});
    CHECK(g.rays == std::vector<Vec>{{q(0), q(1)}, {q(1), q(0)}});
  }
  SUBCASE("friction cone x1 + x2 >= 0, x2 >= 0") {
    Polyhedron k(2, {ge({q(1), q(1)}, q(0)), ge({q(0), q(1)}, q(0))});
    auto g = k.generators();
    CHECK(g.rays == std::vector<Vec>{{q(-1), q(1)}, {q(1), q(0)}});
    // Oracle: every grid point of K is a nonnegative combination of the two rays.
    for (const auto& x : grid2(-3, 3, 2)) {
      // x = a (1,0) + b (-1,1)  =>  b = x2, a = x1 + x2.
      bool combo = sgn(x[1]) >= 0 && sgn(x[0] + x[1]) >= 0;
      CHECK(k.contains(x) == combo);
    }
  }
  SUBCASE("half-line") {
    auto g = Polyhedron(1, {ge({q(1)}, q(1))}).generators();
    CHECK(g.vertices == std::vector<Vec>{{q(1)}});
    CHECK(g.rays == std::vector<Vec>{{q(1)}});
  }
  SUBCASE("lineality becomes an opposite ray pair") {
    auto g = Polyhedron(2, {ge({q(1), q(0)}, q(1))}).generators();
    REQUIRE(g.vertices.size() == 1);
    CHECK(g.vertices[0][0] == 1);
    CHECK(g.rays.size() == 3);
  }
  SUBCASE("strict systems are rejected") {
    Polyhedron p(1, {{{q(1)}, q(0), true}});
    CHECK_THROWS_AS(p.generators(), Error);
  }
}

TEST_CASE("convert_rep: H -> V -> H round trip") {
  std::mt19937_64 rng(5);
  int nonempty = 0;
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t dim = 2 + trial % 2;
    auto p = random_polyhedron(rng, dim, 4).canonical();
    if (p.is_empty()) continue;
    ++nonempty;
    auto back = Polyhedron::from_generators(dim, p.generators());
    if (dim == 2) {
      for (const auto& u : grid2(-4, 4, 2)) CHECK(back.contains(u) == p.contains(u));
    }
    if (p.is_full_dimensional()) CHECK(back == p);
  }
  CHECK(nonempty > 20);
}

TEST_CASE("combine: documented examples") {
  auto km = ray1(0);
  CHECK(minkowski_add(ray1(1), km).equals(ray1(1)));
  CHECK(scale(ray1(5), 0).equals(km));
  CHECK(scale(up2(1, 2), 0).equals(UpperSet::of_cone(orthant2())));
  CHECK(unite(ray1(1), ray1(2)).equals(ray1(1)));
  CHECK(unite(ray1(1), ray1(2)).pieces().size() == 1);
  CHECK_THROWS_AS(scale(ray1(1), -1), Error);
  CHECK_THROWS_AS(unite(ray1(1), up2(0, 0)), Error);

  // Convex combination of half-lines {u >= 0} and {u >= 2} at 1/2.
  auto mix = minkowski_add(scale(ray1(0), q(1, 2)), scale(ray1(2), q(1, 2)));
  CHECK(mix.equals(ray1(1)));

  auto both = intersect(up2(2, 1), up2(1, 4));
  CHECK(both.equals(up2(2, 4)));
  CHECK(unite(up2(2, 1), up2(1, 4)).pieces().size() == 2);
}

TEST_CASE("contains: points, subsets, equality") {
  CHECK(ray1(1).contains(Vec{q(1)}));
  CHECK_FALSE(ray1(1).contains(Vec{q(1, 2)}));

  auto two = unite(up2(2, 1), up2(1, 4));
  CHECK(two.includes(up2(2, 4)));
  CHECK_FALSE(two.includes(up2(1, 1)));
  // Sampling oracle for the subset claim.
  for (const auto& u : grid2(-1, 6, 2)) {
    if (up2(2, 4).contains(u)) CHECK(two.contains(u));
  }
  // The midpoint of the two apexes is outside the union.
  CHECK_FALSE(two.contains(Vec{q(3, 2), q(5, 2)}));
  CHECK(unite(ray1(1), ray1(2)).equals(ray1(1)));
  CHECK(UpperSet::empty(halfline()).includes(UpperSet::empty(halfline())));
  CHECK(ray1(3).includes(UpperSet::empty(halfline())));
  CHECK_FALSE(UpperSet::empty(halfline()).includes(ray1(3)));
}

TEST_CASE("union covering needs both pieces") {
  // {u >= (0,0)} is covered by {u1 >= 0, u2 >= 1} union {u1 >= 0, u2 <= ...}?
  // Use a staircase: the orthant at (1,1) lies in the union of the orthants at (1,0) and (0,1).
  auto stair = unite(up2(1, 0), up2(0, 1));
  CHECK(stair.pieces().size() == 2);
  auto at11 = up2(1, 1);
  CHECK(stair.includes(at11));
  CHECK(unite(stair, at11).pieces().size() == 2);
}

TEST_CASE("canonicalize: examples and properties") {
  SUBCASE("redundant halfspace") {
    UpperSet a(halfline(), {Polyhedron(1, {ge({q(1)}, q(0)), ge({q(1)}, q(-1))})});
    REQUIRE(a.pieces().size() == 1);
    CHECK(a.pieces()[0].halfspaces().size() == 1);
    CHECK(a.pieces()[0].halfspaces()[0] == ge({q(1)}, q(0)));
  }
  SUBCASE("infeasible piece is dropped") {
    UpperSet a(halfline(), {Polyhedron(1, {ge({q(1)}, q(1)), ge({q(-1)}, q(0))})});
    CHECK(a.is_empty());
  }
  SUBCASE("absorption is enforced") {
    // A bounded segment in R^2 gets the orthant added.
    UpperSet a(orthant2(), {Polyhedron(2, {ge({q(1), q(0)}, q(1)), ge({q(-1), q(0)}, q(-2)),
                                           ge({q(0), q(1)}, q(3)), ge({q(0), q(-1)}, q(-3))})});
    CHECK(a.equals(up2(1, 3)));
    CHECK(minkowski_add(a, UpperSet::of_cone(orthant2())).equals(a));
  }
  SUBCASE("idempotence and membership preservation on random fixtures") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coord(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Polyhedron> raw;
      for (int k = 0; k < 3; ++k) {
        Vec a{q(coord(rng)), q(coord(rng))};
        Vec b{q(std::abs(coord(rng)) + 1), q(std::abs(coord(rng)))};
        raw.push_back(Polyhedron(2, {ge({q(1), q(0)}, a[0]), ge({q(0), q(1)}, a[1]),
                                     ge(b, dot(b, a) + coord(rng))}));
      }
      UpperSet once(orthant2(), raw);
      UpperSet twice = canonicalize(once);
      CHECK(once.pieces() == twice.pieces());
      for (const auto& u : grid2(-4, 4, 2)) {
        bool raw_member = false;
        for (const auto& p : raw) raw_member = raw_member || p.contains(u);
        if (raw_member) CHECK(once.contains(u));
      }
    }
  }
}

TEST_CASE("polyhedral cones") {
  auto k = PolyhedralCone::from_rays(2, {{q(1), q(0)}, {q(-1), q(1)}});
  CHECK(k.contains(Vec{q(-1), q(1)}));
  CHECK_FALSE(k.contains(Vec{q(-1), q(0)}));
  CHECK(k.has_interior());
  auto line = PolyhedralCone::from_normals(2, {{q(1), q(-1)}, {q(-1), q(1)}});
  CHECK_FALSE(line.has_interior());
  CHECK_THROWS_AS(UpperSet::of_cone(line), Error);
  auto half = PolyhedralCone::from_normals(2, {{q(1), q(1)}});
  CHECK(half.rays.size() == 3);
}

TEST_CASE("find_point") {
  // 0 < x < 1, y >= x + 1/2
  std::vector<Halfspace> rows{{Vec{q(1), q(0)}, q(0), true},
                              {Vec{q(-1), q(0)}, q(-1), true},
                              {Vec{q(-1), q(1)}, q(1, 2), false}};
  auto p = find_point(rows, 2);
  REQUIRE(p);
  for (const auto& h : rows) CHECK(h.satisfied_by(*p));
  rows.push_back({Vec{q(0), q(-1)}, q(-1, 2), false});  // y <= 1/2 forces x <= 0
  CHECK_FALSE(find_point(rows, 2));
  CHECK(find_point({}, 3) == Vec{q(0), q(0), q(0)});

  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Halfspace> hs;
    for (int r = 0; r < 5; ++r) hs.push_back({Vec{q(coef(rng)), q(coef(rng)), q(coef(rng))}, q(coef(rng)), trial % 2 == 0});
    auto point = find_point(hs, 3);
    CHECK(point.has_value() == feasible(hs, 3));
    if (point)
      for (const auto& h : hs) CHECK(h.satisfied_by(*point));
  }
}

TEST_CASE("inclusion_witness") {
  auto orthant = PolyhedralCone::from_normals(2, {{q(1), q(0)}, {q(0), q(1)}});
  auto at = [&](long a, long b) {
    return Polyhedron(2, {{Vec{q(1), q(0)}, q(a), false}, {Vec{q(0), q(1)}, q(b), false}});
  };
  UpperSet two(orthant, {at(2, 1), at(1, 4)});
  UpperSet hull(orthant, {at(1, 1)});
  CHECK_FALSE(inclusion_witness(hull, two));
  auto w = inclusion_witness(two, hull);
  REQUIRE(w);
  CHECK(hull.contains(*w));
  CHECK_FALSE(two.contains(*w));
}
