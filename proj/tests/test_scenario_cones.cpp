#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "setrisk/cones.hpp"
#include "setrisk/error.hpp"
#include "setrisk/fixtures.hpp"
#include "setrisk/scenario.hpp"
#include "support.hpp"

using namespace setrisk;
using setrisk::testing::grid;
using setrisk::testing::q;

namespace {

ErrorKind error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::MalformedDocument;
}

const char* kMktA =
    R"({ "d": 2, "probs": ["1/2","1/2"], "cone": { "halfspaces": [[1,1],[0,1]] }, "subspace": { "coords": [0] } })";

}  // namespace

TEST_CASE("load_market: documented fixtures") {
  auto a = load_market(kMktA);
  CHECK(a.n() == 2);
  CHECK(a.d() == 2);
  CHECK(a.m() == 1);
  // K & M = {u1 >= 0} on the first axis.
  CHECK(a.recession().normals == std::vector<Vec>{{q(1)}});

  auto b = load_market(
      R"({ "d": 2, "probs": ["1/2","1/4","1/4"], "cone": { "halfspaces": [[1,0],[0,1]] }, "subspace": { "coords": [0,1] } })");
  CHECK(b.m() == 2);
  CHECK(b.recession().normals.size() == 2);

  auto basis = load_market(
      R"({ "d": 2, "probs": [1], "cone": { "halfspaces": [[1,0],[0,1]] }, "subspace": { "basis": [["1","1"]] } })");
  CHECK(basis.m() == 1);

  auto bidask = load_market(
      R"({ "d": 2, "probs": [1], "cone": { "bidask": [[1,2],[2,1]] }, "subspace": { "coords": [0,1] } })");
  CHECK(bidask.cone.contains(Vec{q(2), q(-1)}));
}

TEST_CASE("load_market: errors") {
  CHECK(error_of([] {
          load_market(R"({ "d": 2, "probs": ["1/2","1/3"], "cone": { "halfspaces": [[1,0],[0,1]] }, "subspace": { "coords": [0] } })");
        }) == ErrorKind::ProbabilitySum);
  CHECK(error_of([] {
          load_market(R"({ "d": 2, "probs": ["3/2","-1/2"], "cone": { "halfspaces": [[1,0],[0,1]] }, "subspace": { "coords": [0] } })");
        }) == ErrorKind::ProbabilitySum);
  CHECK(error_of([] {
          load_market(R"({ "d": 2, "probs": [1], "cone": { "halfspaces": [[1,-1],[0,1]] }, "subspace": { "coords": [0] } })");
        }) == ErrorKind::OrthantNotContained);
  // K = R^2_+ and M = span{(1,-1)}: K & M = {0}.
  CHECK(error_of([] {
          load_market(R"({ "d": 2, "probs": [1], "cone": { "halfspaces": [[1,0],[0,1]] }, "subspace": { "basis": [[1,-1]] } })");
        }) == ErrorKind::EmptyInterior);
  CHECK(error_of([] { load_market("{ not json"); }) == ErrorKind::MalformedDocument);
  CHECK(error_of([] { load_market(R"({ "d": 2, "probs": ["1/2","x"] })"); }) == ErrorKind::MalformedDocument);
  CHECK(error_of([] {
          load_market(R"({ "d": 2, "probs": [1], "cone": { "halfspaces": [[1,0],[0,1]] }, "subspace": { "basis": [[1,0],[2,0]] } })");
        }) == ErrorKind::MalformedDocument);
}

TEST_CASE("load_position") {
  auto x = load_position(R"({ "rows": [["-1","0"],["0","2"]] })");
  CHECK(x == fixtures::x1());
  CHECK(error_of([] { load_position(R"({ "rows": [["1"],["0","2"]] })"); }) == ErrorKind::ShapeMismatch);
}

TEST_CASE("dominates") {
  auto a = fixtures::mkt_a();
  auto b = fixtures::mkt_b();
  RandomVector zero_b(3, 2);
  auto pos_b = RandomVector({{q(1), q(0)}, {q(0), q(0)}, {q(2), q(3)}});
  CHECK(dominates(b, pos_b, zero_b));
  CHECK_FALSE(dominates(b, zero_b, pos_b));

  // Single-row differences evaluated in both scenarios of mkt-a.
  RandomVector zero_a(2, 2);
  CHECK(dominates(a, RandomVector({{q(-1), q(1)}, {q(-1), q(1)}}), zero_a));
  CHECK_FALSE(dominates(a, RandomVector({{q(-1), q(0)}, {q(-1), q(0)}}), zero_a));
  CHECK_THROWS_AS(dominates(a, zero_b, zero_b), Error);
}

TEST_CASE("dominates: order properties on random positions") {
  std::mt19937_64 rng(17);
  auto a = fixtures::mkt_a();
  for (int trial = 0; trial < 200; ++trial) {
    auto x = testing::random_position(rng, 2, 2, 2, 1);
    auto y = testing::random_position(rng, 2, 2, 2, 1);
    auto z = testing::random_position(rng, 2, 2, 2, 1);
    CHECK(dominates(a, x, x));
    if (dominates(a, x, y) && dominates(a, y, z)) CHECK(dominates(a, x, z));
    if (dominates(a, x, y) && dominates(a, y, x)) {
      for (std::size_t i = 0; i < 2; ++i) {
        auto diff = sub(x.row(i), y.row(i));
        CHECK(a.cone.contains(diff));
        CHECK(a.cone.contains(negated(diff)));
      }
    }
  }
}

TEST_CASE("translate_and_scale and componentwise_sup") {
  auto x = RandomVector({{q(-1), q(0)}, {q(0), q(2)}});
  CHECK(translate_and_scale(x, 1, zeros(2)) == x);
  CHECK(translate_and_scale(x, 0, zeros(2)) == RandomVector(2, 2));
  CHECK(translate_and_scale(x, 2, Vec{q(1), q(0)}) == RandomVector({{q(-1), q(0)}, {q(1), q(4)}}));
  CHECK_THROWS_AS(translate_and_scale(x, 1, Vec{q(1)}), Error);

  CHECK(componentwise_sup(RandomVector({{q(-1), q(3)}, {q(2), q(0)}})) == Vec{q(2), q(3)});
  CHECK(componentwise_sup(RandomVector({{q(5), q(-7)}, {q(5), q(-7)}})) == Vec{q(5), q(-7)});

  auto a = fixtures::mkt_a();
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    auto y = testing::random_position(rng, 2, 2);
    auto w = componentwise_sup(y);
    CHECK(dominates(a, RandomVector::constant(2, w), y));
    Vec u{q(trial % 5, 3), q(-(trial % 7), 2)};
    CHECK(translate_and_scale(translate_and_scale(y, 1, u), 1, negated(u)) == y);
  }
}

TEST_CASE("dual_cone") {
  auto orthant = PolyhedralCone::from_normals(2, {{q(1), q(0)}, {q(0), q(1)}});
  auto d = dual_cone(orthant);
  for (const auto& y : grid(2, -2, 2, 2)) CHECK(d.contains(y) == orthant.contains(y));

  auto k = fixtures::mkt_a().cone;
  // Oracle: y in K+ iff y . g >= 0 for the generators (1,0), (-1,1) of K.
  auto expected = PolyhedralCone::from_rays(2, {{q(1), q(1)}, {q(0), q(1)}});
  for (const auto& y : grid(2, -3, 3, 2)) {
    bool oracle = dot(y, Vec{q(1), q(0)}) >= 0 && dot(y, Vec{q(-1), q(1)}) >= 0;
    CHECK(k.dual.contains(y) == oracle);
    CHECK(expected.contains(y) == oracle);
  }
  auto back = dual_cone(k.dual);
  for (const auto& y : grid(2, -3, 3, 2)) CHECK(back.contains(y) == k.cone.contains(y));
  for (const auto& y : k.dual.rays)
    for (const auto& g : k.cone.rays) CHECK(dot(y, g) >= 0);
}

TEST_CASE("restrict_to_subspace") {
  CHECK(fixtures::mkt_a().cone_in_m.cone.normals == std::vector<Vec>{{q(1)}});
  auto b = fixtures::mkt_b().cone_in_m;
  for (const auto& c : grid(2, -2, 2, 1)) CHECK(b.cone.contains(c) == (c[0] >= 0 && c[1] >= 0));
  auto orthant = SolvencyCone::from_halfspaces(2, {{q(1), q(0)}, {q(0), q(1)}});
  CHECK(error_of([&] { restrict_to_subspace(orthant, EligibleSubspace(2, {{q(1), q(-1)}})); }) ==
        ErrorKind::EmptyInterior);

  // neg_interior never meets K & M.
  for (const auto& market : {fixtures::mkt_a(), fixtures::mkt_b()}) {
    auto rows = market.cone_in_m.neg_interior();
    for (const auto& n : market.recession().normals) rows.push_back({n, q(0), false});
    CHECK_FALSE(feasible(rows, market.m()));
  }
}

TEST_CASE("bidask_cone") {
  SUBCASE("no frictions gives the halfspace x1 + x2 >= 0") {
    auto k = bidask_cone({{q(1), q(1)}, {q(1), q(1)}});
    for (const auto& y : grid(2, -3, 3, 2)) CHECK(k.contains(y) == (y[0] + y[1] >= 0));
  }
  SUBCASE("spread 2") {
    auto k = bidask_cone({{q(1), q(2)}, {q(2), q(1)}});
    // Oracle: y = a (2,-1) + b (-1,2) with a, b >= 0 (the extreme generators).
    for (const auto& y : grid(2, -3, 3, 2)) {
      Rational a = (2 * y[0] + y[1]) / 3;
      Rational b = (y[0] + 2 * y[1]) / 3;
      CHECK(k.contains(y) == (a >= 0 && b >= 0));
    }
  }
  SUBCASE("orthant always inside; larger spreads shrink the cone") {
    for (long s = 1; s <= 4; ++s) {
      auto k = bidask_cone({{q(1), q(s)}, {q(s + 1), q(1)}});
      CHECK(k.contains(Vec{q(1), q(0)}));
      CHECK(k.contains(Vec{q(0), q(1)}));
      auto wider = bidask_cone({{q(1), q(s + 1)}, {q(s + 2), q(1)}});
      for (const auto& g : wider.cone.rays) CHECK(k.contains(g));
    }
  }
  SUBCASE("invalid spreads") {
    CHECK(error_of([] { bidask_cone({{q(1), q(1, 2)}, {q(1), q(1)}}); }) == ErrorKind::InvalidSpread);
    CHECK(error_of([] { bidask_cone({{q(2), q(1)}, {q(1), q(1)}}); }) == ErrorKind::InvalidSpread);
  }
}

TEST_CASE("eligible subspace coordinates and complement") {
  EligibleSubspace m(3, {{q(1), q(1), q(0)}, {q(0), q(0), q(1)}});
  auto c = m.to_m(Vec{q(2), q(2), q(5)});
  REQUIRE(c);
  CHECK(*c == Vec{q(2), q(5)});
  CHECK_FALSE(m.to_m(Vec{q(1), q(0), q(0)}));
  auto perp = m.orthogonal_complement();
  REQUIRE(perp.size() == 1);
  CHECK(m.orthogonal_to_m(perp[0]));
  CHECK(m.from_m(Vec{q(1), q(-1)}) == Vec{q(1), q(1), q(-1)});
}
