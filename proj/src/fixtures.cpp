#include "setrisk/fixtures.hpp"

namespace setrisk::fixtures {

namespace {
Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}
}  // namespace

Market mkt_a() {
  return make_market(ScenarioSpace({q(1, 2), q(1, 2)}),
                     SolvencyCone::from_halfspaces(2, {{q(1), q(1)}, {q(0), q(1)}}),
                     EligibleSubspace::coordinates(2, {0}));
}

Market mkt_b() {
  return make_market(ScenarioSpace({q(1, 2), q(1, 4), q(1, 4)}),
                     SolvencyCone::from_halfspaces(2, {{q(1), q(0)}, {q(0), q(1)}}),
                     EligibleSubspace::full(2));
}

Market line(std::size_t n) {
  return make_market(ScenarioSpace(Vec(n, q(1, static_cast<long>(n)))),
                     SolvencyCone::from_halfspaces(1, {{q(1)}}), EligibleSubspace::full(1));
}

RandomVector x1() { return RandomVector({{q(-1), q(0)}, {q(0), q(2)}}); }

RandomVector var_position() { return RandomVector({{q(-1), q(-1)}, {q(-2), q(0)}, {q(0), q(-4)}}); }

std::optional<Market> market_by_name(std::string_view name) {
  if (name == "mkt-a") return mkt_a();
  if (name == "mkt-b") return mkt_b();
  return std::nullopt;
}

std::optional<RandomVector> position_by_name(std::string_view name) {
  if (name == "x1") return x1();
  if (name == "xv" || name == "var-position") return var_position();
  return std::nullopt;
}

}  // namespace setrisk::fixtures
