#pragma once

#include <optional>
#include <string_view>

#include "setrisk/scenario.hpp"

namespace setrisk::fixtures {

/// d = 2, P = (1/2, 1/2), K = {x1 + x2 >= 0, x2 >= 0}, M = first axis.
Market mkt_a();
/// Frictionless: d = 2, K = R^2_+, M = R^2, P = (1/2, 1/4, 1/4).
Market mkt_b();
/// d = m = 1, K = R_+, P uniform over n scenarios.
Market line(std::size_t n);

/// [(-1, 0), (0, 2)] on mkt-a; its worst-case value is {u1 >= 1}.
RandomVector x1();
/// [(-1, -1), (-2, 0), (0, -4)] on mkt-b; strong V@R at 1/4 has two pieces.
RandomVector var_position();

std::optional<Market> market_by_name(std::string_view name);
std::optional<RandomVector> position_by_name(std::string_view name);

}  // namespace setrisk::fixtures
