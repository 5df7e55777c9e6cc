#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "setrisk/rational.hpp"
#include "setrisk/scenario.hpp"
#include "setrisk/upper_set.hpp"

namespace setrisk::io {

using nlohmann::json;

/// Accepts "p/q" strings and JSON integers.
Rational rational_from_json(const json& j);
json to_json(const Rational& r);
Vec rational_list(const json& j);
std::vector<Vec> rational_matrix(const json& j);
json to_json(std::span<const Rational> v);

/// {"rows": [[...]]} or a bare row array.
RandomVector position_from_json(const json& j);
json position_to_json(const RandomVector& x);

/// {"pieces": [{"halfspaces": [[a..., b]], "vertices": [...], "rays": [...]}]}
json upper_set_to_json(const UpperSet& set);
/// Reads the halfspace rows back; vertices and rays are ignored.
UpperSet upper_set_from_json(const json& j, const PolyhedralCone& recession);

/// One line per generator: piece,kind,c1[,c2]; m <= 2 only.
std::string vertex_csv(const UpperSet& set);
UpperSet upper_set_from_vertex_csv(std::string_view csv, const PolyhedralCone& recession);

std::string read_file(const std::string& path);

}  // namespace setrisk::io
