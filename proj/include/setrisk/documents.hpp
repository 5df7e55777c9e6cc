#pragma once

#include <string_view>

#include "setrisk/io.hpp"
#include "setrisk/laws.hpp"
#include "setrisk/measures.hpp"
#include "setrisk/represent.hpp"

namespace setrisk::io {

/// Shorthands: "wc", "var-strong:<level>", "var-weak:<level>".
MeasureExpr measure_from_shorthand(std::string_view text);

/// A shorthand string, or one of
///   {"wc": {}}
///   {"var": {"kind": "strong"|"weak", "level": "1/4"}}
///   {"of_acceptance": <acceptance>}
///   {"translate": {"inner": <measure>, "y": <position>}}
///   {"shift": {"inner": <measure>, "u": [<rational>...]}}
///   {"union": [<measure>...]}, {"intersection": [<measure>...]}
///   {"combo": {"mu": <rational>, "left": <measure>, "right": <measure>}}
MeasureExpr measure_from_json(const json& j);
json measure_to_json(const MeasureExpr& r);

/// One of
///   {"dominance": <position>}, {"segment": <position>}, {"ray": <position>}
///   {"segment_hull": {"y": <position>, "z": <position>}}
///   {"of_measure": <measure>}
///   {"union": [<acceptance>...]}, {"intersection": [<acceptance>...]}
AccExpr acceptance_from_json(const json& j);
json acceptance_to_json(const AccExpr& a);

json witness_to_json(const Witness& w);
Witness witness_from_json(const json& j);
json report_to_json(const LawReport& report);
LawReport report_from_json(const json& j);

/// Members with their values at x, plus the reconstruction report.
json family_to_json(const Market& market, const DecompositionFamily& family, const RandomVector& x,
                    const LawReport& reconstruction);

json certificate_to_json(const DualCertificate& cert, bool valid);

}  // namespace setrisk::io
