#include "setrisk/documents.hpp"

#include "setrisk/error.hpp"

namespace setrisk::io {

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::MalformedDocument, what); }

/// The single key of a one-entry object.
std::pair<std::string, const json*> tagged(const json& j, std::string_view what) {
  if (!j.is_object() || j.size() != 1) malformed(std::string(what) + " must be an object with exactly one key");
  return {j.begin().key(), &j.begin().value()};
}

std::vector<MeasureExpr> measure_list(const json& j) {
  if (!j.is_array() || j.empty()) malformed("expected a nonempty array of measures");
  std::vector<MeasureExpr> out;
  for (const auto& item : j) out.push_back(measure_from_json(item));
  return out;
}

std::vector<AccExpr> acceptance_list(const json& j) {
  if (!j.is_array() || j.empty()) malformed("expected a nonempty array of acceptance sets");
  std::vector<AccExpr> out;
  for (const auto& item : j) out.push_back(acceptance_from_json(item));
  return out;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

json optional_position(const std::optional<RandomVector>& x) { return x ? position_to_json(*x) : json(nullptr); }

std::optional<RandomVector> read_optional_position(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return position_from_json(j.at(key));
}

std::string_view acceptance_kind(const AccExpr& a) {
  return std::visit(overloaded{
                        [](const AccExpr::DominanceAt&) { return "dominance"; },
                        [](const AccExpr::Segment&) { return "segment"; },
                        [](const AccExpr::Ray&) { return "ray"; },
                        [](const AccExpr::SegmentHull&) { return "segment_hull"; },
                        [](const AccExpr::OfMeasure&) { return "of_measure"; },
                        [](const AccExpr::Intersection&) { return "intersection"; },
                        [](const AccExpr::Union&) { return "union"; },
                    },
                    a.node());
}

}  // namespace

MeasureExpr measure_from_shorthand(std::string_view text) {
  if (text == "wc") return worst_case_measure();
  for (auto [prefix, kind] : {std::pair{std::string_view("var-strong:"), VaRKind::strong},
                              std::pair{std::string_view("var-weak:"), VaRKind::weak}}) {
    if (text.starts_with(prefix)) return var_measure(kind, parse_rational(text.substr(prefix.size())));
  }
  malformed("unknown measure shorthand: " + std::string(text));
}

MeasureExpr measure_from_json(const json& j) {
  if (j.is_string()) return measure_from_shorthand(j.get<std::string>());
  auto [key, body] = tagged(j, "measure");
  const json& b = *body;
  if (key == "wc") return worst_case_measure();
  if (key == "var") {
    auto kind = field(b, "kind").get<std::string>();
    if (kind != "strong" && kind != "weak") malformed("V@R kind must be strong or weak");
    return var_measure(kind == "strong" ? VaRKind::strong : VaRKind::weak, rational_from_json(field(b, "level")));
  }
  if (key == "of_acceptance") return of_acceptance(acceptance_from_json(b));
  if (key == "translate") return translate(measure_from_json(field(b, "inner")), position_from_json(field(b, "y")));
  if (key == "shift") return shift(measure_from_json(field(b, "inner")), rational_list(field(b, "u")));
  if (key == "union") return union_of(measure_list(b));
  if (key == "intersection") return intersection_of(measure_list(b));
  if (key == "combo")
    return convex_combo(rational_from_json(field(b, "mu")), measure_from_json(field(b, "left")),
                        measure_from_json(field(b, "right")));
  malformed("unknown measure node: " + key);
}

json measure_to_json(const MeasureExpr& r) {
  auto list = [](const std::vector<MeasureExpr>& items) {
    json out = json::array();
    for (const auto& item : items) out.push_back(measure_to_json(item));
    return out;
  };
  return std::visit(
      overloaded{
          [](const MeasureExpr::WorstCase&) { return json{{"wc", json::object()}}; },
          [](const MeasureExpr::VaR& v) {
            return json{{"var", {{"kind", v.kind == VaRKind::strong ? "strong" : "weak"}, {"level", to_json(v.level)}}}};
          },
          [](const MeasureExpr::OfAcceptance& o) { return json{{"of_acceptance", acceptance_to_json(*o.acceptance)}}; },
          [](const MeasureExpr::Translate& t) {
            return json{{"translate", {{"inner", measure_to_json(*t.inner)}, {"y", position_to_json(t.y)}}}};
          },
          [](const MeasureExpr::Shift& s) {
            return json{{"shift", {{"inner", measure_to_json(*s.inner)}, {"u", to_json(s.u)}}}};
          },
          [&](const MeasureExpr::Union& u) { return json{{"union", list(u.items)}}; },
          [&](const MeasureExpr::Intersection& i) { return json{{"intersection", list(i.items)}}; },
          [](const MeasureExpr::ConvexCombo& c) {
            return json{{"combo",
                         {{"mu", to_json(c.mu)}, {"left", measure_to_json(*c.left)}, {"right", measure_to_json(*c.right)}}}};
          },
      },
      r.node());
}

AccExpr acceptance_from_json(const json& j) {
  auto [key, body] = tagged(j, "acceptance set");
  const json& b = *body;
  if (key == "dominance") return dominance_at(position_from_json(b));
  if (key == "segment") return segment(position_from_json(b));
  if (key == "ray") return ray(position_from_json(b));
  if (key == "segment_hull") return segment_hull(position_from_json(field(b, "y")), position_from_json(field(b, "z")));
  if (key == "of_measure") return of_measure(measure_from_json(b));
  if (key == "union") return acc_union(acceptance_list(b));
  if (key == "intersection") return acc_intersection(acceptance_list(b));
  malformed("unknown acceptance node: " + key);
}

json acceptance_to_json(const AccExpr& a) {
  auto list = [](const std::vector<AccExpr>& items) {
    json out = json::array();
    for (const auto& item : items) out.push_back(acceptance_to_json(item));
    return out;
  };
  return std::visit(
      overloaded{
          [](const AccExpr::DominanceAt& d) { return json{{"dominance", position_to_json(d.z)}}; },
          [](const AccExpr::Segment& s) { return json{{"segment", position_to_json(s.z)}}; },
          [](const AccExpr::Ray& r) { return json{{"ray", position_to_json(r.z)}}; },
          [](const AccExpr::SegmentHull& h) {
            return json{{"segment_hull", {{"y", position_to_json(h.y)}, {"z", position_to_json(h.z)}}}};
          },
          [](const AccExpr::OfMeasure& o) { return json{{"of_measure", measure_to_json(o.measure)}}; },
          [&](const AccExpr::Intersection& i) { return json{{"intersection", list(i.items)}}; },
          [&](const AccExpr::Union& u) { return json{{"union", list(u.items)}}; },
      },
      a.node());
}

json witness_to_json(const Witness& w) {
  json out{{"law", w.law}, {"relation", w.relation}};
  out["x"] = optional_position(w.x);
  out["y"] = optional_position(w.y);
  out["k"] = optional_position(w.k);
  out["u"] = w.u ? to_json(*w.u) : json(nullptr);
  out["t"] = w.t ? to_json(*w.t) : json(nullptr);
  out["t2"] = w.t2 ? to_json(*w.t2) : json(nullptr);
  out["point"] = w.point ? to_json(*w.point) : json(nullptr);
  return out;
}

Witness witness_from_json(const json& j) {
  Witness w;
  w.law = field(j, "law").get<std::string>();
  w.relation = j.value("relation", std::string());
  w.x = read_optional_position(j, "x");
  w.y = read_optional_position(j, "y");
  w.k = read_optional_position(j, "k");
  auto scalar = [&](const char* key) -> std::optional<Rational> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return rational_from_json(j.at(key));
  };
  auto vec = [&](const char* key) -> std::optional<Vec> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return rational_list(j.at(key));
  };
  w.u = vec("u");
  w.t = scalar("t");
  w.t2 = scalar("t2");
  w.point = vec("point");
  return w;
}

json report_to_json(const LawReport& report) {
  json out{{"law", report.law},
           {"verdict", report.pass ? "pass" : "fail"},
           {"samples", report.samples},
           {"budget", report.budget},
           {"seed", report.seed}};
  out["witness"] = report.witness ? witness_to_json(*report.witness) : json(nullptr);
  if (!report.note.empty()) out["note"] = report.note;
  return out;
}

LawReport report_from_json(const json& j) {
  LawReport r;
  r.law = field(j, "law").get<std::string>();
  auto verdict = field(j, "verdict").get<std::string>();
  if (verdict != "pass" && verdict != "fail") malformed("verdict must be pass or fail");
  r.pass = verdict == "pass";
  r.samples = field(j, "samples").get<std::size_t>();
  r.budget = field(j, "budget").get<std::size_t>();
  r.seed = field(j, "seed").get<std::uint64_t>();
  if (j.contains("witness") && !j.at("witness").is_null()) r.witness = witness_from_json(j.at("witness"));
  r.note = j.value("note", std::string());
  return r;
}

json family_to_json(const Market& market, const DecompositionFamily& family, const RandomVector& x,
                    const LawReport& reconstruction) {
  json members = json::array();
  for (const auto& m : family.members) {
    json entry{{"kind", acceptance_kind(m.acceptance)},
               {"anchor", position_to_json(m.anchor)},
               {"value", upper_set_to_json(eval_acceptance(market, m.acceptance, x))}};
    if (m.edge_from) entry["edge_from"] = position_to_json(*m.edge_from);
    members.push_back(std::move(entry));
  }
  json out{{"theorem", to_string(family.kind)},
           {"members", members},
           {"sampled_only", family.sampled_only},
           {"reconstruction", report_to_json(reconstruction)}};
  if (family.base) out["base"] = position_to_json(*family.base);
  return out;
}

json certificate_to_json(const DualCertificate& cert, bool valid) {
  json q = json::array();
  for (const auto& column : cert.q) q.push_back(to_json(column));
  return json{{"scenario", cert.scenario},
              {"q", q},
              {"y", to_json(cert.y)},
              {"excluded_point", to_json(cert.excluded_point)},
              {"valid", valid}};
}

}  // namespace setrisk::io
