#include "setrisk/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "setrisk/documents.hpp"
#include "setrisk/error.hpp"
#include "setrisk/fixtures.hpp"
#include "setrisk/laws.hpp"
#include "setrisk/represent.hpp"

namespace setrisk::cli {

namespace {

using io::json;

[[noreturn]] void bad_input(const std::string& what) { throw Error(ErrorKind::MalformedDocument, what); }

bool looks_inline(const std::string& text) {
  auto first = text.find_first_not_of(" \t\n");
  return first != std::string::npos && (text[first] == '{' || text[first] == '[' || text[first] == '"');
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad_input(what + ": " + e.what());
  }
}

/// Inline JSON or the contents of a file.
json load_document(const std::string& ref, const std::string& what) {
  if (looks_inline(ref)) return parse_json(ref, what);
  if (!std::filesystem::exists(ref)) bad_input(what + " \"" + ref + "\" is neither a fixture nor a file");
  return parse_json(io::read_file(ref), what + " " + ref);
}

Market load_market_ref(const std::string& ref) {
  if (auto m = fixtures::market_by_name(ref)) return *m;
  if (looks_inline(ref)) return load_market(ref);
  if (!std::filesystem::exists(ref)) bad_input("market \"" + ref + "\" is neither a fixture nor a file");
  return load_market(io::read_file(ref));
}

RandomVector load_position_ref(const Market& market, const std::string& ref) {
  RandomVector x;
  if (auto fixture = fixtures::position_by_name(ref)) x = *fixture;
  else x = io::position_from_json(load_document(ref, "position"));
  require_shape(market, x);
  return x;
}

MeasureExpr load_measure_ref(const std::string& ref) {
  if (!looks_inline(ref) && !std::filesystem::exists(ref)) return io::measure_from_shorthand(ref);
  return io::measure_from_json(load_document(ref, "measure"));
}

AccExpr load_acceptance_ref(const std::string& ref) { return io::acceptance_from_json(load_document(ref, "acceptance set")); }

Vec load_vector_ref(const std::string& ref) {
  if (looks_inline(ref) || std::filesystem::exists(ref)) return io::rational_list(load_document(ref, "portfolio"));
  // Comma-separated rationals.
  Vec out;
  std::stringstream ss(ref);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(parse_rational(cell));
  return out;
}

const RandomVector& single_position(const std::vector<RandomVector>& xs, const char* command) {
  if (xs.size() != 1) bad_input(std::string(command) + " needs exactly one --position");
  return xs.front();
}

SampleBudget budget_of(const RunConfig& c) {
  SampleBudget b;
  b.count = c.budget;
  b.seed = c.seed;
  return b;
}

// Text rendering.

std::string term(const Rational& coef, std::size_t k) {
  std::string var = "u" + std::to_string(k + 1);
  if (coef == 1) return var;
  if (coef == -1) return "-" + var;
  return to_string(coef) + "*" + var;
}

std::string halfspace_text(const Halfspace& h) {
  std::string lhs;
  for (std::size_t k = 0; k < h.normal.size(); ++k) {
    if (h.normal[k] == 0) continue;
    auto t = term(h.normal[k], k);
    if (lhs.empty()) lhs = t;
    else if (t.front() == '-') lhs += " - " + t.substr(1);
    else lhs += " + " + t;
  }
  if (lhs.empty()) lhs = "0";
  return lhs + " >= " + to_string(h.offset);
}

std::string position_text(const RandomVector& x) {
  std::string out = "[";
  for (std::size_t i = 0; i < x.n(); ++i) out += (i ? ", " : "") + to_string(x.row(i));
  return out + "]";
}

void write_upper_set(std::ostream& out, const UpperSet& set, const std::string& indent) {
  if (set.is_empty()) {
    out << indent << "empty\n";
    return;
  }
  for (std::size_t i = 0; i < set.pieces().size(); ++i) {
    const auto& piece = set.pieces()[i];
    out << indent << "piece " << i << ":";
    if (piece.is_whole_space()) out << " whole space";
    for (const auto& h : piece.halfspaces()) out << " {" << halfspace_text(h) << "}";
    out << '\n';
    auto g = piece.generators();
    for (const auto& v : g.vertices) out << indent << "  vertex " << to_string(v) << '\n';
    for (const auto& r : g.rays) out << indent << "  ray " << to_string(r) << '\n';
  }
}

void write_witness(std::ostream& out, const Witness& w, const std::string& indent) {
  out << indent << "witness " << w.law << ": " << w.relation << '\n';
  if (w.x) out << indent << "  x = " << position_text(*w.x) << '\n';
  if (w.y) out << indent << "  y = " << position_text(*w.y) << '\n';
  if (w.k) out << indent << "  k = " << position_text(*w.k) << '\n';
  if (w.u) out << indent << "  u = " << to_string(*w.u) << '\n';
  if (w.t) out << indent << "  t = " << to_string(*w.t) << '\n';
  if (w.t2) out << indent << "  t2 = " << to_string(*w.t2) << '\n';
  if (w.point) out << indent << "  point = " << to_string(*w.point) << '\n';
}

void write_report(std::ostream& out, const LawReport& r, const std::string& indent = "") {
  out << indent << r.law << ": " << (r.pass ? "pass" : "fail") << " (samples " << r.samples << "/" << r.budget
      << ", seed " << r.seed << ")\n";
  if (!r.note.empty()) out << indent << "  note: " << r.note << '\n';
  if (r.witness) write_witness(out, *r.witness, indent + "  ");
}

void emit_structured(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

bool structured(const RunConfig& c) { return c.format == "structured"; }

// Commands.

int cmd_eval(const RunConfig& c, std::ostream& out) {
  auto market = load_market_ref(c.market);
  std::vector<RandomVector> xs;
  for (const auto& p : c.positions) xs.push_back(load_position_ref(market, p));
  const auto& x = single_position(xs, "eval");
  if (c.measure.empty() == c.acceptance.empty()) bad_input("eval needs exactly one of --measure and --acceptance");

  UpperSet value = c.measure.empty() ? eval_acceptance(market, load_acceptance_ref(c.acceptance), x)
                                     : eval_measure(market, load_measure_ref(c.measure), x);
  if (c.format == "csv-vertices") {
    out << io::vertex_csv(value);
  } else if (structured(c)) {
    json doc{{"command", "eval"}, {"value", io::upper_set_to_json(value)}, {"seed", c.seed}, {"budget", c.budget}};
    if (c.measure.empty()) doc["acceptance"] = io::acceptance_to_json(load_acceptance_ref(c.acceptance));
    else doc["measure"] = io::measure_to_json(load_measure_ref(c.measure));
    emit_structured(out, doc);
  } else {
    out << (c.measure.empty() ? load_acceptance_ref(c.acceptance).describe() : load_measure_ref(c.measure).describe())
        << " at " << position_text(x) << ":\n";
    write_upper_set(out, value, "  ");
  }
  return kPass;
}

LawReport check_one(const Market& market, const Subject& subject, const std::string& law,
                    const SampleBudget& budget) {
  auto as_measure = [&] {
    if (auto r = std::get_if<MeasureExpr>(&subject)) return *r;
    return of_acceptance(std::get<AccExpr>(subject));
  };
  auto as_acceptance = [&] {
    if (auto a = std::get_if<AccExpr>(&subject)) return *a;
    return of_measure(std::get<MeasureExpr>(subject));
  };
  for (auto m : all_measure_laws()) {
    if (to_string(m) == law) return check_measure_law(market, as_measure(), m, budget);
  }
  for (auto a : all_acceptance_laws()) {
    if (to_string(a) == law) return check_acceptance_law(market, as_acceptance(), a, budget);
  }
  try {
    return check_correspondence(market, subject, parse_correspondence(law), budget);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnknownDirection) throw;
  }
  throw Error(ErrorKind::UnknownLaw, "unknown law: " + law);
}

int cmd_check(const RunConfig& c, std::ostream& out) {
  auto market = load_market_ref(c.market);
  if (c.measure.empty() == c.acceptance.empty()) bad_input("check needs exactly one of --measure and --acceptance");
  Subject subject = c.measure.empty() ? Subject(load_acceptance_ref(c.acceptance)) : Subject(load_measure_ref(c.measure));
  std::vector<std::string> laws = c.laws;
  if (laws.empty()) {
    if (c.measure.empty())
      for (auto a : all_acceptance_laws()) laws.emplace_back(to_string(a));
    else
      for (auto m : all_measure_laws()) laws.emplace_back(to_string(m));
  }
  auto budget = budget_of(c);
  std::vector<LawReport> reports;
  for (const auto& law : laws) reports.push_back(check_one(market, subject, law, budget));

  bool all_pass = std::all_of(reports.begin(), reports.end(), [](const LawReport& r) { return r.pass; });
  if (structured(c)) {
    json list = json::array();
    for (const auto& r : reports) {
      auto doc = io::report_to_json(r);
      if (r.witness) doc["reverified"] = reverify(market, subject, *r.witness);
      list.push_back(std::move(doc));
    }
    emit_structured(out, json{{"command", "check"},
                              {"subject", c.measure.empty() ? io::acceptance_to_json(std::get<AccExpr>(subject))
                                                            : io::measure_to_json(std::get<MeasureExpr>(subject))},
                              {"seed", c.seed},
                              {"budget", c.budget},
                              {"reports", list},
                              {"verdict", all_pass ? "pass" : "fail"}});
  } else {
    for (const auto& r : reports) {
      write_report(out, r);
      if (r.witness) out << "  reverified: " << (reverify(market, subject, *r.witness) ? "yes" : "no") << '\n';
    }
  }
  return all_pass ? kPass : kViolation;
}

int cmd_decompose(const RunConfig& c, std::ostream& out) {
  auto market = load_market_ref(c.market);
  std::vector<RandomVector> xs;
  for (const auto& p : c.positions) xs.push_back(load_position_ref(market, p));
  const auto& x = single_position(xs, "decompose");
  if (c.measure.empty()) bad_input("decompose needs --measure");
  auto r = load_measure_ref(c.measure);
  auto kind = parse_family_kind(c.theorem);
  DecompositionFamily family;
  if (kind == FamilyKind::hull) {
    if (c.base.empty()) bad_input("hull families need --base");
    family = decompose_hull(market, r, x, load_position_ref(market, c.base));
  } else {
    family = decompose(market, r, kind, x);
  }
  auto report = reconstruct_check(market, r, family, x);
  if (structured(c)) {
    auto doc = io::family_to_json(market, family, x, report);
    doc["command"] = "decompose";
    doc["measure"] = io::measure_to_json(r);
    doc["position"] = io::position_to_json(x);
    doc["seed"] = c.seed;
    doc["budget"] = c.budget;
    emit_structured(out, doc);
  } else {
    out << to_string(family.kind) << " family of " << r.describe() << " at " << position_text(x) << ": "
        << family.members.size() << " members\n";
    for (const auto& m : family.members) {
      out << "  " << m.acceptance.describe() << '\n';
      write_upper_set(out, eval_acceptance(market, m.acceptance, x), "    ");
    }
    write_report(out, report);
  }
  return report.pass ? kPass : kViolation;
}

int cmd_certify(const RunConfig& c, std::ostream& out) {
  auto market = load_market_ref(c.market);
  std::vector<RandomVector> xs;
  for (const auto& p : c.positions) xs.push_back(load_position_ref(market, p));
  const auto& y_vec = single_position(xs, "certify");
  if (c.portfolio.empty()) bad_input("certify needs --portfolio");
  auto u = load_vector_ref(c.portfolio);
  auto cert = dual_certificate(market, y_vec, u);
  bool valid = cert && validate_certificate(market, y_vec, *cert);
  if (structured(c)) {
    json doc{{"command", "certify"}, {"position", io::position_to_json(y_vec)}, {"portfolio", io::to_json(u)},
             {"seed", c.seed}, {"budget", c.budget}};
    doc["excluded"] = cert.has_value();
    doc["certificate"] = cert ? io::certificate_to_json(*cert, valid) : json(nullptr);
    emit_structured(out, doc);
  } else if (!cert) {
    out << "u = " << to_string(u) << " lies in WC(y): no certificate\n";
  } else {
    out << "u = " << to_string(u) << " is excluded from WC(y)\n";
    out << "  scenario " << cert->scenario << ", y = " << to_string(cert->y) << '\n';
    for (std::size_t j = 0; j < cert->q.size(); ++j) out << "  Q" << (j + 1) << " = " << to_string(cert->q[j]) << '\n';
    out << "  valid: " << (valid ? "yes" : "no") << '\n';
  }
  return !cert || valid ? kPass : kViolation;
}

int cmd_link(const RunConfig& c, std::ostream& out) {
  auto market = load_market_ref(c.market);
  if (c.base.empty()) bad_input("link needs --base (the position Y)");
  std::vector<AccExpr> members;
  for (const auto& m : c.members) members.push_back(load_acceptance_ref(m));
  auto y = load_position_ref(market, c.base);
  auto [measure, report] = star_link(market, members, y, budget_of(c));
  if (structured(c)) {
    emit_structured(out, json{{"command", "link"},
                              {"measure", io::measure_to_json(measure)},
                              {"report", io::report_to_json(report)},
                              {"seed", c.seed},
                              {"budget", c.budget}});
  } else {
    out << "star-shaped link: " << measure.describe() << '\n';
    write_report(out, report);
  }
  return report.pass ? kPass : kViolation;
}

// Demos compare observations against documented expectations.

struct Observation {
  std::string name;
  bool observed;
  bool expected;
};

int finish_demo(const RunConfig& c, std::ostream& out, const std::string& title, const std::vector<Observation>& obs,
                const std::vector<LawReport>& reports, std::size_t seed, std::size_t budget) {
  bool matches = std::all_of(obs.begin(), obs.end(), [](const Observation& o) { return o.observed == o.expected; });
  if (structured(c)) {
    json checks = json::array();
    for (const auto& o : obs)
      checks.push_back({{"name", o.name}, {"observed", o.observed}, {"expected", o.expected}});
    json list = json::array();
    for (const auto& r : reports) list.push_back(io::report_to_json(r));
    emit_structured(out, json{{"command", "demo"},
                              {"demo", c.demo},
                              {"checks", checks},
                              {"reports", list},
                              {"seed", seed},
                              {"budget", budget},
                              {"matches", matches}});
  } else {
    out << title << '\n';
    for (const auto& o : obs)
      out << "  " << o.name << ": " << (o.observed ? "true" : "false") << " (expected "
          << (o.expected ? "true" : "false") << ")\n";
    for (const auto& r : reports) write_report(out, r, "  ");
    out << (matches ? "matches expected output\n" : "DOES NOT match expected output\n");
  }
  return matches ? kPass : kViolation;
}

int demo_remark52(const RunConfig& c, std::ostream& out) {
  auto market = fixtures::mkt_a();
  auto y = RandomVector::constant(market.n(), Vec{Rational(1), Rational(1)});
  auto b = dominance_at(y);
  RandomVector zero(market.n(), market.d());
  auto budget = budget_of(c);
  auto [translated, report] = star_link(market, {b}, y, budget);
  std::vector<Observation> obs{
      {"B nonempty (Y = (1,1) accepted)", accepts(market, b, y), true},
      {"B & M empty (R_B(0) empty, so no Shift by an eligible u helps)", eval_acceptance(market, b, zero).is_empty(),
       true},
      {"Translate(R_B, Y) is star-shaped", report.pass, true},
  };
  return finish_demo(c, out, "B = (1,1) + K on mkt-a", obs, {report}, c.seed, c.budget);
}

int demo_example51(const RunConfig& c, std::ostream& out) {
  auto market = fixtures::mkt_a();
  Vec shift_by{Rational(1), Rational(0)};
  auto shifted = shift(worst_case_measure(), negated(shift_by));
  auto back = shift(shifted, shift_by);
  auto budget = budget_of(c);
  auto r6 = check_measure_law(market, shifted, MeasureLaw::R6, budget);
  auto back_r4 = check_measure_law(market, back, MeasureLaw::R4, budget);
  auto back_r6 = check_measure_law(market, back, MeasureLaw::R6, budget);
  bool witnessed = !r6.pass && r6.witness && reverify(market, shifted, *r6.witness);
  std::vector<Observation> obs{
      {"Shift(WC, -c) is star-shaped", r6.pass, false},
      {"violation witness reverifies", witnessed, true},
      {"shifted back: convex", back_r4.pass, true},
      {"shifted back: star-shaped", back_r6.pass, true},
  };
  return finish_demo(c, out, "Shift(WC, -c) with c = (1,0) on mkt-a", obs, {r6, back_r4, back_r6}, c.seed, c.budget);
}

int demo_var_fixture(const RunConfig& c, std::ostream& out) {
  // The documented convexity counterexample search runs at seed 7, budget 200.
  const std::uint64_t seed = 7;
  const std::size_t count = 200;
  auto market = fixtures::mkt_b();
  auto x = fixtures::var_position();
  auto r = var_measure(VaRKind::strong, Rational(1, 4));
  auto value = eval_measure(market, r, x);
  auto piece = [](int a, int b) {
    return Polyhedron(2, {{Vec{Rational(1), Rational(0)}, Rational(a), false},
                          {Vec{Rational(0), Rational(1)}, Rational(b), false}});
  };
  UpperSet expected(market.recession(), {piece(2, 1), piece(1, 4)});
  SampleBudget budget;
  budget.count = count;
  budget.seed = seed;
  auto r4 = check_measure_law(market, r, MeasureLaw::R4, budget);
  std::vector<Observation> obs{
      {"V@R strong 1/4 at xv = {u1 >= 2, u2 >= 1} u {u1 >= 1, u2 >= 4}", value.equals(expected), true},
      {"V@R strong 1/4 is convex", r4.pass, false},
      {"violation witness reverifies", !r4.pass && r4.witness && reverify(market, r, *r4.witness), true},
  };
  if (!structured(c)) {
    out << "value at " << position_text(x) << ":\n";
    write_upper_set(out, value, "  ");
  }
  return finish_demo(c, out, "strong V@R at level 1/4 on mkt-b", obs, {r4}, seed, count);
}

int cmd_demo(const RunConfig& c, std::ostream& out) {
  if (c.demo == "remark52") return demo_remark52(c, out);
  if (c.demo == "example51") return demo_example51(c, out);
  if (c.demo == "var_fixture") return demo_var_fixture(c, out);
  bad_input("unknown demo \"" + c.demo + "\" (expected remark52, example51 or var_fixture)");
}

std::uint64_t env_number(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  std::string text(raw);
  if (text.find_first_not_of("0123456789") != std::string::npos)
    bad_input(std::string(name) + " must be a nonnegative integer, got \"" + text + "\"");
  try {
    return std::stoull(text);
  } catch (const std::out_of_range&) {
    bad_input(std::string(name) + " is out of range");
  }
}

}  // namespace

RunConfig default_config() {
  RunConfig c;
  c.seed = env_number("SETRISK_SEED", c.seed);
  c.budget = env_number("SETRISK_BUDGET", c.budget);
  return c;
}

int run(const RunConfig& config, std::ostream& out) {
  try {
    if (config.format != "text" && config.format != "structured" && config.format != "csv-vertices")
      bad_input("unknown format \"" + config.format + "\"");
    if (config.format == "csv-vertices" && config.command != "eval") bad_input("csv-vertices applies to eval only");
    if (config.command == "eval") return cmd_eval(config, out);
    if (config.command == "check") return cmd_check(config, out);
    if (config.command == "decompose") return cmd_decompose(config, out);
    if (config.command == "certify") return cmd_certify(config, out);
    if (config.command == "link") return cmd_link(config, out);
    if (config.command == "demo") return cmd_demo(config, out);
    bad_input("unknown command \"" + config.command + "\"");
  } catch (...) {
    return report_current_exception(out);
  }
}

int report_current_exception(std::ostream& out) {
  std::string kind;
  std::string message;
  int code = kInputError;
  try {
    throw;
  } catch (const Error& e) {
    kind = std::string(to_string(e.kind()));
    message = e.what();
    if (e.kind() == ErrorKind::OnlyOrthogonalSeparators || e.kind() == ErrorKind::EmptyValue) code = kDegenerate;
  } catch (const json::exception& e) {
    kind = "MalformedDocument";
    message = e.what();
  } catch (const std::exception& e) {
    kind = "InputError";
    message = e.what();
  }
  out << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
  return code;
}

}  // namespace setrisk::cli
