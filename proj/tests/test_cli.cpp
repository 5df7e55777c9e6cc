#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <sstream>

#include "setrisk/cli.hpp"
#include "setrisk/documents.hpp"
#include "setrisk/error.hpp"
#include "setrisk/fixtures.hpp"
#include "support.hpp"

using namespace setrisk;
using namespace setrisk::testing;
using setrisk::cli::RunConfig;
using setrisk::io::json;

namespace {

struct Outcome {
  int code;
  std::string text;
  json doc() const { return json::parse(text); }
};

Outcome run(const RunConfig& c) {
  std::ostringstream out;
  int code = cli::run(c, out);
  return {code, out.str()};
}

RunConfig config(std::string command, std::string market = "mkt-a") {
  RunConfig c;
  c.command = std::move(command);
  c.market = std::move(market);
  return c;
}

std::string error_kind(const Outcome& o) { return o.doc().at("error").at("kind").get<std::string>(); }

}  // namespace

TEST_CASE("eval: documented worst-case value") {
  auto c = config("eval");
  c.measure = "wc";
  c.positions = {"x1"};
  auto text = run(c);
  CHECK(text.code == cli::kPass);
  CHECK(text.text.find("piece 0: {u1 >= 1}") != std::string::npos);

  c.format = "structured";
  auto structured = run(c);
  REQUIRE(structured.code == cli::kPass);
  auto a = fixtures::mkt_a();
  auto value = io::upper_set_from_json(structured.doc().at("value"), a.recession());
  CHECK(value.equals(UpperSet(a.recession(), {Polyhedron(1, {{Vec{q(1)}, q(1), false}})})));
  CHECK(structured.doc().at("seed") == 0);
  CHECK(structured.doc().at("budget") == 200);
}

TEST_CASE("eval: csv vertices re-ingest to the same set") {
  auto b = fixtures::mkt_b();
  for (const std::string measure : {"wc", "var-strong:1/4", "var-weak:1/4"}) {
    auto c = config("eval", "mkt-b");
    c.measure = measure;
    c.positions = {"xv"};
    c.format = "csv-vertices";
    auto o = run(c);
    REQUIRE(o.code == cli::kPass);
    auto direct = eval_measure(b, io::measure_from_shorthand(measure), fixtures::var_position());
    CHECK(io::upper_set_from_vertex_csv(o.text, b.recession()).equals(direct));
  }
}

TEST_CASE("eval: inline documents and acceptance subjects") {
  auto c = config("eval");
  c.market = R"({ "d": 2, "probs": ["1/2","1/2"], "cone": { "halfspaces": [[1,1],[0,1]] }, "subspace": { "coords": [0] } })";
  c.positions = {R"({"rows": [["-1","0"],["0","2"]]})"};
  c.acceptance = R"({"dominance": [["0","0"],["0","0"]]})";
  auto o = run(c);
  CHECK(o.code == cli::kPass);
  CHECK(o.text.find("{u1 >= 1}") != std::string::npos);

  c.measure = "wc";
  CHECK(error_kind(run(c)) == "MalformedDocument");
}

TEST_CASE("check: convexity violation of strong V@R") {
  auto c = config("check", "mkt-b");
  c.laws = {"R4"};
  c.measure = "var-strong:1/4";
  c.seed = 7;
  c.budget = 200;
  c.format = "structured";
  auto o = run(c);
  CHECK(o.code == cli::kViolation);
  auto doc = o.doc();
  CHECK(doc.at("verdict") == "fail");
  const auto& report = doc.at("reports").at(0);
  CHECK(report.at("law") == "R4");
  CHECK(report.at("seed") == 7);
  CHECK(report.at("reverified") == true);
  auto parsed = io::report_from_json(report);
  REQUIRE(parsed.witness);
  CHECK(reverify(fixtures::mkt_b(), io::measure_from_shorthand("var-strong:1/4"), *parsed.witness));

  // Byte-identical reruns.
  CHECK(run(c).text == o.text);
  c.format = "text";
  CHECK(run(c).text == run(c).text);
}

TEST_CASE("check: passing laws, correspondences, default law sets") {
  auto c = config("check");
  c.measure = "wc";
  c.laws = {"R1", "R6", "A3", "R_eq_RAR", "transfer"};
  c.budget = 40;
  CHECK(run(c).code == cli::kPass);

  c.laws.clear();
  c.format = "structured";
  auto all = run(c).doc().at("reports");
  CHECK(all.size() == all_measure_laws().size());

  auto d = config("check");
  d.acceptance = R"({"dominance": [["1","1"],["1","1"]]})";
  d.laws = {"A3"};
  d.budget = 20;
  CHECK(run(d).code == cli::kViolation);

  d.laws = {"R9"};
  auto unknown = run(d);
  CHECK(unknown.code == cli::kInputError);
  CHECK(error_kind(unknown) == "UnknownLaw");
}

TEST_CASE("decompose: family document and reconstruction verdict") {
  auto c = config("decompose", "mkt-b");
  c.measure = "var-strong:1/4";
  c.positions = {"xv"};
  c.format = "structured";
  auto o = run(c);
  REQUIRE(o.code == cli::kPass);
  auto doc = o.doc();
  CHECK(doc.at("theorem") == "monetary");
  CHECK(doc.at("members").size() == 2);
  CHECK(doc.at("reconstruction").at("verdict") == "pass");
  auto b = fixtures::mkt_b();
  for (const auto& m : doc.at("members")) {
    CHECK(m.at("kind") == "dominance");
    auto anchor = io::position_from_json(m.at("anchor"));
    CHECK(io::upper_set_from_json(m.at("value"), b.recession())
              .equals(eval_acceptance(b, dominance_at(anchor), fixtures::var_position())));
  }

  c.theorem = "coherent";
  CHECK(run(c).doc().at("members").at(0).at("kind") == "ray");
  c.theorem = "hull";
  CHECK(error_kind(run(c)) == "MalformedDocument");
  c.base = R"([["3","3"],["3","3"],["3","3"]])";
  CHECK(run(c).code == cli::kPass);
  c.theorem = "affine";
  CHECK(error_kind(run(c)) == "UnknownLaw");
}

TEST_CASE("degenerate regimes exit with code 3") {
  // No eligible u repairs the scenario (0, -1) on mkt-a, so WC is empty.
  auto c = config("decompose");
  c.measure = "wc";
  c.positions = {R"([["0","-1"],["0","0"]])"};
  auto empty = run(c);
  CHECK(empty.code == cli::kDegenerate);
  CHECK(error_kind(empty) == "EmptyValue");

  auto cert = config("certify");
  cert.positions = {R"([["2","-1"],["2","-1"]])"};
  cert.portfolio = "0,0";
  auto orthogonal = run(cert);
  CHECK(orthogonal.code == cli::kDegenerate);
  CHECK(error_kind(orthogonal) == "OnlyOrthogonalSeparators");
}

TEST_CASE("certify: documented certificate") {
  auto c = config("certify");
  c.positions = {"x1"};
  c.portfolio = "0,0";
  c.format = "structured";
  auto o = run(c);
  REQUIRE(o.code == cli::kPass);
  auto cert = o.doc().at("certificate");
  CHECK(cert.at("scenario") == 0);
  CHECK(cert.at("y") == json::array({"1", "1"}));
  CHECK(cert.at("q") == json::array({json::array({"1", "0"}), json::array({"1", "0"})}));
  CHECK(cert.at("valid") == true);

  c.portfolio = R"(["2","0"])";
  auto inside = run(c);
  CHECK(inside.code == cli::kPass);
  CHECK(inside.doc().at("excluded") == false);

  c.portfolio = "0,1";
  CHECK(error_kind(run(c)) == "ShapeMismatch");
}

TEST_CASE("link") {
  auto c = config("link", "mkt-b");
  c.members = {R"({"dominance": [["1","-2"],["0","0"],["-1","3"]]})",
               R"({"dominance": [["-2","1"],["2","-1"],["0","0"]]})"};
  c.base = R"([["2","3"],["2","3"],["2","3"]])";
  c.budget = 60;
  CHECK(run(c).code == cli::kPass);
  c.base = R"([["0","0"],["0","0"],["0","0"]])";
  CHECK(error_kind(run(c)) == "NotInIntersection");
}

TEST_CASE("demos reproduce their expected output") {
  for (const std::string name : {"remark52", "example51", "var_fixture"}) {
    auto c = config("demo");
    c.demo = name;
    c.format = "structured";
    auto o = run(c);
    CAPTURE(name);
    CHECK(o.code == cli::kPass);
    CHECK(o.doc().at("matches") == true);
    CHECK(run(c).text == o.text);
  }
  auto c = config("demo");
  c.demo = "remark52";
  auto text = run(c).text;
  CHECK(text.find("B nonempty (Y = (1,1) accepted): true") != std::string::npos);
  CHECK(text.find("B & M empty") != std::string::npos);
  c.demo = "remark53";
  CHECK(run(c).code == cli::kInputError);
}

TEST_CASE("input errors") {
  auto c = config("eval", "no-such-market");
  c.measure = "wc";
  c.positions = {"x1"};
  auto o = run(c);
  CHECK(o.code == cli::kInputError);
  CHECK(error_kind(o) == "MalformedDocument");

  c = config("eval");
  c.measure = "wc";
  c.positions = {"xv"};
  CHECK(error_kind(run(c)) == "ShapeMismatch");

  c.positions = {"x1"};
  c.measure = "var-medium:1/2";
  CHECK(error_kind(run(c)) == "MalformedDocument");
  c.measure = "var-strong:3/2";
  CHECK(error_kind(run(c)) == "BadLevel");
  c.measure = "wc";
  c.format = "svg";
  CHECK(run(c).code == cli::kInputError);
  c.format = "csv-vertices";
  c.command = "check";
  CHECK(run(c).code == cli::kInputError);
  c.command = "plot";
  c.format = "text";
  CHECK(run(c).code == cli::kInputError);
}

TEST_CASE("environment overrides") {
  setenv("SETRISK_SEED", "17", 1);
  setenv("SETRISK_BUDGET", "33", 1);
  auto c = cli::default_config();
  CHECK(c.seed == 17);
  CHECK(c.budget == 33);
  setenv("SETRISK_BUDGET", "many", 1);
  CHECK_THROWS_AS(cli::default_config(), Error);
  unsetenv("SETRISK_SEED");
  unsetenv("SETRISK_BUDGET");
  CHECK(cli::default_config().seed == 0);
  CHECK(cli::default_config().budget == 200);
}

TEST_CASE("expression documents round trip") {
  auto y = RandomVector({{q(1), q(-1, 2)}, {q(0), q(3)}});
  auto z = RandomVector({{q(2), q(2)}, {q(-1), q(1)}});
  std::vector<MeasureExpr> measures{
      worst_case_measure(),
      var_measure(VaRKind::weak, q(1, 3)),
      translate(shift(worst_case_measure(), Vec{q(1, 2), q(0)}), y),
      convex_combo(q(1, 4), var_measure(VaRKind::strong, q(1, 2)), worst_case_measure()),
      union_of({worst_case_measure(), of_acceptance(segment(y))}),
      intersection_of({of_acceptance(acc_union({ray(y), segment_hull(y, z)})), worst_case_measure()}),
  };
  for (const auto& r : measures) {
    auto doc = io::measure_to_json(r);
    CHECK(io::measure_to_json(io::measure_from_json(doc)) == doc);
    CHECK(io::measure_from_json(doc).describe() == r.describe());
  }
  auto a = acc_intersection({dominance_at(y), of_measure(var_measure(VaRKind::strong, q(1, 4))), ray(z)});
  CHECK(io::acceptance_to_json(io::acceptance_from_json(io::acceptance_to_json(a))) == io::acceptance_to_json(a));

  CHECK(io::measure_from_json(json("var-weak:1/4")).describe() == var_measure(VaRKind::weak, q(1, 4)).describe());
  CHECK_THROWS_AS(io::measure_from_json(json::parse(R"({"wc": {}, "var": {}})")), Error);
  CHECK_THROWS_AS(io::acceptance_from_json(json::parse(R"({"cube": []})")), Error);
  CHECK_THROWS_AS(io::measure_from_json(json::parse(R"({"union": []})")), Error);
}

TEST_CASE("report documents round trip") {
  LawReport r;
  r.law = "R4";
  r.pass = false;
  r.samples = 3;
  r.budget = 10;
  r.seed = 9;
  r.note = "n";
  Witness w;
  w.law = "R4";
  w.relation = "rel";
  w.x = RandomVector({{q(1, 2), q(0)}});
  w.u = Vec{q(-3)};
  w.t = q(1, 8);
  w.point = Vec{q(5, 4), q(-1)};
  r.witness = w;
  auto doc = io::report_to_json(r);
  CHECK(io::report_to_json(io::report_from_json(doc)) == doc);
  CHECK(doc.at("witness").at("y").is_null());
  doc["verdict"] = "maybe";
  CHECK_THROWS_AS(io::report_from_json(doc), Error);
}
