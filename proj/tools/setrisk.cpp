#include <iostream>

#include "CLI11.hpp"
#include "setrisk/cli.hpp"

int main(int argc, char** argv) {
  using setrisk::cli::RunConfig;
  RunConfig config;
  try {
    config = setrisk::cli::default_config();
  } catch (...) {
    return setrisk::cli::report_current_exception(std::cout);
  }

  CLI::App app{"Exact set-valued risk measures on finite scenario spaces"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--market", config.market, "fixture name (mkt-a, mkt-b), JSON file or inline JSON")
        ->capture_default_str();
    sub->add_option("--seed", config.seed, "sampling seed (default from SETRISK_SEED)")->capture_default_str();
    sub->add_option("--budget", config.budget, "samples per law (default from SETRISK_BUDGET)")
        ->capture_default_str();
    sub->add_option("--format", config.format, "text, structured or csv-vertices")
        ->check(CLI::IsMember({"text", "structured", "csv-vertices"}))
        ->capture_default_str();
  };
  std::string position;
  auto positions = [&](CLI::App* sub) {
    sub->add_option("--position", position, "fixture name (x1, xv), JSON file or inline JSON");
  };
  auto subject = [&](CLI::App* sub) {
    sub->add_option("--measure", config.measure, "wc, var-strong:<level>, var-weak:<level>, or a JSON expression");
    sub->add_option("--acceptance", config.acceptance, "acceptance-set JSON expression (file or inline)");
  };

  auto* eval = app.add_subcommand("eval", "evaluate a measure at a position");
  common(eval);
  positions(eval);
  subject(eval);

  auto* check = app.add_subcommand("check", "check laws on samples");
  common(check);
  subject(check);
  check->add_option("--law", config.laws, "law ids (repeatable); default: every law for the subject kind");

  auto* decompose = app.add_subcommand("decompose", "vertex-anchored decomposition and reconstruction check");
  common(decompose);
  positions(decompose);
  subject(decompose);
  decompose->add_option("--theorem", config.theorem, "monetary, star_normalized, coherent or hull")
      ->capture_default_str();
  decompose->add_option("--base", config.base, "Y for hull families");

  auto* certify = app.add_subcommand("certify", "dual certificate excluding a portfolio from WC(position)");
  common(certify);
  positions(certify);
  certify->add_option("--portfolio", config.portfolio, "u in R^d, e.g. 0,0")->required();

  auto* link = app.add_subcommand("link", "star-shaped measure from acceptance sets containing Y");
  common(link);
  link->add_option("--member", config.members, "acceptance-set JSON expression (repeatable)")->required();
  link->add_option("--base", config.base, "the position Y")->required();

  auto* demo = app.add_subcommand("demo", "documented fixtures with expected-output comparison");
  common(demo);
  demo->add_option("name", config.demo, "remark52, example51 or var_fixture")
      ->required()
      ->check(CLI::IsMember({"remark52", "example51", "var_fixture"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return setrisk::cli::kInputError;
  }
  config.command = app.get_subcommands().front()->get_name();
  if (!position.empty()) config.positions.push_back(position);
  return setrisk::cli::run(config, std::cout);
}
