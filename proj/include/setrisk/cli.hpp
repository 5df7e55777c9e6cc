#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace setrisk::cli {

/// Documents (market, positions, expressions) are given as a fixture name,
/// inline JSON, or a path to a JSON file.
struct RunConfig {
  /// eval | check | decompose | certify | link | demo
  std::string command;
  std::string market = "mkt-a";
  std::vector<std::string> positions;
  std::string measure;
  std::string acceptance;
  /// Acceptance-set members for link.
  std::vector<std::string> members;
  std::vector<std::string> laws;
  /// monetary | star_normalized | coherent | hull
  std::string theorem = "monetary";
  /// Y for hull families and for link.
  std::string base;
  /// Portfolio u for certify, in R^d.
  std::string portfolio;
  /// remark52 | example51 | var_fixture
  std::string demo;
  std::uint64_t seed = 0;
  std::size_t budget = 200;
  /// text | structured | csv-vertices
  std::string format = "text";
};

enum ExitCode : int { kPass = 0, kViolation = 1, kInputError = 2, kDegenerate = 3 };

/// Defaults with SETRISK_SEED and SETRISK_BUDGET applied. Throws
/// Error{MalformedDocument} when either variable is not a number.
RunConfig default_config();

/// Runs one command and writes its documents to out. Module errors become a
/// one-line JSON error document and a nonzero exit code.
int run(const RunConfig& config, std::ostream& out);

/// Writes {"error": {"kind": ..., "message": ...}} and returns the exit code
/// for the currently handled exception. Call only from a catch block.
int report_current_exception(std::ostream& out);

}  // namespace setrisk::cli
