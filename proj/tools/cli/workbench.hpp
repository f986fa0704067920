#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace dias::cli {

inline constexpr const char* kReportSchema = "dias-workbench-report/1";

enum ExitCode : int { kOk = 0, kViolation = 1, kInputError = 2, kOutsideRegime = 3 };

struct RunConfig {
  std::string subcommand;
  std::string field_path;              // --field
  std::string field_spec;              // --field-spec, ';' separates lines
  std::optional<double> amplitude;     // random field sup when no field is given
  int resolution = 128;
  int s_count = 64;
  int alpha_count = 129;
  int quad_nodes = 64;
  std::uint64_t seed = 1;
  double safety = 1.05;
  double tol = 1e-8;
  std::vector<double> epsilons = {-0.05, -0.02, -0.01, 0.0, 0.01, 0.02, 0.05};
  int lattice_count = 1000;
  double radius = 1e-3;
  std::string out_dir = ".";
};

struct Table {
  std::string file;
  std::string content;
};

struct RunResult {
  nlohmann::ordered_json report;
  std::vector<Table> tables;
  int exit_code = kOk;
};

// Throws InvalidInput on bad arguments. `help` is set (and the usage text
// stored in `usage`) when --help was requested.
RunConfig parse_args(int argc, const char* const* argv, bool* help = nullptr,
                     std::string* usage = nullptr);

RunResult run(const RunConfig& config);

// report.json, metadata.json and the tables, inside config.out_dir.
void write_outputs(const RunConfig& config, const RunResult& result);

int main_entry(int argc, const char* const* argv);

}  // namespace dias::cli
