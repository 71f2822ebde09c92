#pragma once

// Orchestration behind the command-line tool: JSON configs with defaults
// resolution, deterministic reports, CSV traces, and the exit-code policy.
//
// Reports are byte-identical for identical (config, seed): map keys keep
// insertion order, numbers are serialized in shortest round-trip form, and
// wall-clock timings go to stderr, never into the report.  The embedded
// "config" object echoes every field that affects the computed numbers with
// all defaults resolved; output locations are delivery plumbing and are not
// part of it.
//
// Exit codes: 0 success, 2 tolerance failure, 3 config error, 4 numerical
// divergence.  For the glue scan, "no threshold" maps to 2 when the family's
// realized decay promised one (faster than eps^{n/2}) and to 4 otherwise,
// where the non-decaying remainder makes the outcome legitimate.

#include <cstdint>
#include <string>

#include "json.hpp"

namespace ahmass {

using Json = nlohmann::ordered_json;

struct RunOptions {
  std::string config_path;  // empty: defaults only
  std::string out_dir;      // empty: no files, report on stdout only
  bool seed_set = false;
  std::uint64_t seed = 0;   // overrides the config when seed_set
  int dim = 0;              // overrides config "n" when > 0
  double tol = 0;           // overrides config "tolerance" when > 0
};

struct RunResult {
  int exit_code = 0;
  Json report;
};

// Parse the config file (or start from {}), apply command-line overrides,
// resolve defaults, and validate; throws ConfigError on unknown keys, wrong
// types, or out-of-range values.
Json effective_config(const std::string& command, const RunOptions& opt);

RunResult cmd_mass(const RunOptions& opt);
RunResult cmd_verify(const RunOptions& opt);
RunResult cmd_glue(const RunOptions& opt);
RunResult cmd_constraints(const RunOptions& opt);
RunResult cmd_boost_demo(const RunOptions& opt);

// Dispatch by subcommand name; throws ConfigError for unknown names.
RunResult run_command(const std::string& command, const RunOptions& opt);

// Shortest round-trip decimal form (std::to_chars).
std::string format_double(double x);

// Writes text as-is (LF endings are the caller's responsibility), creating
// parent directories.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ahmass
