// Command-line front end.  Every subcommand reads one JSON config, prints the
// full report to stdout, and mirrors it (plus CSV tables) under --out.
//
// Exit codes: 0 success, 2 a checked tolerance failed (or a promised gluing
// threshold was not found), 3 bad configuration, 4 runtime divergence or any
// other computational failure.

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "ahmass/errors.hpp"
#include "ahmass/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ahmass: asymptotically hyperbolic mass toolkit"};
  app.require_subcommand(1);

  ahmass::RunOptions opt;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"mass", "energy-momentum of a registered metric family"},
      {"verify", "KID, Killing, Lorentz, graph and zero-mass identity suites"},
      {"glue", "boosted-hemisphere gluing: epsilon scan for a timelike-past threshold"},
      {"constraints", "constraint-operator sweep on an initial data set"},
      {"boost-demo", "one boost: defect, conjugation, momentum action, cap images"},
  };
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", opt.config_path, "JSON config file (defaults apply without one)");
    sub->add_option("--out", opt.out_dir, "directory for report.json and CSV tables");
    sub->add_option("--seed", opt.seed, "override the config seed");
    sub->add_option("--dim", opt.dim, "override the config dimension n");
    sub->add_option("--tol", opt.tol, "override the config tolerance");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  CLI::App* sub = app.get_subcommands().front();
  opt.seed_set = sub->count("--seed") > 0;

  try {
    const ahmass::RunResult res = ahmass::run_command(sub->get_name(), opt);
    std::cout << res.report.dump(2) << "\n";
    return res.exit_code;
  } catch (const ahmass::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const ahmass::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
