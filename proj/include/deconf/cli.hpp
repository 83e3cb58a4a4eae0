#ifndef DECONF_CLI_HPP_
#define DECONF_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "deconf/optimizer.hpp"
#include "deconf/scenario_file.hpp"

namespace deconf::cli {

enum ExitCode : int {
   kOk = 0,
   kInvalidInput = 2,
   kInfeasible = 3,
   kInternal = 4,
};

/// Exit code for an in-flight exception (call inside a catch block).
int exit_code_for_current_exception(std::ostream& err);

// ---------------------------------------------------------------------------
// Greater Atlanta case study
// ---------------------------------------------------------------------------

struct CaseStudyRoute {
   const char* flight;
   const char* from;
   const char* to;
};

/// Four missions between eight Atlanta-area vertiports, speeds in mph.
const std::vector<CaseStudyRoute>& atlanta_routes();
ScenarioFile atlanta_scenario(double h);

struct CaseStudyReport {
   double h = 0.0;              ///< [m]
   OrderSearch search;
   double best_total_min = 0.0;
   double worst_total_min = 0.0;
   double best_average_min = 0.0;
   double efficiency = 0.0;     ///< 1 - best / worst
   std::vector<std::vector<std::string>> tied_orders;
};

CaseStudyReport run_casestudy(double h, unsigned workers = 1);

// ---------------------------------------------------------------------------
// Command line
// ---------------------------------------------------------------------------

/// Runs `deconf <subcommand> [flags]`. `args[0]` is the program name.
/// Human-readable summaries go to `out`, diagnostics to `err`, artifacts
/// (CSV / JSON) into the `--out` directory.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deconf::cli

#endif  // DECONF_CLI_HPP_
