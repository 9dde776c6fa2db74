#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qconn/config.hpp"
#include "qconn/report.hpp"

namespace qconn::cli {

// Bad command lines, unknown names, and malformed config values. Mapped to
// exit code 2 by run(); numeric failures (a finished report that does not
// pass, or an aborted computation) exit with 3; success is 0.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when --help is requested; carries the rendered help text.
struct HelpRequested {
  std::string text;
};

struct RunOptions {
  std::string subcommand;
  Config config;
  std::string out_path;        // empty writes to stdout
  std::string format = "json"; // json | csv
  unsigned seed = 12345;       // drives the randomized gauge fields
  bool timing = false;         // append wall-clock duration to the report
};

// Parses everything after the program name:
//   <curvature|frame-check|prove|rindler-scaling> [--config FILE] [--out FILE]
//   [--format json|csv] [--seed N] [--order N] [--timing] [key=value ...]
// A config file is read first; key=value arguments override it in order, and
// flags override both. Throws UsageError or HelpRequested.
RunOptions parse_command_line(const std::vector<std::string>& args);

// Dispatches to the subcommand implementation and assembles its report.
Report run_subcommand(const RunOptions& opts);

// Full program: parse, honor QCONN_THREADS, run, write the report in the
// requested format. Returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace qconn::cli
