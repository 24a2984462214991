// problem.hpp -- problem-file ingestion, command dispatch, and report
// emission for the CLI and the python bindings.
//
// Input format: a line-oriented INI-like document.
//
//   [algebra]
//   family = C          # B, C or D
//   rank = 10
//   [orbit]
//   partition = 6,6,4,4
//   [setup]
//   half_blocks = 4,1,3
//   middle_core = 1,1,1,1
//   gl_orbits = 1,1,1,1 | 1 | 1,1,1    # optional, default zero orbits
//   cover = universal                  # or b3-special
//   [budgets]
//   max_nodes = 1000000                # optional
//   max_group = 1000000                # optional
//
// '#' starts a comment.  ParseError reports syntax problems, ValidationError
// carries the dotted field path of the first offending value.

#pragma once

#include <string>

#include "orbitcover/counting.hpp"

namespace orbitcover::problem {

counting::ProblemSetup parse_problem(const std::string& text);
counting::ProblemSetup load_problem(const std::string& path);

enum class Format { Text, Machine };

struct RunOptions {
  Format format = Format::Text;
  long long max_nodes = -1;   // override when >= 0
  long long threads = 1;      // accepted; evaluation is single-threaded
};

struct RunResult {
  std::string output;
  // 0 = success, 1 = a cross-check failed, 2 = error (set by the CLI shell)
  int exit_code = 0;
};

// Subcommands.  `at` lists the vertices for twist-trace.
RunResult run_analyze(const counting::ProblemSetup& setup, const RunOptions& opt);
RunResult run_enumerate(const counting::ProblemSetup& setup, const RunOptions& opt);
RunResult run_twist_trace(const counting::ProblemSetup& setup,
                          const std::vector<int>& at, const RunOptions& opt);
RunResult run_wprime(const counting::ProblemSetup& setup, const RunOptions& opt);
RunResult run_oracle_collapse(char family_letter, long long n,
                              const RunOptions& opt);

// Version string stamped into every report document.
const char* tool_version();

}  // namespace orbitcover::problem
