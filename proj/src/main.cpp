// main.cpp -- command-line interface: analyze / enumerate / twist-trace /
// wprime / oracle collapse, with text or machine output.
//
// Exit codes: 0 success, 1 a cross-check failed, 2 any error.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orbitcover/problem.hpp"

int main(int argc, char** argv) {
  using namespace orbitcover;

  CLI::App app{"exact counting of Q-factorial terminalizations for covers of "
               "classical nilpotent orbit closures"};
  app.require_subcommand(1);
  // Let the global options (--format etc.) appear after the subcommand too.
  app.fallthrough();

  std::string format = "text";
  long long max_nodes = -1;
  long long threads = 1;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--max-nodes", max_nodes, "chamber budget override");
  app.add_option("--threads", threads, "worker threads (evaluation is "
                                       "single-threaded; accepted for "
                                       "compatibility)")
      ->check(CLI::PositiveNumber);

  std::string path;
  std::vector<int> at;

  CLI::App* cmd_analyze = app.add_subcommand("analyze", "full count with checks");
  cmd_analyze->add_option("problem", path, "problem file")->required();

  CLI::App* cmd_enumerate =
      app.add_subcommand("enumerate", "list the chamber graph nodes");
  cmd_enumerate->add_option("problem", path, "problem file")->required();

  CLI::App* cmd_trace =
      app.add_subcommand("twist-trace", "apply a sequence of twists");
  cmd_trace->add_option("problem", path, "problem file")->required();
  cmd_trace->add_option("--at", at, "vertices to twist at, in order")
      ->delimiter(',')
      ->required();

  CLI::App* cmd_wprime =
      app.add_subcommand("wprime", "the matrix group of conjugating twists");
  cmd_wprime->add_option("problem", path, "problem file")->required();

  CLI::App* cmd_oracle = app.add_subcommand("oracle", "brute-force oracles");
  CLI::App* cmd_collapse = cmd_oracle->add_subcommand(
      "collapse", "compare greedy collapse against the brute-force maximum");
  std::string family = "C";
  long long oracle_n = 0;
  cmd_collapse->add_option("--family", family, "B, C or D")
      ->required()
      ->check(CLI::IsMember({"B", "C", "D"}));
  cmd_collapse->add_option("--n", oracle_n, "partition sum")->required();
  cmd_oracle->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  problem::RunOptions opt;
  opt.format = format == "machine" ? problem::Format::Machine
                                   : problem::Format::Text;
  opt.max_nodes = max_nodes;
  opt.threads = threads;

  try {
    problem::RunResult res;
    if (*cmd_analyze) {
      res = problem::run_analyze(problem::load_problem(path), opt);
    } else if (*cmd_enumerate) {
      res = problem::run_enumerate(problem::load_problem(path), opt);
    } else if (*cmd_trace) {
      res = problem::run_twist_trace(problem::load_problem(path), at, opt);
    } else if (*cmd_wprime) {
      res = problem::run_wprime(problem::load_problem(path), opt);
    } else if (*cmd_collapse) {
      res = problem::run_oracle_collapse(family[0], oracle_n, opt);
    } else {
      std::cerr << "error: no command\n";
      return 2;
    }
    std::cout << res.output;
    return res.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
