// test_problem.cpp -- unit tests for problem-file parsing, the command
// runners, and the machine report format.

#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "orbitcover/errors.hpp"
#include "orbitcover/problem.hpp"

using nlohmann::json;
using orbitcover::Error;
using orbitcover::ErrorCode;
using orbitcover::counting::CoverKind;
using orbitcover::counting::ProblemSetup;
using orbitcover::orbits::OrbitFamily;
using orbitcover::orbits::Partition;
using orbitcover::problem::Format;
using orbitcover::problem::RunOptions;
using orbitcover::problem::RunResult;
using orbitcover::problem::parse_problem;
using orbitcover::problem::run_analyze;
using orbitcover::problem::run_oracle_collapse;
using orbitcover::problem::run_twist_trace;
using orbitcover::problem::tool_version;
using orbitcover::rootsys::Family;

namespace {

bool throws_code(ErrorCode code, std::function<void()> f,
                 std::string* field = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (field) *field = e.field();
    return e.code() == code;
  }
  return false;
}

const char* kThreeBlock =
    "# three-block symplectic flag\n"
    "[algebra]\n"
    "family = C\n"
    "rank = 10\n"
    "[orbit]\n"
    "partition = 6,6,4,4\n"
    "[setup]\n"
    "half_blocks = 4,1,3\n"
    "middle_core = 1,1,1,1\n"
    "cover = universal\n";

}  // namespace

TEST_CASE("problem files parse into a full setup") {
  ProblemSetup s = parse_problem(kThreeBlock);
  CHECK(s.alg.family == Family::C);
  CHECK(s.alg.rank == 10);
  CHECK(s.target.family == OrbitFamily::sp);
  CHECK(s.target.dim == 20);
  CHECK(s.target.partition == Partition{6, 6, 4, 4});
  CHECK(s.half_blocks == std::vector<long long>{4, 1, 3});
  // middle = 20 - 2*(4+1+3), never a key of its own.
  CHECK(s.middle == 4);
  CHECK(s.middle_core == Partition{1, 1, 1, 1});
  // gl_orbits defaults to the zero orbit of each block.
  REQUIRE(s.gl_orbits.size() == 3);
  CHECK(s.gl_orbits[0] == Partition{1, 1, 1, 1});
  CHECK(s.gl_orbits[1] == Partition{1});
  CHECK(s.gl_orbits[2] == Partition{1, 1, 1});
  CHECK(s.cover == CoverKind::Universal);
}

TEST_CASE("explicit gl orbits are pipe-separated per block") {
  std::string text = std::string(kThreeBlock) +
                     "gl_orbits = 2,1,1 | 1 | 1,1,1\n";
  ProblemSetup s = parse_problem(text);
  REQUIRE(s.gl_orbits.size() == 3);
  CHECK(s.gl_orbits[0] == Partition{2, 1, 1});
  CHECK(s.gl_orbits[1] == Partition{1});
  CHECK(s.gl_orbits[2] == Partition{1, 1, 1});
}

TEST_CASE("syntax problems raise parse errors") {
  CHECK(throws_code(ErrorCode::ParseError,
                    [] { parse_problem("[bogus]\n"); }));
  CHECK(throws_code(ErrorCode::ParseError,
                    [] { parse_problem("[algebra]\nflavour = C\n"); }));
  CHECK(throws_code(ErrorCode::ParseError,
                    [] { parse_problem("[algebra]\nfamily C\n"); }));
  CHECK(throws_code(ErrorCode::ParseError, [] {
    parse_problem("[algebra]\nfamily = C\nfamily = D\n");
  }));
  CHECK(throws_code(ErrorCode::ParseError,
                    [] { parse_problem("family = C\n"); }));
  CHECK(throws_code(ErrorCode::ParseError,
                    [] { parse_problem("[algebra\nfamily = C\n"); }));
}

TEST_CASE("missing and malformed values carry their field path") {
  std::string field;
  CHECK(throws_code(ErrorCode::ValidationError, [] {
    parse_problem("[algebra]\nfamily = C\n");
  }, &field));
  CHECK(field == "algebra.rank");

  CHECK(throws_code(ErrorCode::ValidationError, [] {
    parse_problem(
        "[algebra]\nfamily = C\nrank = 10\n"
        "[orbit]\npartition = 6,6,4,4\n"
        "[setup]\nhalf_blocks = 4,1,3\nmiddle_core = 1,1,1,1\n"
        "cover = maximal\n");
  }, &field));
  CHECK(field == "setup.cover");

  CHECK(throws_code(ErrorCode::UnsupportedFamily, [] {
    parse_problem("[algebra]\nfamily = A\nrank = 10\n");
  }));
}

TEST_CASE("machine analysis reports are complete and byte-deterministic") {
  ProblemSetup s = parse_problem(kThreeBlock);
  RunOptions opt;
  opt.format = Format::Machine;
  RunResult first = run_analyze(s, opt);
  RunResult second = run_analyze(s, opt);
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);

  json doc = json::parse(first.output);
  CHECK(doc["version"] == tool_version());
  CHECK(doc["command"] == "analyze");
  CHECK(doc["setup"]["algebra"]["family"] == "C");
  CHECK(doc["setup"]["middle_dimension"] == 4);
  CHECK(doc["s_l"] == 48);
  CHECK(doc["w_prime_order"] == 8);
  CHECK(doc["n_classes"] == 6);
  CHECK(doc["pi1"] == 4);
  CHECK(doc["aut_x"] == 4);
  CHECK(doc["aut_core"] == 1);
  CHECK(doc["wx_order"] == 2);
  CHECK(doc["count_theorem13"] == 24);
  CHECK(doc["count_corollary10"] == 24);
  CHECK(doc["status"] == "ok");
  CHECK(doc["chain"].size() == 3);
  for (const auto& c : doc["checks"]) {
    CHECK(c["status"] == "ok");
  }
}

TEST_CASE("text analysis reports end with the status line") {
  ProblemSetup s = parse_problem(kThreeBlock);
  RunOptions opt;
  RunResult r = run_analyze(s, opt);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("status: ok\n") != std::string::npos);
}

TEST_CASE("twist traces report class changes and k-matrices") {
  ProblemSetup s = parse_problem(
      "[algebra]\nfamily = D\nrank = 20\n"
      "[orbit]\npartition = 11,11,11,3,3,1\n"
      "[setup]\nhalf_blocks = 3,3,3,4\nmiddle_core = 3,3,3,2,2,1\n"
      "cover = universal\n");
  RunOptions opt;
  opt.format = Format::Machine;
  RunResult r = run_twist_trace(s, {9, 13}, opt);
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.output);
  REQUIRE(doc["steps"].size() == 2);
  CHECK(doc["steps"][0]["at"] == 9);
  CHECK(doc["steps"][0]["conjugating"] == false);
  CHECK(doc["steps"][0]["matrix"].is_null());
  CHECK(doc["steps"][0]["marks"] == json({3, 6, 10, 13}));
  CHECK(doc["steps"][1]["at"] == 13);
  CHECK(doc["steps"][1]["conjugating"] == true);
  CHECK(doc["steps"][1]["matrix"] ==
        json({{1, 0, 0, 0}, {0, 1, 2, 2}, {0, 0, -1, -2}, {0, 0, 0, 1}}));
  CHECK(doc["final_marks"] == json({3, 6, 10, 13}));
}

TEST_CASE("the collapse oracle runner compares greedy against brute force") {
  RunOptions opt;
  opt.format = Format::Machine;
  RunResult r = run_oracle_collapse('C', 6, opt);
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc["command"] == "oracle-collapse");
  CHECK(doc["status"] == "ok");
  CHECK(doc["rows"].size() == 11);  // partitions of 6
  for (const auto& row : doc["rows"]) {
    CHECK(row["agree"] == true);
  }
}

TEST_CASE("odd symplectic dimensions have no valid partitions at all") {
  RunOptions opt;
  opt.format = Format::Machine;
  RunResult r = run_oracle_collapse('C', 7, opt);
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc["status"] == "ok");
  CHECK(doc["rows"].empty());
  CHECK(doc["note"] == "no valid partitions: sp partitions need even sum");
}
