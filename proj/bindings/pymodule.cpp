// pymodule.cpp -- python extension exposing the analysis pipeline and the
// partition calculus.  Reports cross the boundary as machine-format JSON
// strings; the python package parses them into dictionaries.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "orbitcover/errors.hpp"
#include "orbitcover/problem.hpp"

namespace py = pybind11;

namespace {

using orbitcover::Error;
using orbitcover::orbits::OrbitFamily;
using orbitcover::orbits::Partition;

OrbitFamily orbit_family_from_name(const std::string& name) {
  if (name == "sp") return OrbitFamily::sp;
  if (name == "soB") return OrbitFamily::soB;
  if (name == "soD") return OrbitFamily::soD;
  if (name == "sl") return OrbitFamily::sl;
  orbitcover::fail(orbitcover::ErrorCode::ParseError,
                   "unknown orbit family: " + name);
}

orbitcover::problem::RunOptions machine_options(long long max_nodes) {
  orbitcover::problem::RunOptions opt;
  opt.format = orbitcover::problem::Format::Machine;
  opt.max_nodes = max_nodes;
  return opt;
}

std::string analyze_text(const std::string& text, long long max_nodes) {
  auto setup = orbitcover::problem::parse_problem(text);
  return orbitcover::problem::run_analyze(setup, machine_options(max_nodes))
      .output;
}

std::string analyze_file(const std::string& path, long long max_nodes) {
  auto setup = orbitcover::problem::load_problem(path);
  return orbitcover::problem::run_analyze(setup, machine_options(max_nodes))
      .output;
}

Partition x_collapse(const std::string& family_letter, const Partition& p) {
  if (family_letter.size() != 1) {
    orbitcover::fail(orbitcover::ErrorCode::ParseError,
                     "family must be a single letter");
  }
  return orbitcover::orbits::x_collapse(
      orbitcover::rootsys::family_from_letter(family_letter[0]), p);
}

long long pi1_order(const std::string& family_name, const Partition& p) {
  OrbitFamily fam = orbit_family_from_name(family_name);
  return orbitcover::orbits::pi1_order(
      {fam, orbitcover::orbits::partition_sum(p), p});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Exact counting of terminalizations over covers of classical nilpotent "
      "orbit closures";

  py::register_exception<Error>(m, "OrbitCoverError");

  m.def("analyze_text", &analyze_text, py::arg("text"),
        py::arg("max_nodes") = -1,
        "Analyze a problem document; returns the machine report as JSON.");
  m.def("analyze_file", &analyze_file, py::arg("path"),
        py::arg("max_nodes") = -1,
        "Analyze a problem file; returns the machine report as JSON.");
  m.def("x_collapse", &x_collapse, py::arg("family"), py::arg("partition"),
        "Collapse of a partition in family B, C or D.");
  m.def("pi1_order", &pi1_order, py::arg("family"), py::arg("partition"),
        "Fundamental-group order of the orbit (family sp, soB or soD).");
  m.def("tool_version", [] { return orbitcover::problem::tool_version(); });
}
