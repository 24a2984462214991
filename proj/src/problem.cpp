// problem.cpp -- INI-like problem parsing, command execution, and report
// emission in text and machine (JSON) formats.

#include "orbitcover/problem.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "json.hpp"

namespace orbitcover::problem {

using counting::AnalysisReport;
using counting::MergeKind;
using counting::ProblemSetup;
using counting::RhoValue;
using nlohmann::ordered_json;
using orbits::Partition;
using rootsys::Family;
using twist::KMatrix;

const char* tool_version() { return "1.0.0"; }

// ---------------------------------------------------------------------------
// Parsing

static std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

static long long parse_int(const std::string& s, const std::string& field) {
  std::string t = trim(s);
  if (t.empty()) {
    fail(ErrorCode::ValidationError, "expected an integer", field);
  }
  size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(t, &pos);
  } catch (const std::exception&) {
    fail(ErrorCode::ValidationError, "'" + t + "' is not an integer", field);
  }
  if (pos != t.size()) {
    fail(ErrorCode::ValidationError, "'" + t + "' is not an integer", field);
  }
  return value;
}

static std::vector<long long> parse_int_list(const std::string& s,
                                             const std::string& field) {
  std::vector<long long> out;
  std::string t = trim(s);
  if (t.empty()) return out;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item, field));
  return out;
}

counting::ProblemSetup parse_problem(const std::string& text) {
  std::map<std::string, std::map<std::string, std::string>> sections;
  static const std::map<std::string, std::vector<std::string>> known = {
      {"algebra", {"family", "rank"}},
      {"orbit", {"partition"}},
      {"setup", {"half_blocks", "middle_core", "gl_orbits", "cover"}},
      {"budgets", {"max_nodes", "max_group"}},
  };
  std::string section;
  std::stringstream ss(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(ss, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        fail(ErrorCode::ParseError,
             "line " + std::to_string(lineno) + ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (!known.count(section)) {
        fail(ErrorCode::ParseError,
             "line " + std::to_string(lineno) + ": unknown section [" + section + "]");
      }
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    if (section.empty()) {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(lineno) + ": key outside of any section");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    const std::vector<std::string>& keys = known.at(section);
    bool ok = false;
    for (const std::string& k : keys) ok = ok || (k == key);
    if (!ok) {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(lineno) + ": unknown key '" + key +
               "' in section [" + section + "]");
    }
    if (sections[section].count(key)) {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    sections[section][key] = value;
  }

  auto get = [&](const std::string& sec, const std::string& key,
                 bool required) -> const std::string* {
    auto s = sections.find(sec);
    if (s == sections.end() || !s->second.count(key)) {
      if (required) {
        fail(ErrorCode::ValidationError, "missing required value", sec + "." + key);
      }
      return nullptr;
    }
    return &s->second.at(key);
  };

  ProblemSetup setup;
  std::string fam = trim(*get("algebra", "family", true));
  if (fam.size() != 1) {
    fail(ErrorCode::ValidationError, "family must be one letter", "algebra.family");
  }
  setup.alg.family = rootsys::family_from_letter(fam[0]);
  if (setup.alg.family == Family::A) {
    fail(ErrorCode::UnsupportedFamily,
         "family A carries no invariant form, so no flag setup");
  }
  long long rank = parse_int(*get("algebra", "rank", true), "algebra.rank");
  if (rank < 1 || rank > 1000) {
    fail(ErrorCode::ValidationError, "rank out of range", "algebra.rank");
  }
  setup.alg.rank = static_cast<int>(rank);

  long long space = (setup.alg.family == Family::B) ? 2 * rank + 1 : 2 * rank;
  setup.target.family = setup.orbit_family();
  setup.target.dim = space;
  setup.target.partition =
      parse_int_list(*get("orbit", "partition", true), "orbit.partition");

  setup.half_blocks =
      parse_int_list(*get("setup", "half_blocks", true), "setup.half_blocks");
  long long blocks = 0;
  for (long long b : setup.half_blocks) blocks = checked_add(blocks, b);
  setup.middle = space - 2 * blocks;
  setup.middle_core =
      parse_int_list(*get("setup", "middle_core", true), "setup.middle_core");

  if (const std::string* go = get("setup", "gl_orbits", false)) {
    std::stringstream parts(*go);
    std::string piece;
    while (std::getline(parts, piece, '|')) {
      setup.gl_orbits.push_back(parse_int_list(piece, "setup.gl_orbits"));
    }
  } else {
    for (long long b : setup.half_blocks) {
      setup.gl_orbits.push_back(Partition(static_cast<size_t>(b), 1));
    }
  }

  if (const std::string* cover = get("setup", "cover", false)) {
    if (*cover == "universal") {
      setup.cover = counting::CoverKind::Universal;
    } else if (*cover == "b3-special") {
      setup.cover = counting::CoverKind::B3Special;
    } else {
      fail(ErrorCode::ValidationError,
           "cover must be 'universal' or 'b3-special'", "setup.cover");
    }
  }

  if (const std::string* mn = get("budgets", "max_nodes", false)) {
    setup.max_nodes = parse_int(*mn, "budgets.max_nodes");
    if (setup.max_nodes < 1) {
      fail(ErrorCode::ValidationError, "max_nodes must be positive",
           "budgets.max_nodes");
    }
  }
  if (const std::string* mg = get("budgets", "max_group", false)) {
    setup.max_group = parse_int(*mg, "budgets.max_group");
    if (setup.max_group < 1) {
      fail(ErrorCode::ValidationError, "max_group must be positive",
           "budgets.max_group");
    }
  }
  return setup;
}

counting::ProblemSetup load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::ParseError, "cannot open problem file '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

// ---------------------------------------------------------------------------
// Emission helpers

static ordered_json to_json(const Partition& p) {
  ordered_json a = ordered_json::array();
  for (long long x : p) a.push_back(x);
  return a;
}

static ordered_json to_json(const KMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < m.d; ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < m.d; ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

static std::string matrix_text(const KMatrix& m) {
  std::string s = "[";
  for (int r = 0; r < m.d; ++r) {
    if (r) s += "; ";
    for (int c = 0; c < m.d; ++c) {
      if (c) s += ",";
      s += std::to_string(m.at(r, c));
    }
  }
  s += "]";
  return s;
}

// A rho value as the set of target members it lights up, e.g. "{4}" or "0".
static std::string rho_text(const RhoValue& v, const counting::RhoTarget& target) {
  if (v.is_zero()) return "0";
  std::string s = "{";
  bool first = true;
  for (size_t i = 0; i < v.bits.size(); ++i) {
    if (!v.bits[i]) continue;
    if (!first) s += ",";
    s += std::to_string(target.coordinate_members[i]);
    first = false;
  }
  return s + "}";
}

static ordered_json setup_json(const ProblemSetup& setup) {
  ordered_json j;
  j["algebra"] = {{"family", std::string(1, rootsys::family_letter(setup.alg.family))},
                  {"rank", setup.alg.rank}};
  j["target_partition"] = to_json(setup.target.partition);
  j["half_blocks"] = to_json(setup.half_blocks);
  j["middle_dimension"] = setup.middle;
  j["middle_core"] = to_json(setup.middle_core);
  ordered_json go = ordered_json::array();
  for (const Partition& q : setup.gl_orbits) go.push_back(to_json(q));
  j["gl_orbits"] = std::move(go);
  j["cover"] = setup.cover == counting::CoverKind::Universal ? "universal"
                                                             : "b3-special";
  return j;
}

static std::string setup_text(const ProblemSetup& setup) {
  std::string s;
  s += "algebra: ";
  s += rootsys::family_letter(setup.alg.family);
  s += std::to_string(setup.alg.rank) + "\n";
  s += "target: " + orbits::partition_to_string(setup.target.partition) + "\n";
  s += "blocks: " + orbits::partition_to_string(setup.half_blocks) +
       "  middle: " + std::to_string(setup.middle) +
       "  core: " + orbits::partition_to_string(setup.middle_core) + "\n";
  s += "cover: ";
  s += setup.cover == counting::CoverKind::Universal ? "universal" : "b3-special";
  s += "\n";
  return s;
}

static ProblemSetup with_overrides(const ProblemSetup& setup,
                                   const RunOptions& opt) {
  ProblemSetup s = setup;
  if (opt.max_nodes >= 0) s.max_nodes = opt.max_nodes;
  return s;
}

// ---------------------------------------------------------------------------
// Commands

RunResult run_analyze(const counting::ProblemSetup& setup_in,
                      const RunOptions& opt) {
  ProblemSetup setup = with_overrides(setup_in, opt);
  AnalysisReport report = counting::analyze(setup);
  counting::RhoTarget target = counting::rho_target_for(setup);
  RunResult res;
  res.exit_code = report.all_checks_passed() ? 0 : 1;

  if (opt.format == Format::Machine) {
    ordered_json j;
    j["version"] = tool_version();
    j["command"] = "analyze";
    j["setup"] = setup_json(setup);
    ordered_json chain = ordered_json::array();
    for (const orbits::InductionStep& s : report.chain) {
      chain.push_back({{"block", s.k},
                       {"orbit", to_json(s.q)},
                       {"kind", s.kind == orbits::InductionKind::TypeII ? "II" : "I"},
                       {"degree", s.degree}});
    }
    j["chain"] = std::move(chain);
    j["s_l"] = report.s_l;
    j["w_prime_order"] = report.w_prime_order;
    j["n_classes"] = report.n_classes;
    j["pi1"] = report.pi1;
    j["aut_x"] = report.aut_x;
    j["aut_core"] = report.aut_core;
    j["wx_order"] = report.wx_order;
    j["count_theorem13"] = report.count_thm13;
    j["count_corollary10"] = report.count_cor10;
    ordered_json orders = ordered_json::array();
    for (size_t o = 1; o < report.wx_element_orders.size(); ++o) {
      if (report.wx_element_orders[o]) {
        orders.push_back({{"order", o}, {"count", report.wx_element_orders[o]}});
      }
    }
    j["wx_element_orders"] = std::move(orders);
    j["wx_reflections"] = report.wx_reflections;
    ordered_json gens = ordered_json::array();
    for (const counting::GeneratorInfo& g : report.generators) {
      ordered_json item;
      item["node"] = g.node;
      item["beta"] = g.beta;
      item["merge"] = g.merge_kind == MergeKind::GlClassical ? "gl-classical"
                                                             : "gl-gl";
      if (g.induction) {
        item["induction"] = *g.induction == orbits::InductionKind::TypeII ? "II" : "I";
      } else {
        item["induction"] = nullptr;
      }
      ordered_json bits = ordered_json::array();
      for (int b : g.rho.bits) bits.push_back(b);
      item["rho"] = std::move(bits);
      item["matrix"] = to_json(g.matrix);
      gens.push_back(std::move(item));
    }
    j["generators"] = std::move(gens);
    ordered_json checks = ordered_json::array();
    for (const counting::CrossCheck& c : report.checks) {
      checks.push_back({{"name", c.name},
                        {"expected", c.expected},
                        {"actual", c.actual},
                        {"status", c.status}});
    }
    j["checks"] = std::move(checks);
    j["status"] = res.exit_code == 0 ? "ok" : "cross-check-failed";
    res.output = j.dump(2) + "\n";
    return res;
  }

  std::string s = setup_text(setup);
  s += "chain:\n";
  for (const orbits::InductionStep& st : report.chain) {
    s += "  gl(" + std::to_string(st.k) + ") " + orbits::partition_to_string(st.q) +
         " -> type " + (st.kind == orbits::InductionKind::TypeII ? "II" : "I") + "\n";
  }
  s += "#S(L): " + std::to_string(report.s_l) + "\n";
  s += "|W'|: " + std::to_string(report.w_prime_order) + "\n";
  s += "N: " + std::to_string(report.n_classes) + "\n";
  s += "|pi1|: " + std::to_string(report.pi1) + "\n";
  s += "autX: " + std::to_string(report.aut_x) + "\n";
  s += "autCore: " + std::to_string(report.aut_core) + "\n";
  s += "|W_X|: " + std::to_string(report.wx_order) + "\n";
  s += "count[theorem13]: " + std::to_string(report.count_thm13) + "\n";
  s += "count[corollary10]: " + std::to_string(report.count_cor10) + "\n";
  s += "W_X element orders:";
  for (size_t o = 1; o < report.wx_element_orders.size(); ++o) {
    if (report.wx_element_orders[o]) {
      s += " " + std::to_string(o) + ":" +
           std::to_string(report.wx_element_orders[o]);
    }
  }
  s += "\n";
  s += "W_X reflections: " + std::to_string(report.wx_reflections) + "\n";
  s += "generators:\n";
  for (const counting::GeneratorInfo& g : report.generators) {
    s += "  node " + std::to_string(g.node) + " at " + std::to_string(g.beta) +
         ": " + (g.merge_kind == MergeKind::GlClassical ? "gl-classical" : "gl-gl");
    if (g.induction) {
      s += std::string(" type ") +
           (*g.induction == orbits::InductionKind::TypeII ? "II" : "I");
    }
    s += ", rho " + rho_text(g.rho, target) + ", matrix " + matrix_text(g.matrix) +
         "\n";
  }
  for (const counting::CrossCheck& c : report.checks) {
    s += "check " + c.name + ": expected " + std::to_string(c.expected) +
         " actual " + std::to_string(c.actual) + " [" + c.status + "]\n";
  }
  s += std::string("status: ") + (res.exit_code == 0 ? "ok" : "cross-check-failed") +
       "\n";
  res.output = s;
  return res;
}

RunResult run_enumerate(const counting::ProblemSetup& setup_in,
                        const RunOptions& opt) {
  ProblemSetup setup = with_overrides(setup_in, opt);
  counting::validate_setup(setup);
  diagram::LabeledParabolic base = diagram::from_flag(
      diagram::FlagSpec{setup.alg, setup.half_blocks, setup.middle});
  twist::TwistContext ctx(std::move(base));
  twist::ChamberGraph graph = twist::enumerate_chambers(ctx, setup.max_nodes);
  RunResult res;
  if (opt.format == Format::Machine) {
    ordered_json j;
    j["version"] = tool_version();
    j["command"] = "enumerate";
    j["setup"] = setup_json(setup);
    j["count"] = graph.count();
    ordered_json nodes = ordered_json::array();
    for (size_t i = 0; i < graph.nodes.size(); ++i) {
      ordered_json node;
      node["index"] = i;
      ordered_json marks = ordered_json::array();
      for (int m : graph.nodes[i].parabolic.marks) marks.push_back(m);
      node["marks"] = std::move(marks);
      ordered_json word = ordered_json::array();
      for (const auto& [from, beta] : graph.nodes[i].word) {
        word.push_back({{"node", from}, {"at", beta}});
      }
      node["word"] = std::move(word);
      nodes.push_back(std::move(node));
    }
    j["nodes"] = std::move(nodes);
    res.output = j.dump(2) + "\n";
    return res;
  }
  std::string s = setup_text(setup);
  s += "chambers: " + std::to_string(graph.count()) + "\n";
  for (size_t i = 0; i < graph.nodes.size(); ++i) {
    s += "node " + std::to_string(i) + ": marks {";
    const std::vector<int>& marks = graph.nodes[i].parabolic.marks;
    for (size_t t = 0; t < marks.size(); ++t) {
      if (t) s += ",";
      s += std::to_string(marks[t]);
    }
    s += "}";
    if (!graph.nodes[i].word.empty()) {
      s += "  via";
      for (const auto& [from, beta] : graph.nodes[i].word) {
        s += " (" + std::to_string(from) + "->" + std::to_string(beta) + ")";
      }
    }
    s += "\n";
  }
  res.output = s;
  return res;
}

RunResult run_twist_trace(const counting::ProblemSetup& setup_in,
                          const std::vector<int>& at, const RunOptions& opt) {
  ProblemSetup setup = with_overrides(setup_in, opt);
  counting::validate_setup(setup);
  diagram::LabeledParabolic base = diagram::from_flag(
      diagram::FlagSpec{setup.alg, setup.half_blocks, setup.middle});
  twist::TwistContext ctx(base);
  RunResult res;
  ordered_json steps = ordered_json::array();
  std::string text = setup_text(setup);
  text += "start:\n" + diagram::render(ctx.base);
  diagram::LabeledParabolic node = ctx.base;
  for (int beta : at) {
    std::optional<KMatrix> mat = twist::k_action(ctx, node, beta);
    twist::TwistResult tw = twist::twist_at(ctx, node, beta);
    if (opt.format == Format::Machine) {
      ordered_json step;
      step["at"] = beta;
      ordered_json comp = ordered_json::array();
      for (int v : tw.component) comp.push_back(v);
      step["component"] = std::move(comp);
      ordered_json marks = ordered_json::array();
      for (int m : tw.node.marks) marks.push_back(m);
      step["marks"] = std::move(marks);
      step["conjugating"] = mat.has_value();
      step["matrix"] = mat ? to_json(*mat) : ordered_json(nullptr);
      steps.push_back(std::move(step));
    } else {
      text += "twist at " + std::to_string(beta) + ": component {";
      for (size_t i = 0; i < tw.component.size(); ++i) {
        if (i) text += ",";
        text += std::to_string(tw.component[i]);
      }
      text += "}, ";
      text += mat ? "conjugating, matrix " + matrix_text(*mat) : "class-changing";
      text += "\n" + diagram::render(tw.node);
    }
    node = std::move(tw.node);
  }
  if (opt.format == Format::Machine) {
    ordered_json j;
    j["version"] = tool_version();
    j["command"] = "twist-trace";
    j["setup"] = setup_json(setup);
    j["steps"] = std::move(steps);
    ordered_json marks = ordered_json::array();
    for (int m : node.marks) marks.push_back(m);
    j["final_marks"] = std::move(marks);
    res.output = j.dump(2) + "\n";
  } else {
    res.output = text;
  }
  return res;
}

RunResult run_wprime(const counting::ProblemSetup& setup_in,
                     const RunOptions& opt) {
  ProblemSetup setup = with_overrides(setup_in, opt);
  counting::validate_setup(setup);
  diagram::LabeledParabolic base = diagram::from_flag(
      diagram::FlagSpec{setup.alg, setup.half_blocks, setup.middle});
  twist::TwistContext ctx(std::move(base));
  twist::ChamberGraph graph = twist::enumerate_chambers(ctx, setup.max_nodes);
  twist::MatrixGroup w =
      twist::generate_w_prime(graph, ctx.kb.dim(), setup.max_group);
  long long reflections = 0;
  std::map<long long, long long> orders;
  for (const KMatrix& m : w.elements) {
    KMatrix p = m;
    long long ord = 1;
    while (!(p == KMatrix::identity(m.d))) {
      p = p.multiply(m);
      ++ord;
    }
    orders[ord] += 1;
    reflections += twist::is_integral_reflection(m);
  }
  RunResult res;
  if (opt.format == Format::Machine) {
    ordered_json j;
    j["version"] = tool_version();
    j["command"] = "wprime";
    j["setup"] = setup_json(setup);
    j["order"] = w.order();
    ordered_json gens = ordered_json::array();
    for (const KMatrix& g : w.generators) gens.push_back(to_json(g));
    j["generators"] = std::move(gens);
    ordered_json ordj = ordered_json::array();
    for (const auto& [ord, count] : orders) {
      ordj.push_back({{"order", ord}, {"count", count}});
    }
    j["element_orders"] = std::move(ordj);
    j["reflections"] = reflections;
    res.output = j.dump(2) + "\n";
    return res;
  }
  std::string s = setup_text(setup);
  s += "|W'|: " + std::to_string(w.order()) + "\n";
  s += "generators:\n";
  for (const KMatrix& g : w.generators) s += "  " + matrix_text(g) + "\n";
  s += "element orders:";
  for (const auto& [ord, count] : orders) {
    s += " " + std::to_string(ord) + ":" + std::to_string(count);
  }
  s += "\nreflections: " + std::to_string(reflections) + "\n";
  res.output = s;
  return res;
}

RunResult run_oracle_collapse(char family_letter, long long n,
                              const RunOptions& opt) {
  Family family = rootsys::family_from_letter(family_letter);
  if (family == Family::A) {
    fail(ErrorCode::UnsupportedFamily, "family A has no collapse");
  }
  if (n < 1) {
    fail(ErrorCode::ValidationError, "n must be positive", "n");
  }
  RunResult res;
  bool degenerate = (family == Family::C && n % 2 != 0);
  bool all_agree = true;
  ordered_json rows = ordered_json::array();
  std::string text;
  text += "collapse oracle, family ";
  text += rootsys::family_letter(family);
  text += ", n = " + std::to_string(n) + "\n";
  if (degenerate) {
    text += "no valid partitions: sp partitions need even sum\n";
  } else {
    for (const Partition& p : orbits::all_partitions(n)) {
      Partition greedy = orbits::x_collapse(family, p);
      Partition oracle = orbits::collapse_oracle(family, p);
      bool agree = greedy == oracle;
      all_agree = all_agree && agree;
      if (opt.format == Format::Machine) {
        rows.push_back({{"partition", to_json(p)},
                        {"collapse", to_json(greedy)},
                        {"oracle", to_json(oracle)},
                        {"agree", agree}});
      } else {
        text += orbits::partition_to_string(p) + " -> " +
                orbits::partition_to_string(greedy);
        if (!agree) {
          text += "  ORACLE " + orbits::partition_to_string(oracle);
        }
        text += "\n";
      }
    }
  }
  res.exit_code = all_agree ? 0 : 1;
  if (opt.format == Format::Machine) {
    ordered_json j;
    j["version"] = tool_version();
    j["command"] = "oracle-collapse";
    j["family"] = std::string(1, rootsys::family_letter(family));
    j["n"] = n;
    if (degenerate) {
      j["note"] = "no valid partitions: sp partitions need even sum";
    }
    j["rows"] = std::move(rows);
    j["status"] = all_agree ? "ok" : "mismatch";
    res.output = j.dump(2) + "\n";
  } else {
    text += std::string("status: ") + (all_agree ? "ok" : "mismatch") + "\n";
    res.output = text;
  }
  return res;
}

}  // namespace orbitcover::problem
