// counting.cpp -- wall classification, rho-bar, W_X extraction, and the two
// terminalization counts with their cross-checks.

#include "orbitcover/counting.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace orbitcover::counting {

using diagram::LabeledParabolic;
using orbits::InductionKind;
using rootsys::Family;
using rootsys::RootVector;

OrbitFamily ProblemSetup::orbit_family() const {
  switch (alg.family) {
    case Family::B: return OrbitFamily::soB;
    case Family::C: return OrbitFamily::sp;
    case Family::D: return OrbitFamily::soD;
    case Family::A:
      fail(ErrorCode::UnsupportedFamily,
           "family A carries no invariant form, so no flag setup");
  }
  fail(ErrorCode::Internal, "bad algebra family");
}

OrbitId ProblemSetup::middle_orbit() const {
  return OrbitId{orbit_family(), middle, middle_core};
}

bool RhoValue::is_zero() const {
  for (int b : bits) {
    if (b) return false;
  }
  return true;
}

RhoValue RhoTarget::zero() const {
  return RhoValue{std::vector<int>(coordinate_members.size(), 0)};
}

static RhoValue canonicalize(const RhoTarget& target, RhoValue v) {
  if (target.quotient_by_all_ones && !v.bits.empty() && v.bits.back()) {
    for (int& b : v.bits) b ^= 1;
  }
  return v;
}

RhoValue RhoTarget::basis_vector(long long member) const {
  RhoValue v = zero();
  auto it = std::find(coordinate_members.begin(), coordinate_members.end(), member);
  check_internal(it != coordinate_members.end(),
                 "rho-bar witness is not a coordinate member of the target");
  v.bits[static_cast<size_t>(it - coordinate_members.begin())] = 1;
  return canonicalize(*this, v);
}

RhoValue RhoTarget::add(const RhoValue& x, const RhoValue& y) const {
  check_internal(x.bits.size() == y.bits.size(), "rho-value size mismatch");
  RhoValue out = x;
  for (size_t i = 0; i < out.bits.size(); ++i) out.bits[i] ^= y.bits[i];
  return canonicalize(*this, out);
}

RhoTarget rho_target_for(const ProblemSetup& setup) {
  RhoTarget t;
  long long keep_parity = (setup.orbit_family() == OrbitFamily::sp) ? 0 : 1;
  t.quotient_by_all_ones = (keep_parity == 1);
  std::vector<long long> members = orbits::distinct_members(setup.target.partition);
  for (auto it = members.rbegin(); it != members.rend(); ++it) {
    if ((*it % 2) == keep_parity) t.coordinate_members.push_back(*it);
  }
  return t;
}

// Partial sums of the original half blocks: block t occupies coordinate lines
// (sums[t], sums[t+1]].
static std::vector<long long> block_bounds(const ProblemSetup& setup) {
  std::vector<long long> sums{0};
  for (long long b : setup.half_blocks) sums.push_back(sums.back() + b);
  return sums;
}

// The coordinate line a node slot sits on: every node map is a signed
// coordinate permutation (classical Weyl elements), so U e_slot = +/- e_c.
static long long slot_coordinate(const LabeledParabolic& p, int slot) {
  RootVector e(static_cast<size_t>(p.u.dim), 0);
  e[static_cast<size_t>(slot - 1)] = 1;
  RootVector img = p.u.apply(e);
  long long coord = 0;
  for (size_t i = 0; i < img.size(); ++i) {
    if (img[i] == 0) continue;
    check_internal(coord == 0 && (img[i] == 1 || img[i] == -1),
                   "node map is not a signed coordinate permutation");
    coord = static_cast<long long>(i) + 1;
  }
  check_internal(coord != 0, "node map dropped a coordinate line");
  return coord;
}

// Original block whose coordinate lines carry the node slots (lo, hi].
static int block_of_slots(const LabeledParabolic& p, long long lo, long long hi,
                          const std::vector<long long>& bounds) {
  int block = -1;
  for (long long slot = lo + 1; slot <= hi; ++slot) {
    long long c = slot_coordinate(p, static_cast<int>(slot));
    int t = -1;
    for (size_t i = 0; i + 1 < bounds.size(); ++i) {
      if (bounds[i] < c && c <= bounds[i + 1]) t = static_cast<int>(i);
    }
    check_internal(t >= 0, "gl slot maps into the middle factor");
    check_internal(block < 0 || block == t, "gl slot straddles two blocks");
    block = t;
  }
  check_internal(block >= 0, "empty slot range");
  check_internal(hi - lo == bounds[static_cast<size_t>(block) + 1] -
                                bounds[static_cast<size_t>(block)],
                 "slot range size differs from its block");
  return block;
}

WallData wall_of_twist(const TwistContext& ctx, const twist::ChamberNode& node,
                       int beta, const ProblemSetup& setup) {
  (void)ctx;
  const LabeledParabolic& p = node.parabolic;
  if (!p.is_marked(beta)) {
    fail(ErrorCode::NotMarked,
         "vertex " + std::to_string(beta) + " is not marked");
  }
  const std::vector<int>& marks = p.marks;
  std::vector<long long> bounds = block_bounds(setup);
  size_t j = 0;
  while (marks[j] != beta) ++j;
  WallData wall;
  wall.node = -1;  // caller fills the graph index
  wall.beta = beta;
  if (j + 1 == marks.size()) {
    // The erased mark separates the last gl slot from the classical middle.
    long long prev = (j == 0) ? 0 : marks[j - 1];
    wall.merge_kind = MergeKind::GlClassical;
    wall.k_t = beta - prev;
    wall.block_index = block_of_slots(p, prev, beta, bounds);
    check_internal(wall.k_t == setup.half_blocks[static_cast<size_t>(wall.block_index)],
                   "merged slot size differs from its block");
    wall.gl_orbit = setup.gl_orbits[static_cast<size_t>(wall.block_index)];
    for (size_t t = j; t-- > 0;) {
      long long lo = (t == 0) ? 0 : marks[t - 1];
      wall.remaining_blocks.push_back(block_of_slots(p, lo, marks[t], bounds));
    }
  } else {
    // Two adjacent gl slots merge.
    long long prev = (j == 0) ? 0 : marks[j - 1];
    wall.merge_kind = MergeKind::GlGl;
    int a = block_of_slots(p, prev, beta, bounds);
    int b = block_of_slots(p, beta, marks[j + 1], bounds);
    wall.gl_orbit = orbits::gl_merge(setup.gl_orbits[static_cast<size_t>(a)],
                                     setup.gl_orbits[static_cast<size_t>(b)]);
    wall.k_t = 0;
    wall.block_index = -1;
  }
  return wall;
}

// Induction the GlClassical wall performs on the middle core.
static InductionKind classify_wall(const WallData& wall, const ProblemSetup& setup,
                                   long long* witness_out) {
  check_internal(wall.merge_kind == MergeKind::GlClassical,
                 "only classical walls classify");
  OrbitFamily fam = setup.orbit_family();
  Partition pbar = orbits::induce(fam, setup.middle_core, wall.k_t, wall.gl_orbit);
  return orbits::classify_induction(fam, setup.middle_core, pbar, wall.k_t,
                                    witness_out);
}

RhoValue rho_bar(const TwistContext&, const WallData& wall,
                 const ProblemSetup& setup, const RhoTarget& target) {
  if (wall.merge_kind == MergeKind::GlGl) return target.zero();
  OrbitFamily fam = setup.orbit_family();
  long long witness = 0;
  if (classify_wall(wall, setup, &witness) == InductionKind::TypeI) {
    return target.zero();
  }
  // Transport the witness member outward through the remaining blocks.
  long long v = witness;
  Partition cur = orbits::induce(fam, setup.middle_core, wall.k_t, wall.gl_orbit);
  for (int t : wall.remaining_blocks) {
    long long k = setup.half_blocks[static_cast<size_t>(t)];
    const Partition& q = setup.gl_orbits[static_cast<size_t>(t)];
    Partition next = orbits::induce(fam, cur, k, q);
    long long inc = -1;
    for (size_t pos = 0; pos < cur.size(); ++pos) {
      if (cur[pos] != v) continue;
      long long qq = pos < q.size() ? q[pos] : 0;
      if (inc < 0) {
        inc = qq;
      } else if (qq != inc) {
        fail(ErrorCode::UnsupportedMerge,
             "witness member " + std::to_string(v) +
                 " receives unequal increments from block orbit " +
                 orbits::partition_to_string(q));
      }
    }
    check_internal(inc >= 0, "witness member vanished during transport");
    v += 2 * inc;
    if (orbits::multiplicity(next, v) == 0) {
      fail(ErrorCode::UnsupportedMerge,
           "collapse destroyed the transported member " + std::to_string(v) +
               " in " + orbits::partition_to_string(next));
    }
    cur = next;
  }
  check_internal(cur == setup.target.partition,
                 "transport did not end at the target partition");
  return target.basis_vector(v);
}

long long w_x_order(long long w_prime_order, long long aut_x, long long aut_core) {
  long long num = checked_mul(w_prime_order, aut_core);
  if (num % aut_x != 0) {
    fail(ErrorCode::NonIntegralOrder,
         "|W'| autCore = " + std::to_string(num) +
             " is not divisible by autX = " + std::to_string(aut_x));
  }
  return num / aut_x;
}

WxResult w_x_subgroup(const MatrixGroup& w, const std::vector<RhoValue>& gen_rho,
                      const RhoTarget& target, long long aut_x, long long aut_core) {
  check_internal(gen_rho.size() == w.generators.size(),
                 "one rho value per generator");
  size_t n = w.elements.size();
  std::vector<RhoValue> rho(n);
  std::vector<char> known(n, 0);
  rho[0] = target.zero();
  known[0] = 1;
  for (size_t i = 0; i < n; ++i) {
    check_internal(known[i] != 0, "group element reached before its rho value");
    for (size_t g = 0; g < w.generators.size(); ++g) {
      int j = w.index_of(w.elements[i].multiply(w.generators[g]));
      check_internal(j >= 0, "group is not closed under its generators");
      RhoValue cand = target.add(rho[i], gen_rho[g]);
      if (known[static_cast<size_t>(j)]) {
        check_internal(rho[static_cast<size_t>(j)] == cand,
                       "rho-bar is not well defined on the twist group");
      } else {
        rho[static_cast<size_t>(j)] = cand;
        known[static_cast<size_t>(j)] = 1;
      }
    }
  }
  std::set<RhoValue> image(rho.begin(), rho.end());
  long long image_order = static_cast<long long>(image.size());
  if (aut_x % aut_core != 0 || image_order != aut_x / aut_core) {
    fail(ErrorCode::SurjectivityFailure,
         "rho-bar image has order " + std::to_string(image_order) +
             ", the cover demands " + std::to_string(aut_x) + "/" +
             std::to_string(aut_core));
  }
  WxResult out;
  out.image_order = image_order;
  for (size_t i = 0; i < n; ++i) {
    if (!rho[i].is_zero()) continue;
    int idx = static_cast<int>(out.subgroup.elements.size());
    out.subgroup.index.emplace(w.elements[i], idx);
    out.subgroup.elements.push_back(w.elements[i]);
    out.subgroup.words.push_back(w.words[i]);
  }
  long long expected = w_x_order(w.order(), aut_x, aut_core);
  if (out.subgroup.order() != expected) {
    fail(ErrorCode::OrderMismatch,
         "rho-bar kernel has order " + std::to_string(out.subgroup.order()) +
             ", |W'| autCore / autX = " + std::to_string(expected));
  }
  return out;
}

long long theorem13_count(long long n_classes, long long aut_x, long long aut_core) {
  long long num = checked_mul(n_classes, aut_x);
  if (num % aut_core != 0) {
    fail(ErrorCode::NonIntegralCount,
         "N autX = " + std::to_string(num) +
             " is not divisible by autCore = " + std::to_string(aut_core));
  }
  return num / aut_core;
}

long long corollary10_count(long long s_l, long long wx_order) {
  if (s_l % wx_order != 0) {
    fail(ErrorCode::DivisibilityViolation,
         "#S(L) = " + std::to_string(s_l) +
             " is not divisible by |W_X| = " + std::to_string(wx_order));
  }
  return s_l / wx_order;
}

bool AnalysisReport::all_checks_passed() const {
  for (const CrossCheck& c : checks) {
    if (c.status == "failed") return false;
  }
  return true;
}

// Deck-transformation orders of the chosen cover over the target orbit and
// over the middle core orbit.
static void cover_auts(const ProblemSetup& setup, long long* aut_x,
                       long long* aut_core) {
  OrbitFamily fam = setup.orbit_family();
  if (setup.cover == CoverKind::Universal) {
    *aut_x = orbits::pi1_order(setup.target);
    *aut_core = orbits::pi1_order(setup.middle_orbit());
    return;
  }
  if (fam == OrbitFamily::sp) {
    fail(ErrorCode::ValidationError,
         "the b3 cover is only defined for orthogonal algebras", "setup.cover");
  }
  if (orbits::core_case(fam, setup.middle_core) != orbits::CoreCase::B3) {
    fail(ErrorCode::ValidationError,
         "the b3 cover needs a case-B3 middle core, got case " +
             orbits::core_case_name(orbits::core_case(fam, setup.middle_core)),
         "setup.cover");
  }
  auto odd_members = [](const Partition& p) {
    long long a = 0;
    for (long long i : orbits::distinct_members(p)) a += (i % 2 != 0);
    return a;
  };
  *aut_x = 1LL << std::max(odd_members(setup.target.partition) - 1, 0LL);
  *aut_core = 1LL << std::max(odd_members(setup.middle_core) - 1, 0LL);
}

std::vector<orbits::InductionStep> validate_setup(const ProblemSetup& setup) {
  OrbitFamily fam = setup.orbit_family();
  if (setup.target.family != fam) {
    fail(ErrorCode::ValidationError, "orbit family does not match the algebra",
         "orbit");
  }
  long long n = setup.alg.rank;
  long long space = (setup.alg.family == Family::B) ? 2 * n + 1 : 2 * n;
  if (setup.target.dim != space) {
    fail(ErrorCode::DimensionMismatch,
         "target orbit lives in dimension " + std::to_string(setup.target.dim) +
             ", the algebra acts on " + std::to_string(space));
  }
  orbits::validate_orbit(setup.target);
  diagram::from_flag(diagram::FlagSpec{setup.alg, setup.half_blocks, setup.middle});
  if (setup.gl_orbits.size() != setup.half_blocks.size()) {
    fail(ErrorCode::ValidationError,
         "need one gl orbit per flag block", "setup.gl_orbits");
  }
  for (size_t t = 0; t < setup.gl_orbits.size(); ++t) {
    const Partition& q = setup.gl_orbits[t];
    if (!orbits::is_partition(q) ||
        orbits::partition_sum(q) != setup.half_blocks[t]) {
      fail(ErrorCode::InvalidBlock,
           "gl orbit " + orbits::partition_to_string(q) +
               " is not a partition of block size " +
               std::to_string(setup.half_blocks[t]));
    }
  }
  orbits::validate_orbit(setup.middle_orbit());
  // Inside-out induction chain: last flag block first.
  std::vector<std::pair<long long, Partition>> steps;
  for (size_t t = setup.half_blocks.size(); t-- > 0;) {
    steps.emplace_back(setup.half_blocks[t], setup.gl_orbits[t]);
  }
  std::vector<orbits::InductionStep> chain =
      orbits::check_chain(setup.middle_orbit(), steps, setup.target);
  long long aut_x = 0, aut_core = 0;
  cover_auts(setup, &aut_x, &aut_core);
  long long type2 = 0;
  for (const orbits::InductionStep& s : chain) {
    type2 += (s.kind == InductionKind::TypeII);
  }
  if (aut_x != checked_mul(1LL << type2, aut_core)) {
    fail(ErrorCode::ValidationError,
         "cover is inconsistent with the chain: autX = " + std::to_string(aut_x) +
             ", 2^(type II steps) autCore = " +
             std::to_string(checked_mul(1LL << type2, aut_core)),
         "setup.cover");
  }
  return chain;
}

// Multiplicative order of a k-matrix (bounded by the ambient group order).
static long long matrix_order(const KMatrix& m, long long bound) {
  KMatrix id = KMatrix::identity(m.d);
  KMatrix p = m;
  long long ord = 1;
  while (!(p == id)) {
    p = p.multiply(m);
    ++ord;
    check_internal(ord <= bound, "matrix order exceeds the group order");
  }
  return ord;
}

AnalysisReport analyze(const ProblemSetup& setup) {
  AnalysisReport report;
  report.chain = validate_setup(setup);
  cover_auts(setup, &report.aut_x, &report.aut_core);
  report.pi1 = orbits::pi1_order(setup.target);

  LabeledParabolic base = diagram::from_flag(
      diagram::FlagSpec{setup.alg, setup.half_blocks, setup.middle});
  TwistContext ctx(std::move(base));
  ChamberGraph graph = twist::enumerate_chambers(ctx, setup.max_nodes);
  MatrixGroup w = twist::generate_w_prime(graph, ctx.kb.dim(), setup.max_group);
  report.s_l = graph.count();
  report.w_prime_order = w.order();
  report.n_classes = twist::class_count(graph, w);

  RhoTarget target = rho_target_for(setup);
  // rho-bar per conjugating edge; edges sharing a matrix must agree.
  std::map<KMatrix, RhoValue> edge_rho;
  std::map<KMatrix, const twist::Edge*> first_edge;
  for (const twist::Edge& e : graph.edges) {
    if (!e.mat) continue;
    WallData wall = wall_of_twist(ctx, graph.nodes[static_cast<size_t>(e.from)],
                                  e.beta, setup);
    wall.node = e.from;
    RhoValue r = rho_bar(ctx, wall, setup, target);
    auto it = edge_rho.find(*e.mat);
    if (it == edge_rho.end()) {
      edge_rho.emplace(*e.mat, r);
      first_edge.emplace(*e.mat, &e);
    } else {
      check_internal(it->second == r,
                     "edges sharing a k-matrix disagree on rho-bar");
    }
  }

  std::vector<RhoValue> gen_rho;
  for (const KMatrix& g : w.generators) {
    check_internal(twist::is_integral_reflection(g),
                   "conjugating twist matrix is not an integral reflection");
    gen_rho.push_back(edge_rho.at(g));
    const twist::Edge* e = first_edge.at(g);
    WallData wall = wall_of_twist(ctx, graph.nodes[static_cast<size_t>(e->from)],
                                  e->beta, setup);
    GeneratorInfo info;
    info.matrix = g;
    info.node = e->from;
    info.beta = e->beta;
    info.merge_kind = wall.merge_kind;
    if (wall.merge_kind == MergeKind::GlClassical) {
      long long witness = 0;
      info.induction = classify_wall(wall, setup, &witness);
    }
    info.rho = gen_rho.back();
    report.generators.push_back(std::move(info));
  }

  WxResult wx = w_x_subgroup(w, gen_rho, target, report.aut_x, report.aut_core);
  report.wx_order = wx.subgroup.order();
  report.count_thm13 =
      theorem13_count(report.n_classes, report.aut_x, report.aut_core);
  report.count_cor10 = corollary10_count(report.s_l, report.wx_order);

  for (const KMatrix& m : wx.subgroup.elements) {
    long long ord = matrix_order(m, wx.subgroup.order());
    if (static_cast<size_t>(ord) >= report.wx_element_orders.size()) {
      report.wx_element_orders.resize(static_cast<size_t>(ord) + 1, 0);
    }
    report.wx_element_orders[static_cast<size_t>(ord)] += 1;
    report.wx_reflections += twist::is_integral_reflection(m);
  }

  CrossCheck counts;
  counts.name = "terminal-counts-agree";
  counts.expected = report.count_thm13;
  counts.actual = report.count_cor10;
  counts.status = (counts.expected == counts.actual) ? "ok" : "failed";
  report.checks.push_back(counts);

  CrossCheck marksets;
  marksets.name = "class-mark-sets";
  marksets.expected = report.n_classes;
  marksets.actual = twist::distinct_mark_sets(graph);
  if (marksets.expected == marksets.actual) {
    marksets.status = "ok";
  } else {
    // Advisory only for D: distinct classes may share mark sets there.
    marksets.status = (setup.alg.family == Family::D) ? "skipped" : "failed";
  }
  report.checks.push_back(marksets);

  return report;
}

}  // namespace orbitcover::counting
