// counting.hpp -- wall classification, the homomorphism rho-bar on twist
// generators, W_X extraction, and the terminalization counts with
// cross-checks.
//
// A wall is what a twist merges when the mark at beta is erased: either two
// gl blocks (GlGl) or the last gl block with the classical middle factor
// (GlClassical; exactly when beta is the node's largest mark).  GlClassical
// walls are classified as type I/II inductions of the middle core; a type II
// wall contributes the nonzero rho-bar value indexed by its witness member
// transported outward through the node's remaining blocks.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitcover/orbits.hpp"
#include "orbitcover/twist.hpp"

namespace orbitcover::counting {

using orbits::OrbitFamily;
using orbits::OrbitId;
using orbits::Partition;
using twist::ChamberGraph;
using twist::KMatrix;
using twist::MatrixGroup;
using twist::TwistContext;

enum class CoverKind { Universal, B3Special };

struct ProblemSetup {
  rootsys::AlgebraFamily alg;                 // ambient algebra (B, C or D)
  OrbitId target;                             // orbit of the ambient algebra
  std::vector<long long> half_blocks;         // flag data (b_1, ..., b_s)
  long long middle = 0;                       // m
  Partition middle_core;                      // orbit of the middle factor
  std::vector<Partition> gl_orbits;           // per block; [1^b] = zero orbit
  CoverKind cover = CoverKind::Universal;
  long long max_nodes = 1000000;
  long long max_group = 1000000;

  OrbitFamily orbit_family() const;           // sp / soB / soD from alg
  OrbitId middle_orbit() const;               // middle_core as an OrbitId
};

enum class MergeKind { GlGl, GlClassical };

struct WallData {
  int node = 0;                 // chamber-node index
  int beta = 0;                 // marked vertex twisted at
  MergeKind merge_kind;
  long long k_t = 0;            // merged gl-block size (GlClassical)
  Partition gl_orbit;           // GlClassical: the merging block's orbit;
                                // GlGl: gl_merge of the two blocks
  // GlClassical bookkeeping for rho-bar:
  int block_index = -1;                 // original block merged with the middle
  std::vector<int> remaining_blocks;    // original indices, inside-out order
};

// Element of the rho-bar target.
//   sp: (Z/2)^m with coordinates the distinct even members of the target
//       partition, increasing.
//   so: (Z/2)^m over the distinct odd members, modulo the all-ones vector
//       (values are canonicalized: highest coordinate cleared).
struct RhoValue {
  std::vector<int> bits;  // one per coordinate

  bool is_zero() const;
  friend bool operator==(const RhoValue& x, const RhoValue& y) {
    return x.bits == y.bits;
  }
  friend bool operator<(const RhoValue& x, const RhoValue& y) {
    return x.bits < y.bits;
  }
};

struct RhoTarget {
  bool quotient_by_all_ones = false;          // so families
  std::vector<long long> coordinate_members;  // increasing member values

  RhoValue zero() const;
  RhoValue basis_vector(long long member) const;  // canonicalized
  RhoValue add(const RhoValue& x, const RhoValue& y) const;
};

RhoTarget rho_target_for(const ProblemSetup& setup);

// Reads off what erasing the mark beta of the node merges.  The original
// block occupying a slot range is identified through the node's coordinate
// permutation (labels are U(alpha_v), and U maps coordinate lines to
// coordinate lines).
WallData wall_of_twist(const TwistContext& ctx, const twist::ChamberNode& node,
                       int beta, const ProblemSetup& setup);

// rho-bar of one wall: GlGl -> 0; GlClassical -> classify the induction of
// the middle core by (k_t, gl_orbit); type I -> 0; type II -> the basis
// vector of the witness member transported outward through the remaining
// blocks.  Transport of member value v across a block (k, q): every part
// equal to v gains 2 q[position]; the increments must agree and the new value
// must be a member of the next partition -- otherwise UnsupportedMerge.
RhoValue rho_bar(const TwistContext& ctx, const WallData& wall,
                 const ProblemSetup& setup, const RhoTarget& target);

// |W_X| = |W'| * autCore / autX; NonIntegralOrder when fractional.
long long w_x_order(long long w_prime_order, long long aut_x, long long aut_core);

struct WxResult {
  MatrixGroup subgroup;              // kernel of rho-bar
  long long image_order = 0;
};

// Extends rho-bar multiplicatively from the generators over the whole group,
// asserting well-definedness on every product (two words reaching the same
// matrix must agree), then splits off the kernel.  SurjectivityFailure when
// the image order differs from autX/autCore; OrderMismatch when the kernel
// order differs from w_x_order.
WxResult w_x_subgroup(const MatrixGroup& w, const std::vector<RhoValue>& gen_rho,
                      const RhoTarget& target, long long aut_x, long long aut_core);

// N * autX / autCore (NonIntegralCount) and #S(L) / |W_X|
// (DivisibilityViolation).
long long theorem13_count(long long n_classes, long long aut_x, long long aut_core);
long long corollary10_count(long long s_l, long long wx_order);

struct CrossCheck {
  std::string name;
  long long expected = 0;
  long long actual = 0;
  std::string status;  // "ok", "failed", "skipped"
};

struct GeneratorInfo {
  KMatrix matrix;
  int node = 0;
  int beta = 0;
  MergeKind merge_kind;
  std::optional<orbits::InductionKind> induction;  // GlClassical only
  RhoValue rho;
};

struct AnalysisReport {
  long long s_l = 0;            // #S(L)
  long long w_prime_order = 0;  // |What|
  long long n_classes = 0;      // N
  long long pi1 = 0;            // |pi_1(O)| of the target orbit
  long long aut_x = 0;          // |Aut(X/O-bar)|
  long long aut_core = 0;       // |Aut((X')^0/O')|
  long long wx_order = 0;       // |W_X|
  long long count_thm13 = 0;
  long long count_cor10 = 0;

  std::vector<orbits::InductionStep> chain;
  std::vector<GeneratorInfo> generators;         // one row per distinct matrix
  std::vector<long long> wx_element_orders;      // histogram index = order
  long long wx_reflections = 0;
  std::vector<CrossCheck> checks;

  bool all_checks_passed() const;
};

// Full pipeline: validation (orbits, chain, cover consistency), chamber
// enumeration, W' generation, class count, rho-bar on all conjugating edges
// (with per-matrix agreement asserts), W_X extraction, both counts.
// The cover-consistency rule rejects inputs whose claimed cover cannot arise
// from the chain: autX must equal 2^(#TypeII steps) * autCore.
AnalysisReport analyze(const ProblemSetup& setup);

// Validation-only prefix of analyze (parse-time checks for the CLI): orbit
// and flag legality, chain verification, cover consistency.  Returns the
// classified chain.
std::vector<orbits::InductionStep> validate_setup(const ProblemSetup& setup);

}  // namespace orbitcover::counting
