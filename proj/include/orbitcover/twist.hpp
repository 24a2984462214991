// twist.hpp -- the twist operation on marked diagrams, the chamber graph it
// generates, and the matrix group realizing W' on k.
//
// Twisting at a marked vertex beta applies T = w_0 of the connected component
// of beta inside (unmarked + beta) to every label.  The component is read off
// the FIXED ambient Dynkin graph: labels are U(alpha_v) with U orthogonal, so
// label pairings equal the ambient simple-root pairings.
//
// The induced map on k (matrix rows = reduction of T(alpha_{i_j}) over the
// base diagram's marked simple roots) exists exactly when T fixes Phi_I as a
// set; the twist is then called conjugating.  Class-changing twists (unequal
// gl-block swaps) move between conjugacy classes of S(L) and carry no
// k-matrix; the group What below is generated by the conjugating edges.

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "orbitcover/diagram.hpp"

namespace orbitcover::twist {

using diagram::KBasis;
using diagram::LabeledParabolic;
using rootsys::OrthogonalMap;
using rootsys::RootSystem;

// d x d exact integer matrix on the KBasis, row-major.
struct KMatrix {
  int d = 0;
  std::vector<long long> a;

  static KMatrix identity(int d);
  long long at(int r, int c) const { return a[static_cast<size_t>(r) * d + c]; }
  long long& at(int r, int c) { return a[static_cast<size_t>(r) * d + c]; }
  KMatrix multiply(const KMatrix& rhs) const;

  friend bool operator==(const KMatrix& x, const KMatrix& y) {
    return x.d == y.d && x.a == y.a;
  }
  friend bool operator<(const KMatrix& x, const KMatrix& y) {
    return x.a < y.a;  // equal d within one problem
  }
};

// True iff m is an involution fixing a corank-1 sublattice pointwise
// (i.e. m^2 = 1 and rank(m - 1) = 1): an integral reflection on k.
bool is_integral_reflection(const KMatrix& m);

// Problem-wide immutable context shared by all chamber-graph work.
struct TwistContext {
  std::shared_ptr<const RootSystem> sys;
  LabeledParabolic base;
  KBasis kb;
  std::vector<int> phi_I;          // sorted root indices of the fixed Levi set
  std::vector<char> in_phi_I;      // membership table over all roots

  // Cache: sorted unmarked-position set -> root indices of the standard
  // parabolic subsystem on those positions.
  mutable std::map<std::vector<int>, std::vector<int>> levi_cache;

  explicit TwistContext(LabeledParabolic base_diagram);

  const std::vector<int>& standard_levi(const std::vector<int>& positions) const;
};

struct TwistResult {
  LabeledParabolic node;
  OrthogonalMap t;                 // the label map applied by this twist
  std::vector<int> component;      // ambient vertex indices of the component
};

// Applies the twist at marked vertex beta (NotMarked otherwise).  New marks
// are recomputed against Phi_I; a failure of the unmarked labels to generate
// exactly Phi_I raises LeviMismatch (it would signal a broken invariant).
TwistResult twist_at(const TwistContext& ctx, const LabeledParabolic& node,
                     int beta);

// The k-action of the twist: row j = reduction of T(alpha_{i_j}) over the
// ORIGINAL marked simple roots.  Defined (returns a value) exactly when T
// fixes Phi_I as a set; class-changing twists yield nullopt.
std::optional<KMatrix> k_action(const TwistContext& ctx,
                                const LabeledParabolic& node, int beta);

// All roots whose coefficients over the node's label base are nonnegative
// with at least one marked coefficient positive, as sorted root indices: the
// canonical identity of the parabolic ("which chamber of S(L) is this").
std::vector<int> nilradical_roots(const TwistContext& ctx,
                                  const LabeledParabolic& node);

struct ChamberNode {
  LabeledParabolic parabolic;
  std::vector<int> key;                        // sorted nilradical root indices
  KMatrix acc;                                 // product of the conjugating
                                               // twist matrices along the BFS
                                               // path (class-changing steps
                                               // contribute no factor)
  std::vector<std::pair<int, int>> word;       // (node index, vertex) moves
};

struct Edge {
  int from = 0;
  int to = 0;
  int beta = 0;                 // vertex twisted at, in `from`
  std::optional<KMatrix> mat;   // k-action when conjugating
};

struct ChamberGraph {
  std::vector<ChamberNode> nodes;  // nodes[0] is the base
  std::vector<Edge> edges;         // |marks| outgoing edges per node
  long long count() const { return static_cast<long long>(nodes.size()); }
};

// BFS closure of the base diagram under twists at every marked vertex, with
// nodes keyed by nilradical root sets.  BudgetExceeded past max_nodes.
ChamberGraph enumerate_chambers(const TwistContext& ctx, long long max_nodes);

struct MatrixGroup {
  std::vector<KMatrix> elements;          // closure order; [0] = identity
  std::vector<KMatrix> generators;        // distinct edge matrices, first-seen
  std::vector<std::vector<int>> words;    // element -> generator word
  std::map<KMatrix, int> index;

  long long order() const { return static_cast<long long>(elements.size()); }
  int index_of(const KMatrix& m) const;   // -1 when absent
};

// Group generated by the k-matrices of all conjugating edges, closed under
// multiplication with word tracking.  BudgetExceeded past max_group.
MatrixGroup generate_w_prime(const ChamberGraph& graph, int kdim,
                             long long max_group);

// N = #S(L) / |What|; DivisibilityViolation when it does not divide.
long long class_count(const ChamberGraph& graph, const MatrixGroup& w);

// Advisory cross-check for class_count: the number of distinct mark-position
// sets over all nodes (equals N on both worked examples).
long long distinct_mark_sets(const ChamberGraph& graph);

}  // namespace orbitcover::twist
