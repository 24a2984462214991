// diagram.hpp -- marked Dynkin diagrams with root labels, flag encodings for
// classical groups, Levi extraction, and the k-coordinate reduction.
//
// A LabeledParabolic stores the ambient root system, an integer orthogonal
// map U with label(v) = U(alpha_v), and the marked vertex set.  Two diagrams
// reachable from one another by twists always share the Levi root set Phi_I
// (the subsystem generated by the BASE diagram's unmarked simple roots);
// vertex v is marked exactly when its label falls outside Phi_I.

#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orbitcover/rootsys.hpp"

namespace orbitcover::diagram {

using rootsys::OrthogonalMap;
using rootsys::RootSystem;
using rootsys::RootVector;

struct FlagSpec {
  rootsys::AlgebraFamily family;        // ambient algebra
  std::vector<long long> half_blocks;   // (b_1, ..., b_s)
  long long middle = 0;                 // m
};

struct LabeledParabolic {
  std::shared_ptr<const RootSystem> sys;
  OrthogonalMap u;                      // label(v) = u(alpha_v)
  std::vector<int> marks;               // sorted, 1-based vertex indices

  RootVector label(int vertex) const;   // 1-based
  std::vector<RootVector> labels() const;
  bool is_marked(int vertex) const;
};

// Ordered marked basis of k: the base diagram's marked vertices i_1 < ... <
// i_d; k is the quotient of the root span by span(Phi_I), with the residues
// of alpha_{i_j} as basis.
struct KBasis {
  std::vector<int> marked_indices;
  int dim() const { return static_cast<int>(marked_indices.size()); }
};

// Marks at the partial sums of half_blocks; labels = simple roots (u = id).
// Checks 2*sum(b) + m == ambient vector-space dimension (2n for C/D, 2n+1
// for B) -> DimensionMismatch otherwise.  Family D demands middle >= 4 so
// that no mark can reach the fork: smaller middles would need the two fork
// choices (very even orbits) distinguished -> VeryEvenAmbiguity.  Family A
// carries no invariant form and is rejected with UnsupportedFamily.
LabeledParabolic from_flag(const FlagSpec& f);

// The closed subsystem generated by the unmarked labels (all roots in their
// nonnegative / nonpositive cone), sorted.
std::vector<RootVector> levi_roots(const LabeledParabolic& p);

// Coefficients (c_1, ..., c_d) with v == sum c_j alpha_{i_j} modulo
// span(Phi_I); equivalently the marked coordinates of v's simple-root
// coefficient vector.  NotInSpan when v lies outside span(Phi).
std::vector<Rat> k_reduce(const RootVector& v, const LabeledParabolic& base,
                          const KBasis& kb);

// Marked vertices of a relabeled diagram: {v : labels[v] not in phi_I}.
// LeviMismatch unless the unmarked labels generate exactly phi_I.
// labels are 1-based via labels[0] = vertex 1; phi_I is a sorted root list.
std::vector<int> marks_of(const RootSystem& sys,
                          const std::vector<RootVector>& labels,
                          const std::vector<RootVector>& phi_I);

// ASCII rendering, one line per vertex: "index  [*|o]  label-as-integer-
// combination" with labels written in the simple roots a1..an.
std::string render(const LabeledParabolic& p);

// Helper shared with twist/counting: a label expressed as an integer
// combination of simple roots, e.g. "a9 + 2 a10 + ... + a19 + a20".
std::string format_in_simples(const RootSystem& sys, const RootVector& v);

}  // namespace orbitcover::diagram
