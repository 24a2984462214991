// rootsys.hpp -- classical root systems A/B/C/D in standard integer
// coordinates, root arithmetic, and longest-element maps of parabolic
// subsystems.
//
// Conventions (fixed once, used everywhere):
//   * A_n lives in the sum-zero hyperplane of an (n+1)-space, roots e_i - e_j;
//     B_n/C_n/D_n live in an n-space with the usual short/long roots.
//   * Simple roots are indexed 1..n in Bourbaki order: the D fork sits at the
//     last two indices, the B/C double bond at the last index.
//   * A root is positive iff its first nonzero coordinate is positive.
//   * Every Weyl-group element appearing here is an integer orthogonal matrix:
//     for classical root shapes 2(v,a)/(a,a) is an integer whenever v is, so
//     no rational arithmetic is needed outside of linear solves.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "orbitcover/rational.hpp"

namespace orbitcover::rootsys {

enum class Family { A, B, C, D };

char family_letter(Family f);
Family family_from_letter(char c);  // throws ParseError on unknown letters

struct AlgebraFamily {
  Family family;
  int rank;  // Cartan rank n
};

// Integer coordinates in the standard realization.  (The abstract type allows
// exact rationals; every actual root and label is integral, and the few
// operations that need fractions solve with Rat explicitly.)
using RootVector = std::vector<long long>;

long long dot(const RootVector& a, const RootVector& b);
RootVector negate(const RootVector& v);
bool is_positive_vector(const RootVector& v);  // first nonzero coordinate > 0

// Exact integer matrix acting on the coordinate space by v -> M v.
struct OrthogonalMap {
  int dim = 0;
  // row-major, m[r*dim + c]
  std::vector<long long> m;

  static OrthogonalMap identity(int d);
  long long at(int r, int c) const { return m[static_cast<size_t>(r) * dim + c]; }
  long long& at(int r, int c) { return m[static_cast<size_t>(r) * dim + c]; }

  RootVector apply(const RootVector& v) const;
  OrthogonalMap compose(const OrthogonalMap& other) const;  // this after other
  OrthogonalMap transpose() const;
  bool is_identity() const;

  // In-place right-multiplication by the reflection s_alpha, done as a rank-1
  // update: M <- M - (M alpha) c^t with c = 2 alpha / (alpha,alpha), which is
  // an integer vector for every classical root shape.
  void right_multiply_reflection(const RootVector& alpha);

  friend bool operator==(const OrthogonalMap& a, const OrthogonalMap& b) {
    return a.dim == b.dim && a.m == b.m;
  }
};

struct RootSystem {
  AlgebraFamily alg;
  int dim;                              // coordinate dimension (n or n+1)
  std::vector<RootVector> simple_roots; // index 0 holds alpha_1
  std::vector<RootVector> all_roots;    // sorted lexicographically

  // all_roots[i] written in the simple-root base (always integers, all of one
  // sign); row i belongs to all_roots[i].
  std::vector<std::vector<long long>> simple_coeffs;

  int root_index(const RootVector& v) const;   // -1 when v is not a root
  bool is_root(const RootVector& v) const { return root_index(v) >= 0; }

  // Image of the root permutation induced by an orthogonal map: entry i is
  // root_index(map(all_roots[i])).  Aborts if the map does not permute Phi.
  std::vector<int> root_permutation(const OrthogonalMap& map) const;

 private:
  std::map<RootVector, int> index_;
  friend RootSystem build_root_system(AlgebraFamily fam);
};

// Builds the full root system with simple roots in Bourbaki order.
// InvalidRank: A/B/C need rank >= 1, D needs rank >= 2.
RootSystem build_root_system(AlgebraFamily fam);

// The reflection s_alpha as an integer matrix.
OrthogonalMap reflection(int dim, const RootVector& alpha);

// Longest element w_0 of the subsystem based by the given roots, computed
// greedily: w <- id; while some base root a has w(a) positive, w <- w s_a.
// The result is an involution mapping the subsystem's positive roots onto its
// negative roots and fixing every root orthogonal to the whole base.
// NotABase: inputs must be roots of sys, linearly independent, and pairwise
// obtuse ((a,b) <= 0 for distinct a, b).
OrthogonalMap longest_element(const RootSystem& sys,
                              const std::vector<RootVector>& base);

// Unique rational coefficients of v in the given linearly independent base.
// NotInSpan when v is outside the span (or the base is dependent).
std::vector<Rat> express_in_base(const RootVector& v,
                                 const std::vector<RootVector>& base);

// All roots lying in the nonnegative or nonpositive rational cone of the
// given base vectors: the subsystem the base generates.  (For bases obtained
// from subsets of simple roots by a root-preserving orthogonal map this is
// exactly Phi intersected with the span.)
std::vector<RootVector> subsystem_roots(const RootSystem& sys,
                                        const std::vector<RootVector>& base);

// Roots of the standard parabolic subsystem spanned by the simple roots at
// the given 1-based positions, returned as indices into all_roots.
std::vector<int> standard_subsystem_indices(const RootSystem& sys,
                                            const std::vector<int>& positions);

}  // namespace orbitcover::rootsys
