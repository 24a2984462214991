// orbits.hpp -- partition calculus for classical nilpotent orbits:
// validation, collapse, induction, type I/II classification, fundamental
// groups, and core-case predicates.
//
// Partitions are weakly decreasing lists of positive integers.  r_i denotes
// the multiplicity of the value i; a "member" of a partition is a value that
// occurs in it.  The zero orbit of gl(k)/sp(k)/so(k) is written [1^k].

#pragma once

#include <string>
#include <vector>

#include "orbitcover/rootsys.hpp"

namespace orbitcover::orbits {

using Partition = std::vector<long long>;

bool is_partition(const Partition& p);           // weakly decreasing, positive
long long partition_sum(const Partition& p);
long long multiplicity(const Partition& p, long long value);
std::vector<long long> distinct_members(const Partition& p);  // decreasing
Partition transpose(const Partition& p);
std::string partition_to_string(const Partition& p);

enum class OrbitFamily { sl, sp, soB, soD };

std::string orbit_family_name(OrbitFamily f);

struct OrbitId {
  OrbitFamily family;
  long long dim;  // n for sl(n) and so(n), 2n for sp(2n)
  Partition partition;
};

// Accepts iff the partition is weakly decreasing and positive, sums to dim,
// satisfies the family parity rule (sp: odd parts have even multiplicity;
// so: even parts have even multiplicity), and — for soD — is not very even
// (all parts even), since the I/II orbit pair is rejected by design.
// Errors: SumMismatch, ParityViolation, VeryEvenUnsupported.
void validate_orbit(const OrbitId& o);

// The unique dominance-largest partition below p satisfying the parity rule
// of the family (B/D: so rule, C: sp rule).  Computed greedily; DEFINED by the
// brute-force maximum, which collapse_oracle realizes and the tests compare
// against exhaustively.
// PreconditionViolated for family C with odd sum (no valid partition exists);
// UnsupportedFamily for A.
Partition x_collapse(rootsys::Family family, const Partition& p);

// Brute force: enumerate every partition of sum(p) dominated by p and valid
// for the family, assert the set has a unique dominance-maximum, return it.
// Same errors as x_collapse.
Partition collapse_oracle(rootsys::Family family, const Partition& p);

// All partitions of n in reverse-lexicographic order (used by the oracle and
// the oracle CLI).
std::vector<Partition> all_partitions(long long n);

// True iff a dominates b (same sum, prefix sums of a >= prefix sums of b).
bool dominates(const Partition& a, const Partition& b);

// Collapse family of an orbit family: sp -> C, soB -> B, soD -> D.
// UnsupportedFamily for sl.
rootsys::Family collapse_family(OrbitFamily f);

// Lusztig-Spaltenstein step (gl block into the classical factor):
// x_collapse(family, p (+) 2q) where (+) is componentwise addition after
// zero-padding.  q must be a partition of k (InvalidBlock otherwise).
Partition induce(OrbitFamily family, const Partition& p, long long k,
                 const Partition& q);

// gl block merge: the partition whose transpose is q1^t + q2^t.
Partition gl_merge(const Partition& q1, const Partition& q2);

// Inverse of a type II induction at the even (sp) / odd (so) member i with
// multiplicity exactly 2: parts > i drop by 2, the two i's become two (i-1)'s
// (dropped when zero), smaller parts are unchanged, result re-sorted.
// PreconditionViolated when i has the wrong parity or multiplicity.
Partition un_induce(OrbitFamily family, const Partition& pbar, long long i);

enum class InductionKind { TypeI, TypeII };

struct InductionStep {
  long long k;          // gl block size
  Partition q;          // orbit carried by the block ([1^k] = zero orbit)
  InductionKind kind;
  int degree;           // 2 for TypeII, 1 for TypeI
};

// Classifies the induction p -> pbar with a gl(k) block.  TypeII iff some
// member i of pbar has the family parity (even for sp, odd for so),
// multiplicity exactly 2, un_induce(pbar, i) == p, and #{parts of pbar > i}
// == k - 1 (this count pins the witness uniquely when it exists).
// sl inductions are always TypeI.  ChainMismatch when sum(pbar) != sum(p)+2k.
InductionKind classify_induction(OrbitFamily family, const Partition& p,
                                 const Partition& pbar, long long k,
                                 long long* witness_out = nullptr);

// True iff every odd member has multiplicity exactly 1.
bool is_rather_odd(const Partition& p);

// Fundamental-group order of the orbit:
//   zero partition [1^m] (any family) -> 1;
//   sp -> 2^b with b = #distinct even members;
//   so, not rather odd -> 2^max(a-1,0) with a = #distinct odd members;
//   so, rather odd -> 2^(1+max(a-1,0)).
// UnsupportedFamily for sl.
long long pi1_order(const OrbitId& o);

enum class CoreCase { A, B1, B2, B3, NotACore };

std::string core_case_name(CoreCase c);

// Which core shape the partition satisfies, by direct condition evaluation
// (d = largest part):
//   sp, case A:  r_i even for odd i; r_i != 0 and r_i != 2 for even i <= d.
//   so, case B3: r_i even for even i; r_i = 1 for EACH odd i <= d.
//   so, case B2: r_i even for even i; r_i != 0, != 2 for odd i <= d;
//                r_i >= 3 for some odd i.
//   so, case B1: rather odd; r_i even for even i; adjacent members differ by
//                at most 4, by exactly 4 only when both odd; smallest member
//                < 4.  (Only the classical-factor conditions; the gl-block
//                matching is exercised by check_chain.)
// Precedence for so: B3, then B2, then B1.
CoreCase core_case(OrbitFamily family, const Partition& p);

// Folds induce over the steps (applied first to last), classifies each step,
// and verifies the result equals the target partition.  ChainMismatch (with
// the failing step index in the message) on any inconsistency, including
// family or dimension mismatches between core and target.
std::vector<InductionStep> check_chain(const OrbitId& core,
                                       const std::vector<std::pair<long long, Partition>>& steps,
                                       const OrbitId& target);

}  // namespace orbitcover::orbits
