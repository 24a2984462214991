// orbits.cpp -- partition calculus: collapse (greedy + brute-force oracle),
// induction, type classification, fundamental groups, core cases, chains.

#include "orbitcover/orbits.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace orbitcover::orbits {

using rootsys::Family;

bool is_partition(const Partition& p) {
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) return false;
    if (i > 0 && p[i] > p[i - 1]) return false;
  }
  return true;
}

long long partition_sum(const Partition& p) {
  long long s = 0;
  for (long long x : p) s = checked_add(s, x);
  return s;
}

long long multiplicity(const Partition& p, long long value) {
  long long r = 0;
  for (long long x : p) r += (x == value);
  return r;
}

std::vector<long long> distinct_members(const Partition& p) {
  std::vector<long long> out;
  for (long long x : p) {
    if (out.empty() || out.back() != x) out.push_back(x);
  }
  return out;
}

Partition transpose(const Partition& p) {
  Partition t;
  if (p.empty()) return t;
  for (long long row = 1; row <= p[0]; ++row) {
    long long count = 0;
    for (long long x : p) count += (x >= row);
    t.push_back(count);
  }
  return t;
}

std::string partition_to_string(const Partition& p) {
  std::string s = "[";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  s += "]";
  return s;
}

std::string orbit_family_name(OrbitFamily f) {
  switch (f) {
    case OrbitFamily::sl: return "sl";
    case OrbitFamily::sp: return "sp";
    case OrbitFamily::soB: return "soB";
    case OrbitFamily::soD: return "soD";
  }
  return "?";
}

// so rule: even parts pair up; sp rule: odd parts pair up.
static bool satisfies_parity(Family collapse_fam, const Partition& p) {
  long long bad_parity = (collapse_fam == Family::C) ? 1 : 0;
  std::map<long long, long long> mult;
  for (long long x : p) ++mult[x];
  for (const auto& [value, count] : mult) {
    if ((value % 2) == bad_parity && (count % 2) != 0) return false;
  }
  return true;
}

void validate_orbit(const OrbitId& o) {
  if (!is_partition(o.partition)) {
    fail(ErrorCode::SumMismatch, "parts must be weakly decreasing and positive");
  }
  long long s = partition_sum(o.partition);
  if (s != o.dim) {
    fail(ErrorCode::SumMismatch,
         "partition " + partition_to_string(o.partition) + " sums to " +
             std::to_string(s) + ", ambient dimension is " + std::to_string(o.dim));
  }
  // Ambient-dimension parity implied by the family.
  if ((o.family == OrbitFamily::sp || o.family == OrbitFamily::soD) &&
      (o.dim % 2) != 0) {
    fail(ErrorCode::SumMismatch, "sp/soD ambient dimension must be even");
  }
  if (o.family == OrbitFamily::soB && (o.dim % 2) != 1) {
    fail(ErrorCode::SumMismatch, "soB ambient dimension must be odd");
  }
  if (o.family == OrbitFamily::sl) return;  // no parity constraint
  if (!satisfies_parity(collapse_family(o.family), o.partition)) {
    const char* rule = (o.family == OrbitFamily::sp)
                           ? "odd parts need even multiplicity for sp"
                           : "even parts need even multiplicity for so";
    fail(ErrorCode::ParityViolation,
         partition_to_string(o.partition) + ": " + rule);
  }
  if (o.family == OrbitFamily::soD && !o.partition.empty()) {
    bool all_even = true;
    for (long long x : o.partition) all_even &= (x % 2 == 0);
    if (all_even) {
      fail(ErrorCode::VeryEvenUnsupported,
           "very even soD partition " + partition_to_string(o.partition) +
               " (orbit pair I/II) is rejected by design");
    }
  }
}

rootsys::Family collapse_family(OrbitFamily f) {
  switch (f) {
    case OrbitFamily::sp: return Family::C;
    case OrbitFamily::soB: return Family::B;
    case OrbitFamily::soD: return Family::D;
    case OrbitFamily::sl:
      fail(ErrorCode::UnsupportedFamily, "sl has no collapse");
  }
  fail(ErrorCode::Internal, "bad orbit family");
}

static void check_collapse_family(Family family, const Partition& p) {
  if (family == Family::A) {
    fail(ErrorCode::UnsupportedFamily, "family A has no collapse");
  }
  check_internal(is_partition(p), "collapse of a non-partition");
  if (family == Family::C && partition_sum(p) % 2 != 0) {
    fail(ErrorCode::PreconditionViolated,
         "no valid sp partition of odd sum " + std::to_string(partition_sum(p)));
  }
}

Partition x_collapse(Family family, const Partition& p) {
  check_collapse_family(family, p);
  long long bad_parity = (family == Family::C) ? 1 : 0;
  Partition q = p;
  for (;;) {
    // Largest value of the constrained parity with odd multiplicity.
    long long v = 0;
    for (size_t i = 0; i < q.size(); ++i) {
      long long x = q[i];
      if ((x % 2) == bad_parity && multiplicity(q, x) % 2 != 0 && x > v) v = x;
    }
    if (v == 0) break;
    // Decrement the LAST copy of v, then re-add the unit at the earliest
    // later slot that keeps the list weakly decreasing (possibly a new slot).
    size_t i = 0;
    for (size_t j = 0; j < q.size(); ++j) {
      if (q[j] == v) i = j;
    }
    q[i] -= 1;
    size_t j = i + 1;
    while (j < q.size() && q[j] + 1 > q[j - 1]) ++j;
    if (j == q.size()) {
      q.push_back(1);
      check_internal(q[j - 1] >= 1, "collapse appended below zero");
    } else {
      q[j] += 1;
    }
    // The decremented copy may have fallen below its right neighbour when the
    // unit moved further right; restore sortedness (values differ by one, so
    // a stable re-sort is enough and cheap at these sizes).
    std::sort(q.rbegin(), q.rend());
    while (!q.empty() && q.back() == 0) q.pop_back();
  }
  check_internal(satisfies_parity(family, q), "collapse left parity violated");
  return q;
}

std::vector<Partition> all_partitions(long long n) {
  // Reverse-lexicographic recursive enumeration with bounded largest part.
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, long long rest, long long cap) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (long long next = std::min(rest, cap); next >= 1; --next) {
      cur.push_back(next);
      self(self, rest - next, next);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

bool dominates(const Partition& a, const Partition& b) {
  if (partition_sum(a) != partition_sum(b)) return false;
  long long pa = 0, pb = 0;
  size_t len = std::max(a.size(), b.size());
  for (size_t i = 0; i < len; ++i) {
    pa += i < a.size() ? a[i] : 0;
    pb += i < b.size() ? b[i] : 0;
    if (pa < pb) return false;
  }
  return true;
}

Partition collapse_oracle(Family family, const Partition& p) {
  check_collapse_family(family, p);
  std::vector<Partition> valid;
  for (const Partition& q : all_partitions(partition_sum(p))) {
    if (satisfies_parity(family, q) && dominates(p, q)) valid.push_back(q);
  }
  check_internal(!valid.empty(), "no valid partition dominated by input");
  // The maximum must dominate every other candidate, not merely be maximal.
  const Partition* best = &valid[0];
  for (const Partition& q : valid) {
    if (dominates(q, *best)) best = &q;
  }
  for (const Partition& q : valid) {
    check_internal(dominates(*best, q),
                   "dominance maximum among valid partitions is not unique");
  }
  return *best;
}

Partition induce(OrbitFamily family, const Partition& p, long long k,
                 const Partition& q) {
  if (!is_partition(q) || partition_sum(q) != k) {
    fail(ErrorCode::InvalidBlock,
         "block orbit " + partition_to_string(q) + " is not a partition of " +
             std::to_string(k));
  }
  Partition sum = p;
  if (sum.size() < q.size()) sum.resize(q.size(), 0);
  for (size_t i = 0; i < q.size(); ++i) {
    sum[i] = checked_add(sum[i], checked_mul(2, q[i]));
  }
  std::sort(sum.rbegin(), sum.rend());
  while (!sum.empty() && sum.back() == 0) sum.pop_back();
  return x_collapse(collapse_family(family), sum);
}

Partition gl_merge(const Partition& q1, const Partition& q2) {
  check_internal(is_partition(q1) && is_partition(q2), "gl_merge inputs");
  Partition t1 = transpose(q1), t2 = transpose(q2);
  if (t1.size() < t2.size()) t1.resize(t2.size(), 0);
  for (size_t i = 0; i < t2.size(); ++i) t1[i] = checked_add(t1[i], t2[i]);
  return transpose(t1);
}

Partition un_induce(OrbitFamily family, const Partition& pbar, long long i) {
  long long want_parity = (family == OrbitFamily::sp) ? 0 : 1;
  if (family == OrbitFamily::sl) {
    fail(ErrorCode::PreconditionViolated, "sl inductions have no inverse step");
  }
  if ((i % 2) != want_parity) {
    fail(ErrorCode::PreconditionViolated,
         "member " + std::to_string(i) + " has the wrong parity");
  }
  if (multiplicity(pbar, i) != 2) {
    fail(ErrorCode::PreconditionViolated,
         "member " + std::to_string(i) + " must have multiplicity exactly 2");
  }
  Partition p;
  for (long long x : pbar) {
    long long y = (x > i) ? x - 2 : (x == i ? i - 1 : x);
    if (y > 0) p.push_back(y);
  }
  std::sort(p.rbegin(), p.rend());
  return p;
}

InductionKind classify_induction(OrbitFamily family, const Partition& p,
                                 const Partition& pbar, long long k,
                                 long long* witness_out) {
  if (partition_sum(pbar) != checked_add(partition_sum(p), checked_mul(2, k))) {
    fail(ErrorCode::ChainMismatch,
         "induced partition " + partition_to_string(pbar) +
             " does not extend " + partition_to_string(p) + " by a gl(" +
             std::to_string(k) + ") block");
  }
  if (family == OrbitFamily::sl) return InductionKind::TypeI;
  long long want_parity = (family == OrbitFamily::sp) ? 0 : 1;
  for (long long i : distinct_members(pbar)) {
    if ((i % 2) != want_parity) continue;
    if (multiplicity(pbar, i) != 2) continue;
    // Witness constraint: exactly k-1 parts of pbar lie above the witness.
    long long above = 0;
    for (long long x : pbar) above += (x > i);
    if (above != k - 1) continue;
    if (un_induce(family, pbar, i) == p) {
      if (witness_out) *witness_out = i;
      return InductionKind::TypeII;
    }
  }
  return InductionKind::TypeI;
}

bool is_rather_odd(const Partition& p) {
  for (long long i : distinct_members(p)) {
    if (i % 2 != 0 && multiplicity(p, i) != 1) return false;
  }
  return true;
}

static bool is_zero_partition(const Partition& p) {
  for (long long x : p) {
    if (x != 1) return false;
  }
  return true;
}

long long pi1_order(const OrbitId& o) {
  validate_orbit(o);
  if (o.family == OrbitFamily::sl) {
    fail(ErrorCode::UnsupportedFamily, "pi1_order is not defined for sl here");
  }
  // The zero orbit is a point; the closed formulas below overshoot on it
  // (so [1] is vacuously rather odd).
  if (is_zero_partition(o.partition)) return 1;
  if (o.family == OrbitFamily::sp) {
    long long b = 0;
    for (long long i : distinct_members(o.partition)) b += (i % 2 == 0);
    return 1LL << b;
  }
  long long a = 0;
  for (long long i : distinct_members(o.partition)) a += (i % 2 != 0);
  long long exponent = std::max(a - 1, 0LL);
  if (is_rather_odd(o.partition)) exponent += 1;
  return 1LL << exponent;
}

std::string core_case_name(CoreCase c) {
  switch (c) {
    case CoreCase::A: return "A";
    case CoreCase::B1: return "B1";
    case CoreCase::B2: return "B2";
    case CoreCase::B3: return "B3";
    case CoreCase::NotACore: return "NotACore";
  }
  return "?";
}

CoreCase core_case(OrbitFamily family, const Partition& p) {
  check_internal(is_partition(p), "core_case of a non-partition");
  long long d = p.empty() ? 0 : p[0];
  if (family == OrbitFamily::sp) {
    // (i) r_i even for odd i; (ii) r_i != 0 and (iii) r_i != 2 for even i <= d.
    for (long long i = 1; i <= d; ++i) {
      long long r = multiplicity(p, i);
      if (i % 2 != 0 && r % 2 != 0) return CoreCase::NotACore;
      if (i % 2 == 0 && (r == 0 || r == 2)) return CoreCase::NotACore;
    }
    return CoreCase::A;
  }
  if (family == OrbitFamily::sl) return CoreCase::NotACore;

  // so families.  All three cases share (i): r_i even for even i.
  for (long long i = 2; i <= d; i += 2) {
    if (multiplicity(p, i) % 2 != 0) return CoreCase::NotACore;
  }
  // B3: r_i = 1 for EACH odd i <= d (all odd values below the top present
  // exactly once).
  bool b3 = true;
  for (long long i = 1; i <= d; i += 2) {
    if (multiplicity(p, i) != 1) { b3 = false; break; }
  }
  if (b3) return CoreCase::B3;
  // B2: r_i != 0, != 2 for odd i <= d, and r_i >= 3 somewhere odd.
  bool b2 = true, some_big = false;
  for (long long i = 1; i <= d; i += 2) {
    long long r = multiplicity(p, i);
    if (r == 0 || r == 2) { b2 = false; break; }
    if (r >= 3) some_big = true;
  }
  if (b2 && some_big) return CoreCase::B2;
  // B1 classical-factor conditions: rather odd; adjacent members differ by at
  // most 4, by exactly 4 only when both are odd; smallest member < 4.
  if (!is_rather_odd(p) || p.empty()) return CoreCase::NotACore;
  std::vector<long long> members = distinct_members(p);
  for (size_t t = 0; t + 1 < members.size(); ++t) {
    long long gap = members[t] - members[t + 1];
    if (gap > 4) return CoreCase::NotACore;
    if (gap == 4 && (members[t] % 2 == 0 || members[t + 1] % 2 == 0)) {
      return CoreCase::NotACore;
    }
  }
  if (members.back() >= 4) return CoreCase::NotACore;
  return CoreCase::B1;
}

std::vector<InductionStep> check_chain(
    const OrbitId& core, const std::vector<std::pair<long long, Partition>>& steps,
    const OrbitId& target) {
  validate_orbit(core);
  validate_orbit(target);
  if (core.family != target.family) {
    fail(ErrorCode::ChainMismatch, "core and target family differ");
  }
  long long blocks_total = 0;
  for (const auto& [k, q] : steps) blocks_total = checked_add(blocks_total, k);
  if (checked_add(core.dim, checked_mul(2, blocks_total)) != target.dim) {
    fail(ErrorCode::ChainMismatch,
         "core dimension " + std::to_string(core.dim) + " plus blocks does not "
         "reach target dimension " + std::to_string(target.dim));
  }
  std::vector<InductionStep> out;
  Partition cur = core.partition;
  for (size_t idx = 0; idx < steps.size(); ++idx) {
    const auto& [k, q] = steps[idx];
    Partition next;
    try {
      next = induce(core.family, cur, k, q);
    } catch (const Error& e) {
      fail(ErrorCode::ChainMismatch,
           "step " + std::to_string(idx + 1) + ": " + e.what());
    }
    long long witness = 0;
    InductionKind kind = classify_induction(core.family, cur, next, k, &witness);
    out.push_back(InductionStep{k, q, kind,
                                kind == InductionKind::TypeII ? 2 : 1});
    cur = next;
  }
  if (cur != target.partition) {
    fail(ErrorCode::ChainMismatch,
         "chain ends at " + partition_to_string(cur) + ", target is " +
             partition_to_string(target.partition) + " (step " +
             std::to_string(steps.size()) + ")");
  }
  return out;
}

}  // namespace orbitcover::orbits
