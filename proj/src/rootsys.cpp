// rootsys.cpp -- classical root systems, reflections, and greedy longest
// elements, all in exact integer arithmetic.

#include "orbitcover/rootsys.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace orbitcover::rootsys {

char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
  }
  return '?';
}

Family family_from_letter(char c) {
  switch (c) {
    case 'A': return Family::A;
    case 'B': return Family::B;
    case 'C': return Family::C;
    case 'D': return Family::D;
    default:
      fail(ErrorCode::ParseError,
           std::string("unknown family letter '") + c + "'");
  }
}

long long dot(const RootVector& a, const RootVector& b) {
  check_internal(a.size() == b.size(), "dot of mismatched dimensions");
  long long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

RootVector negate(const RootVector& v) {
  RootVector r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

bool is_positive_vector(const RootVector& v) {
  for (long long x : v) {
    if (x != 0) return x > 0;
  }
  return false;
}

OrthogonalMap OrthogonalMap::identity(int d) {
  OrthogonalMap m;
  m.dim = d;
  m.m.assign(static_cast<size_t>(d) * d, 0);
  for (int i = 0; i < d; ++i) m.at(i, i) = 1;
  return m;
}

RootVector OrthogonalMap::apply(const RootVector& v) const {
  check_internal(static_cast<int>(v.size()) == dim, "apply: dimension mismatch");
  RootVector r(dim, 0);
  // Roots have at most two nonzero coordinates; skipping zeros keeps the
  // chamber enumeration linear instead of quadratic in the rank.
  for (int c = 0; c < dim; ++c) {
    if (v[c] == 0) continue;
    for (int r_i = 0; r_i < dim; ++r_i) {
      r[r_i] = checked_add(r[r_i], checked_mul(at(r_i, c), v[c]));
    }
  }
  return r;
}

OrthogonalMap OrthogonalMap::compose(const OrthogonalMap& other) const {
  check_internal(dim == other.dim, "compose: dimension mismatch");
  OrthogonalMap r;
  r.dim = dim;
  r.m.assign(m.size(), 0);
  for (int i = 0; i < dim; ++i) {
    for (int k = 0; k < dim; ++k) {
      long long aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < dim; ++j) {
        r.at(i, j) = checked_add(r.at(i, j), checked_mul(aik, other.at(k, j)));
      }
    }
  }
  return r;
}

OrthogonalMap OrthogonalMap::transpose() const {
  OrthogonalMap r;
  r.dim = dim;
  r.m.assign(m.size(), 0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool OrthogonalMap::is_identity() const {
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

void OrthogonalMap::right_multiply_reflection(const RootVector& alpha) {
  // s_a(v) = v - (2(v,a)/(a,a)) a, so  M s_a = M - (M a) c^t  with
  // c = 2a/(a,a).  For classical roots (a,a) is 1, 2 or 4 and c is integral:
  // (a,a)=2 gives c=a, (a,a)=1 gives c=2a, (a,a)=4 (long C roots) c=a/2.
  long long norm = dot(alpha, alpha);
  RootVector c(alpha.size());
  for (size_t i = 0; i < alpha.size(); ++i) {
    long long twice = checked_mul(2, alpha[i]);
    check_internal(twice % norm == 0, "non-integral reflection coefficient");
    c[i] = twice / norm;
  }
  RootVector ma = apply(alpha);
  for (int r = 0; r < dim; ++r) {
    if (ma[r] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (c[j] == 0) continue;
      at(r, j) = checked_sub(at(r, j), checked_mul(ma[r], c[j]));
    }
  }
}

int RootSystem::root_index(const RootVector& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? -1 : it->second;
}

std::vector<int> RootSystem::root_permutation(const OrthogonalMap& map) const {
  std::vector<int> perm(all_roots.size());
  for (size_t i = 0; i < all_roots.size(); ++i) {
    int j = root_index(map.apply(all_roots[i]));
    check_internal(j >= 0, "orthogonal map does not permute the root system");
    perm[i] = j;
  }
  return perm;
}

RootSystem build_root_system(AlgebraFamily fam) {
  int n = fam.rank;
  bool ok = n >= 1 && (fam.family != Family::D || n >= 2);
  if (!ok) {
    fail(ErrorCode::InvalidRank,
         std::string("rank ") + std::to_string(n) + " unsupported for family " +
             family_letter(fam.family));
  }

  RootSystem sys;
  sys.alg = fam;
  sys.dim = (fam.family == Family::A) ? n + 1 : n;
  int d = sys.dim;

  auto e = [d](int i) {  // 1-based coordinate vector e_i
    RootVector v(d, 0);
    v[i - 1] = 1;
    return v;
  };
  auto diff = [&](int i, int j) {
    RootVector v(d, 0);
    v[i - 1] = 1;
    v[j - 1] = -1;
    return v;
  };
  auto sum2 = [&](int i, int j) {
    RootVector v(d, 0);
    v[i - 1] = 1;
    v[j - 1] = 1;
    return v;
  };

  // Simple roots, Bourbaki order.
  for (int i = 1; i <= n - 1; ++i) sys.simple_roots.push_back(diff(i, i + 1));
  switch (fam.family) {
    case Family::A:
      sys.simple_roots.push_back(diff(n, n + 1));
      break;
    case Family::B:
      sys.simple_roots.push_back(e(n));
      break;
    case Family::C: {
      RootVector v(d, 0);
      v[n - 1] = 2;
      sys.simple_roots.push_back(v);
      break;
    }
    case Family::D:
      // fork: alpha_{n-1} = e_{n-1} - e_n already present; alpha_n = e_{n-1}+e_n
      sys.simple_roots.push_back(sum2(n - 1, n));
      break;
  }
  check_internal(static_cast<int>(sys.simple_roots.size()) == n,
                 "simple root count");

  // All roots.
  std::vector<RootVector> roots;
  if (fam.family == Family::A) {
    for (int i = 1; i <= n + 1; ++i)
      for (int j = 1; j <= n + 1; ++j)
        if (i != j) roots.push_back(diff(i, j));
  } else {
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        roots.push_back(diff(i, j));
        roots.push_back(negate(diff(i, j)));
        roots.push_back(sum2(i, j));
        roots.push_back(negate(sum2(i, j)));
      }
    }
    if (fam.family == Family::B) {
      for (int i = 1; i <= n; ++i) {
        roots.push_back(e(i));
        roots.push_back(negate(e(i)));
      }
    } else if (fam.family == Family::C) {
      for (int i = 1; i <= n; ++i) {
        RootVector v(d, 0);
        v[i - 1] = 2;
        roots.push_back(v);
        roots.push_back(negate(v));
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  sys.all_roots = std::move(roots);
  for (size_t i = 0; i < sys.all_roots.size(); ++i) {
    sys.index_[sys.all_roots[i]] = static_cast<int>(i);
  }

  // Integer coefficients over the simple roots.  Solved once by forward
  // substitution: in each family the simple base is triangular enough that
  // peeling coordinates left to right works; we use a small generic exact
  // solve instead to stay family-agnostic.
  sys.simple_coeffs.reserve(sys.all_roots.size());
  for (const RootVector& r : sys.all_roots) {
    std::vector<Rat> sol = express_in_base(r, sys.simple_roots);
    std::vector<long long> row(sol.size());
    for (size_t j = 0; j < sol.size(); ++j) {
      check_internal(sol[j].is_integer(), "root with non-integer coefficients");
      row[j] = sol[j].num;
    }
    sys.simple_coeffs.push_back(std::move(row));
  }
  return sys;
}

OrthogonalMap reflection(int dim, const RootVector& alpha) {
  OrthogonalMap m = OrthogonalMap::identity(dim);
  m.right_multiply_reflection(alpha);
  return m;
}

// An integer vector h with dot(h, b) equal to the same positive constant for
// every base vector b.  Exists whenever the base is linearly independent.
static RootVector positive_functional(const std::vector<RootVector>& base,
                                      int dim) {
  size_t m = base.size();
  if (m == 0) return RootVector(dim, 0);
  // Solve  base_i . x = 1  by elimination; free variables pinned to zero.
  std::vector<std::vector<Rat>> eq(m, std::vector<Rat>(dim + 1));
  for (size_t r = 0; r < m; ++r) {
    for (int c = 0; c < dim; ++c) eq[r][c] = Rat(base[r][c]);
    eq[r][dim] = Rat(1);
  }
  size_t rank = 0;
  std::vector<int> lead_col;
  for (int col = 0; col < dim && rank < m; ++col) {
    size_t piv = rank;
    while (piv < m && eq[piv][col].is_zero()) ++piv;
    if (piv == m) continue;
    std::swap(eq[piv], eq[rank]);
    for (size_t r = 0; r < m; ++r) {
      if (r == rank || eq[r][col].is_zero()) continue;
      Rat f = eq[r][col] / eq[rank][col];
      for (int c = col; c <= dim; ++c) eq[r][c] = eq[r][c] - f * eq[rank][c];
    }
    lead_col.push_back(col);
    ++rank;
  }
  check_internal(rank == m, "positive functional for a dependent base");
  std::vector<Rat> x(dim);
  for (size_t i = 0; i < m; ++i) x[lead_col[i]] = eq[i][dim] / eq[i][lead_col[i]];
  long long scale = 1;
  for (const Rat& c : x) scale = checked_mul(scale / std::gcd(scale, c.den), c.den);
  RootVector h(dim);
  for (int c = 0; c < dim; ++c) h[c] = checked_mul(x[c].num, scale / x[c].den);
  return h;
}

OrthogonalMap longest_element(const RootSystem& sys,
                              const std::vector<RootVector>& base) {
  // Validation: roots, pairwise obtuse, linearly independent.
  for (const RootVector& b : base) {
    if (!sys.is_root(b)) {
      fail(ErrorCode::NotABase, "base vector is not a root of the system");
    }
  }
  for (size_t i = 0; i < base.size(); ++i) {
    for (size_t j = i + 1; j < base.size(); ++j) {
      if (dot(base[i], base[j]) > 0) {
        fail(ErrorCode::NotABase,
             "base vectors with positive inner product cannot be simple for "
             "any subsystem");
      }
    }
  }
  {
    // Independence via exact elimination on a copy.
    std::vector<std::vector<Rat>> rows;
    for (const RootVector& b : base) {
      std::vector<Rat> row(b.size());
      for (size_t c = 0; c < b.size(); ++c) row[c] = Rat(b[c]);
      for (const auto& prev : rows) {
        size_t lead = 0;
        while (lead < prev.size() && prev[lead].is_zero()) ++lead;
        if (lead == prev.size()) continue;
        if (!row[lead].is_zero()) {
          Rat f = row[lead] / prev[lead];
          for (size_t c = lead; c < row.size(); ++c) row[c] = row[c] - f * prev[c];
        }
      }
      bool zero = true;
      for (const Rat& x : row) {
        if (!x.is_zero()) { zero = false; break; }
      }
      if (zero) fail(ErrorCode::NotABase, "base vectors are linearly dependent");
      rows.push_back(std::move(row));
    }
  }

  // Positivity for the greedy loop is the one DEFINED BY THE BASE: a root of
  // the subsystem is positive iff its base coefficients are all nonnegative.
  // (Twisted diagrams hand us bases of ambient-negative roots, e.g.
  // {-a_4, ..., -a_1}; ambient positivity would stall the loop there.)  Any
  // integer functional h with h(b) > 0 on every base vector decides the sign
  // of a base combination, so solve for one once and test with a dot product.
  RootVector h = positive_functional(base, sys.dim);

  // Greedy accumulation: w <- w s_a while some base root stays positive.
  // Each step swaps exactly one subsystem-positive root to negative, so
  // |Phi^+| of the full system bounds the loop.
  OrthogonalMap w = OrthogonalMap::identity(sys.dim);
  size_t steps = 0;
  size_t step_cap = sys.all_roots.size() / 2 + 1;
  for (;;) {
    bool progressed = false;
    for (const RootVector& a : base) {
      if (dot(h, w.apply(a)) > 0) {
        w.right_multiply_reflection(a);
        ++steps;
        check_internal(steps <= step_cap, "longest-element loop exceeded |Phi+|");
        progressed = true;
        break;
      }
    }
    if (!progressed) break;
  }

  // w_0 is an involution; cheap to verify exactly, so always do.
  check_internal(w.compose(w).is_identity(), "longest element must square to 1");
  return w;
}

std::vector<Rat> express_in_base(const RootVector& v,
                                 const std::vector<RootVector>& base) {
  // Exact Gaussian elimination on the augmented system base^t x = v.
  size_t d = v.size();
  size_t m = base.size();
  for (const RootVector& b : base) {
    check_internal(b.size() == d, "express_in_base: dimension mismatch");
  }
  // rows: d equations, m unknowns, + rhs.
  std::vector<std::vector<Rat>> eq(d, std::vector<Rat>(m + 1));
  for (size_t r = 0; r < d; ++r) {
    for (size_t c = 0; c < m; ++c) eq[r][c] = Rat(base[c][r]);
    eq[r][m] = Rat(v[r]);
  }
  size_t rank = 0;
  std::vector<int> lead_col;
  for (size_t col = 0; col < m && rank < d; ++col) {
    size_t piv = rank;
    while (piv < d && eq[piv][col].is_zero()) ++piv;
    if (piv == d) continue;
    std::swap(eq[piv], eq[rank]);
    for (size_t r = 0; r < d; ++r) {
      if (r == rank || eq[r][col].is_zero()) continue;
      Rat f = eq[r][col] / eq[rank][col];
      for (size_t c = col; c <= m; ++c) eq[r][c] = eq[r][c] - f * eq[rank][c];
    }
    lead_col.push_back(static_cast<int>(col));
    ++rank;
  }
  if (rank < m) {
    fail(ErrorCode::NotInSpan, "base vectors are linearly dependent");
  }
  // Any leftover equation with nonzero rhs puts v outside the span.
  for (size_t r = rank; r < d; ++r) {
    if (!eq[r][m].is_zero()) {
      fail(ErrorCode::NotInSpan, "vector outside the span of the base");
    }
  }
  std::vector<Rat> sol(m);
  for (size_t i = 0; i < rank; ++i) {
    sol[lead_col[i]] = eq[i][m] / eq[i][lead_col[i]];
  }
  return sol;
}

std::vector<RootVector> subsystem_roots(const RootSystem& sys,
                                        const std::vector<RootVector>& base) {
  std::vector<RootVector> out;
  for (const RootVector& r : sys.all_roots) {
    std::vector<Rat> sol;
    try {
      sol = express_in_base(r, base);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotInSpan) continue;
      throw;
    }
    int sign = 0;  // +1 all nonneg so far, -1 all nonpos
    bool mixed = false;
    for (const Rat& c : sol) {
      if (c.is_zero()) continue;
      int s = c.num > 0 ? 1 : -1;
      if (sign == 0) sign = s;
      else if (sign != s) { mixed = true; break; }
    }
    if (!mixed && sign != 0) out.push_back(r);
  }
  return out;
}

std::vector<int> standard_subsystem_indices(const RootSystem& sys,
                                            const std::vector<int>& positions) {
  std::vector<char> allowed(sys.simple_roots.size() + 1, 0);
  for (int p : positions) {
    check_internal(p >= 1 && p <= static_cast<int>(sys.simple_roots.size()),
                   "position out of range");
    allowed[p] = 1;
  }
  std::vector<int> out;
  for (size_t i = 0; i < sys.all_roots.size(); ++i) {
    const auto& coeffs = sys.simple_coeffs[i];
    bool ok = true;
    for (size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] != 0 && !allowed[j + 1]) { ok = false; break; }
    }
    if (ok) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace orbitcover::rootsys
