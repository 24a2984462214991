// twist.cpp -- twists of marked diagrams, the chamber graph, and the matrix
// group the conjugating twists generate on k.

#include "orbitcover/twist.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

namespace orbitcover::twist {

using rootsys::RootVector;

KMatrix KMatrix::identity(int d) {
  KMatrix m;
  m.d = d;
  m.a.assign(static_cast<size_t>(d) * d, 0);
  for (int i = 0; i < d; ++i) m.at(i, i) = 1;
  return m;
}

KMatrix KMatrix::multiply(const KMatrix& rhs) const {
  check_internal(d == rhs.d, "k-matrix dimension mismatch");
  KMatrix out = identity(d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      long long s = 0;
      for (int t = 0; t < d; ++t) {
        s = checked_add(s, checked_mul(at(r, t), rhs.at(t, c)));
      }
      out.at(r, c) = s;
    }
  }
  return out;
}

// Rank over Q by plain fraction elimination; k-matrices are tiny.
static int rational_rank(const KMatrix& m) {
  int d = m.d;
  std::vector<Rat> a(static_cast<size_t>(d) * d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) a[static_cast<size_t>(r) * d + c] = Rat(m.at(r, c));
  }
  int rank = 0;
  for (int col = 0; col < d && rank < d; ++col) {
    int pivot = -1;
    for (int r = rank; r < d; ++r) {
      if (!a[static_cast<size_t>(r) * d + col].is_zero()) { pivot = r; break; }
    }
    if (pivot < 0) continue;
    for (int c = 0; c < d; ++c) {
      std::swap(a[static_cast<size_t>(rank) * d + c],
                a[static_cast<size_t>(pivot) * d + c]);
    }
    Rat lead = a[static_cast<size_t>(rank) * d + col];
    for (int r = rank + 1; r < d; ++r) {
      Rat f = a[static_cast<size_t>(r) * d + col] / lead;
      if (f.is_zero()) continue;
      for (int c = 0; c < d; ++c) {
        a[static_cast<size_t>(r) * d + c] =
            a[static_cast<size_t>(r) * d + c] - f * a[static_cast<size_t>(rank) * d + c];
      }
    }
    ++rank;
  }
  return rank;
}

bool is_integral_reflection(const KMatrix& m) {
  if (!(m.multiply(m) == KMatrix::identity(m.d))) return false;
  KMatrix diff = m;
  for (int i = 0; i < m.d; ++i) diff.at(i, i) = checked_sub(diff.at(i, i), 1);
  return rational_rank(diff) == 1;
}

TwistContext::TwistContext(LabeledParabolic base_diagram)
    : sys(base_diagram.sys), base(std::move(base_diagram)) {
  kb.marked_indices = base.marks;
  std::vector<int> unmarked;
  for (int v = 1; v <= sys->alg.rank; ++v) {
    if (!base.is_marked(v)) unmarked.push_back(v);
  }
  if (base.u.is_identity()) {
    phi_I = standard_levi(unmarked);
  } else {
    std::vector<RootVector> labels;
    for (int v : unmarked) labels.push_back(base.label(v));
    for (const RootVector& r : rootsys::subsystem_roots(*sys, labels)) {
      phi_I.push_back(sys->root_index(r));
    }
    std::sort(phi_I.begin(), phi_I.end());
  }
  in_phi_I.assign(sys->all_roots.size(), 0);
  for (int r : phi_I) in_phi_I[static_cast<size_t>(r)] = 1;
}

const std::vector<int>& TwistContext::standard_levi(
    const std::vector<int>& positions) const {
  std::vector<int> key = positions;
  std::sort(key.begin(), key.end());
  auto it = levi_cache.find(key);
  if (it != levi_cache.end()) return it->second;
  std::vector<int> roots = rootsys::standard_subsystem_indices(*sys, key);
  return levi_cache.emplace(std::move(key), std::move(roots)).first->second;
}

// T = w_0 of the connected component of beta in (unmarked + beta), together
// with the component's vertex list.  Label pairings equal ambient simple-root
// pairings (U is orthogonal), so the component is read off the fixed diagram.
static std::pair<OrthogonalMap, std::vector<int>> twist_map(
    const TwistContext& ctx, const LabeledParabolic& node, int beta) {
  if (!node.is_marked(beta)) {
    fail(ErrorCode::NotMarked,
         "vertex " + std::to_string(beta) + " is not marked");
  }
  int n = ctx.sys->alg.rank;
  std::vector<char> allowed(static_cast<size_t>(n) + 1, 0);
  for (int v = 1; v <= n; ++v) allowed[static_cast<size_t>(v)] = !node.is_marked(v);
  allowed[static_cast<size_t>(beta)] = 1;
  std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
  std::vector<int> component;
  std::deque<int> queue{beta};
  seen[static_cast<size_t>(beta)] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    component.push_back(v);
    for (int w = 1; w <= n; ++w) {
      if (w == v || !allowed[static_cast<size_t>(w)] || seen[static_cast<size_t>(w)]) continue;
      if (rootsys::dot(ctx.sys->simple_roots[static_cast<size_t>(v - 1)],
                       ctx.sys->simple_roots[static_cast<size_t>(w - 1)]) != 0) {
        seen[static_cast<size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
  }
  std::sort(component.begin(), component.end());
  std::vector<RootVector> base;
  base.reserve(component.size());
  for (int v : component) base.push_back(node.label(v));
  return {rootsys::longest_element(*ctx.sys, base), component};
}

TwistResult twist_at(const TwistContext& ctx, const LabeledParabolic& node,
                     int beta) {
  auto [t, component] = twist_map(ctx, node, beta);
  OrthogonalMap u_new = t.compose(node.u);
  int n = ctx.sys->alg.rank;
  std::vector<int> marks;
  std::vector<int> unmarked;
  for (int v = 1; v <= n; ++v) {
    RootVector lab = u_new.apply(ctx.sys->simple_roots[static_cast<size_t>(v - 1)]);
    int ridx = ctx.sys->root_index(lab);
    check_internal(ridx >= 0, "twist produced a non-root label");
    if (ctx.in_phi_I[static_cast<size_t>(ridx)]) {
      unmarked.push_back(v);
    } else {
      marks.push_back(v);
    }
  }
  // Levi invariance: the unmarked labels must generate exactly Phi_I, i.e.
  // U_new carries the standard subsystem on the unmarked positions onto it.
  if (static_cast<int>(unmarked.size()) != n - ctx.kb.dim()) {
    fail(ErrorCode::LeviMismatch,
         "twist changed the number of marks at vertex " + std::to_string(beta));
  }
  const std::vector<int>& phi_J = ctx.standard_levi(unmarked);
  if (phi_J.size() != ctx.phi_I.size()) {
    fail(ErrorCode::LeviMismatch,
         "unmarked labels generate a subsystem of the wrong size");
  }
  for (int r : phi_J) {
    RootVector img = u_new.apply(ctx.sys->all_roots[static_cast<size_t>(r)]);
    int ii = ctx.sys->root_index(img);
    if (ii < 0 || !ctx.in_phi_I[static_cast<size_t>(ii)]) {
      fail(ErrorCode::LeviMismatch,
           "unmarked labels do not generate the Levi root set");
    }
  }
  TwistResult out;
  out.node = LabeledParabolic{ctx.sys, std::move(u_new), std::move(marks)};
  out.t = std::move(t);
  out.component = std::move(component);
  return out;
}

// K-matrix of the label map t when t fixes Phi_I setwise; nullopt otherwise.
static std::optional<KMatrix> k_action_of_map(const TwistContext& ctx,
                                              const OrthogonalMap& t) {
  for (int r : ctx.phi_I) {
    RootVector img = t.apply(ctx.sys->all_roots[static_cast<size_t>(r)]);
    int ii = ctx.sys->root_index(img);
    check_internal(ii >= 0, "twist map does not permute the roots");
    if (!ctx.in_phi_I[static_cast<size_t>(ii)]) return std::nullopt;
  }
  int d = ctx.kb.dim();
  KMatrix k = KMatrix::identity(d);
  for (int j = 0; j < d; ++j) {
    int pos = ctx.kb.marked_indices[static_cast<size_t>(j)];
    RootVector img = t.apply(ctx.sys->simple_roots[static_cast<size_t>(pos - 1)]);
    int ridx = ctx.sys->root_index(img);
    check_internal(ridx >= 0, "twist map does not permute the roots");
    const std::vector<long long>& coeffs =
        ctx.sys->simple_coeffs[static_cast<size_t>(ridx)];
    for (int c = 0; c < d; ++c) {
      k.at(j, c) = coeffs[static_cast<size_t>(ctx.kb.marked_indices[static_cast<size_t>(c)] - 1)];
    }
  }
  return k;
}

std::optional<KMatrix> k_action(const TwistContext& ctx,
                                const LabeledParabolic& node, int beta) {
  auto [t, component] = twist_map(ctx, node, beta);
  (void)component;
  return k_action_of_map(ctx, t);
}

std::vector<int> nilradical_roots(const TwistContext& ctx,
                                  const LabeledParabolic& node) {
  // gamma = sum c_v U(alpha_v) iff U^t gamma = sum c_v alpha_v, so the label
  // coefficients of every root are the simple coefficients of its image under
  // U^t -- one root permutation, no linear solves.
  std::vector<int> perm = ctx.sys->root_permutation(node.u.transpose());
  std::vector<char> marked(static_cast<size_t>(ctx.sys->alg.rank) + 1, 0);
  for (int v : node.marks) marked[static_cast<size_t>(v)] = 1;
  std::vector<int> out;
  for (size_t r = 0; r < ctx.sys->all_roots.size(); ++r) {
    const std::vector<long long>& coeffs =
        ctx.sys->simple_coeffs[static_cast<size_t>(perm[r])];
    bool nonneg = true, marked_positive = false;
    for (size_t v = 0; v < coeffs.size(); ++v) {
      if (coeffs[v] < 0) { nonneg = false; break; }
      if (coeffs[v] > 0 && marked[v + 1]) marked_positive = true;
    }
    if (nonneg && marked_positive) out.push_back(static_cast<int>(r));
  }
  return out;
}

ChamberGraph enumerate_chambers(const TwistContext& ctx, long long max_nodes) {
  ChamberGraph graph;
  std::map<std::vector<int>, int> seen;
  ChamberNode start;
  start.parabolic = ctx.base;
  start.key = nilradical_roots(ctx, ctx.base);
  start.acc = KMatrix::identity(ctx.kb.dim());
  seen.emplace(start.key, 0);
  graph.nodes.push_back(std::move(start));
  for (size_t f = 0; f < graph.nodes.size(); ++f) {
    // Marks are copied: graph.nodes may reallocate while we append below.
    std::vector<int> marks = graph.nodes[f].parabolic.marks;
    for (int beta : marks) {
      TwistResult tw = twist_at(ctx, graph.nodes[f].parabolic, beta);
      std::optional<KMatrix> mat = k_action_of_map(ctx, tw.t);
      std::vector<int> key = nilradical_roots(ctx, tw.node);
      auto it = seen.find(key);
      int to;
      if (it != seen.end()) {
        to = it->second;
      } else {
        if (graph.count() >= max_nodes) {
          fail(ErrorCode::BudgetExceeded,
               "chamber count exceeds max_nodes = " + std::to_string(max_nodes));
        }
        to = static_cast<int>(graph.nodes.size());
        ChamberNode node;
        node.parabolic = std::move(tw.node);
        node.key = key;
        node.acc = mat ? graph.nodes[f].acc.multiply(*mat) : graph.nodes[f].acc;
        node.word = graph.nodes[f].word;
        node.word.emplace_back(static_cast<int>(f), beta);
        seen.emplace(std::move(key), to);
        graph.nodes.push_back(std::move(node));
      }
      graph.edges.push_back(Edge{static_cast<int>(f), to, beta, std::move(mat)});
    }
  }
  return graph;
}

int MatrixGroup::index_of(const KMatrix& m) const {
  auto it = index.find(m);
  return it == index.end() ? -1 : it->second;
}

MatrixGroup generate_w_prime(const ChamberGraph& graph, int kdim,
                             long long max_group) {
  MatrixGroup g;
  for (const Edge& e : graph.edges) {
    if (!e.mat) continue;
    bool known = false;
    for (const KMatrix& m : g.generators) known = known || (m == *e.mat);
    if (!known) g.generators.push_back(*e.mat);
  }
  g.elements.push_back(KMatrix::identity(kdim));
  g.words.push_back({});
  g.index.emplace(g.elements[0], 0);
  for (size_t i = 0; i < g.elements.size(); ++i) {
    for (size_t gi = 0; gi < g.generators.size(); ++gi) {
      KMatrix next = g.elements[i].multiply(g.generators[gi]);
      if (g.index.count(next)) continue;
      if (g.order() >= max_group) {
        fail(ErrorCode::BudgetExceeded,
             "group order exceeds max_group = " + std::to_string(max_group));
      }
      int idx = static_cast<int>(g.elements.size());
      std::vector<int> word = g.words[i];
      word.push_back(static_cast<int>(gi));
      g.index.emplace(next, idx);
      g.elements.push_back(std::move(next));
      g.words.push_back(std::move(word));
    }
  }
  return g;
}

long long class_count(const ChamberGraph& graph, const MatrixGroup& w) {
  long long total = graph.count();
  long long order = w.order();
  if (total % order != 0) {
    fail(ErrorCode::DivisibilityViolation,
         "chamber count " + std::to_string(total) +
             " is not divisible by the twist-group order " + std::to_string(order));
  }
  return total / order;
}

long long distinct_mark_sets(const ChamberGraph& graph) {
  std::set<std::vector<int>> sets;
  for (const ChamberNode& node : graph.nodes) sets.insert(node.parabolic.marks);
  return static_cast<long long>(sets.size());
}

}  // namespace orbitcover::twist
