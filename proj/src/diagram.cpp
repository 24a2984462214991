// diagram.cpp -- marked Dynkin diagrams: flag encodings, labels, Levi root
// sets, k-coordinate reduction, and ASCII rendering.

#include "orbitcover/diagram.hpp"

#include <algorithm>
#include <string>

namespace orbitcover::diagram {

using rootsys::Family;

RootVector LabeledParabolic::label(int vertex) const {
  check_internal(vertex >= 1 && vertex <= sys->alg.rank, "vertex out of range");
  return u.apply(sys->simple_roots[static_cast<size_t>(vertex - 1)]);
}

std::vector<RootVector> LabeledParabolic::labels() const {
  std::vector<RootVector> out;
  out.reserve(static_cast<size_t>(sys->alg.rank));
  for (int v = 1; v <= sys->alg.rank; ++v) out.push_back(label(v));
  return out;
}

bool LabeledParabolic::is_marked(int vertex) const {
  return std::binary_search(marks.begin(), marks.end(), vertex);
}

LabeledParabolic from_flag(const FlagSpec& f) {
  if (f.family.family == Family::A) {
    fail(ErrorCode::UnsupportedFamily,
         "flags without an invariant form are not supported");
  }
  long long blocks = 0;
  for (long long b : f.half_blocks) {
    if (b < 1) {
      fail(ErrorCode::InvalidBlock, "flag block sizes must be positive");
    }
    blocks = checked_add(blocks, b);
  }
  if (f.middle < 0) {
    fail(ErrorCode::DimensionMismatch, "middle dimension must be nonnegative");
  }
  long long n = f.family.rank;
  long long space = (f.family.family == Family::B) ? 2 * n + 1 : 2 * n;
  long long total = checked_add(checked_mul(2, blocks), f.middle);
  if (total != space) {
    fail(ErrorCode::DimensionMismatch,
         "blocks and middle fill " + std::to_string(total) +
             " dimensions, the form lives on " + std::to_string(space));
  }
  if (f.family.family == Family::D && f.middle < 4) {
    fail(ErrorCode::VeryEvenAmbiguity,
         "a D-type middle of dimension " + std::to_string(f.middle) +
             " puts marks at the fork, where the two branch choices are "
             "inequivalent");
  }
  LabeledParabolic p;
  p.sys = std::make_shared<const RootSystem>(rootsys::build_root_system(f.family));
  p.u = rootsys::OrthogonalMap::identity(p.sys->dim);
  long long acc = 0;
  for (long long b : f.half_blocks) {
    acc += b;
    p.marks.push_back(static_cast<int>(acc));
  }
  return p;
}

std::vector<RootVector> levi_roots(const LabeledParabolic& p) {
  std::vector<RootVector> base;
  for (int v = 1; v <= p.sys->alg.rank; ++v) {
    if (!p.is_marked(v)) base.push_back(p.label(v));
  }
  return rootsys::subsystem_roots(*p.sys, base);
}

std::vector<Rat> k_reduce(const RootVector& v, const LabeledParabolic& base,
                          const KBasis& kb) {
  std::vector<Rat> simple_coords;
  int idx = base.sys->root_index(v);
  if (idx >= 0) {
    for (long long c : base.sys->simple_coeffs[static_cast<size_t>(idx)]) {
      simple_coords.push_back(Rat(c));
    }
  } else {
    simple_coords = rootsys::express_in_base(v, base.sys->simple_roots);
  }
  std::vector<Rat> out;
  out.reserve(kb.marked_indices.size());
  for (int i : kb.marked_indices) {
    out.push_back(simple_coords[static_cast<size_t>(i - 1)]);
  }
  return out;
}

std::vector<int> marks_of(const RootSystem& sys,
                          const std::vector<RootVector>& labels,
                          const std::vector<RootVector>& phi_I) {
  check_internal(static_cast<int>(labels.size()) == sys.alg.rank,
                 "one label per vertex");
  std::vector<int> marked;
  std::vector<RootVector> unmarked_labels;
  for (int v = 1; v <= sys.alg.rank; ++v) {
    const RootVector& lab = labels[static_cast<size_t>(v - 1)];
    if (std::binary_search(phi_I.begin(), phi_I.end(), lab)) {
      unmarked_labels.push_back(lab);
    } else {
      marked.push_back(v);
    }
  }
  if (rootsys::subsystem_roots(sys, unmarked_labels) != phi_I) {
    fail(ErrorCode::LeviMismatch,
         "unmarked labels do not generate the Levi root set");
  }
  return marked;
}

std::string format_in_simples(const RootSystem& sys, const RootVector& v) {
  std::vector<Rat> coeffs;
  int idx = sys.root_index(v);
  if (idx >= 0) {
    for (long long c : sys.simple_coeffs[static_cast<size_t>(idx)]) {
      coeffs.push_back(Rat(c));
    }
  } else {
    coeffs = rootsys::express_in_base(v, sys.simple_roots);
  }
  std::string out;
  for (size_t j = 0; j < coeffs.size(); ++j) {
    const Rat& c = coeffs[j];
    if (c.is_zero()) continue;
    bool negative = c.num < 0;
    long long mag_num = negative ? -c.num : c.num;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (!(mag_num == 1 && c.den == 1)) {
      out += std::to_string(mag_num);
      if (c.den != 1) out += "/" + std::to_string(c.den);
      out += " ";
    }
    out += "a" + std::to_string(j + 1);
  }
  if (out.empty()) out = "0";
  return out;
}

std::string render(const LabeledParabolic& p) {
  std::string out;
  for (int v = 1; v <= p.sys->alg.rank; ++v) {
    out += std::to_string(v);
    out += p.is_marked(v) ? " * " : " o ";
    out += format_in_simples(*p.sys, p.label(v));
    out += "\n";
  }
  return out;
}

}  // namespace orbitcover::diagram
