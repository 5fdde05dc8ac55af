#pragma once

// Independent reference computations used to check the library. None of
// these call compose(); they work from the pieces of f directly.

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "stunted/errors.hpp"
#include "stunted/plmap.hpp"
#include "stunted/rational.hpp"

namespace oracle {

using stunted::Ivl;
using stunted::PiecewiseLinearMap;
using stunted::Rat;

/// Affine x -> a x + b.
struct Affine {
  Rat a;
  Rat b;
  Rat operator()(const Rat& x) const { return a * x + b; }
};

/// Fixed points of f^n found by walking itineraries: every word of pieces
/// (k_0, ..., k_{n-1}) defines a cylinder C on which f^n is affine; solve
/// the fixed-point equation there. Cylinders are pruned as soon as empty.
inline std::set<Rat> fixed_points_by_itinerary(const PiecewiseLinearMap& f, std::size_t n) {
  std::set<Rat> out;
  const std::size_t pieces = f.piece_count();
  std::vector<Affine> branch;
  for (std::size_t k = 0; k < pieces; ++k) {
    const Rat s = f.slope(k);
    branch.push_back({s, f.values()[k] - s * f.breakpoints()[k]});
  }
  struct Frame {
    Ivl cyl;      // points whose itinerary so far is the current word
    Affine map;   // f^depth on cyl
    std::size_t depth;
  };
  std::vector<Frame> stack{{Ivl(Rat(0), Rat(1)), {Rat(1), Rat(0)}, 0}};
  while (!stack.empty()) {
    Frame fr = stack.back();
    stack.pop_back();
    if (fr.depth == n) {
      if (fr.map.a == Rat(1)) {
        if (fr.map.b.is_zero()) throw stunted::StructureError("interval of fixed points");
        continue;
      }
      const Rat x = fr.map.b / (Rat(1) - fr.map.a);
      if (fr.cyl.contains(x)) out.insert(x);
      continue;
    }
    for (std::size_t k = 0; k < pieces; ++k) {
      const Ivl dom = f.piece_domain(k);
      // {x in cyl : map(x) in dom}
      Ivl next;
      if (fr.map.a.is_zero()) {
        if (!dom.contains(fr.map.b)) continue;
        next = fr.cyl;
      } else {
        Rat u = (dom.lo() - fr.map.b) / fr.map.a;
        Rat v = (dom.hi() - fr.map.b) / fr.map.a;
        if (v < u) std::swap(u, v);
        const Rat lo = stunted::max(u, fr.cyl.lo());
        const Rat hi = stunted::min(v, fr.cyl.hi());
        if (hi < lo) continue;
        next = Ivl(lo, hi);
      }
      const Affine composed{branch[k].a * fr.map.a, branch[k].a * fr.map.b + branch[k].b};
      stack.push_back({next, composed, fr.depth + 1});
    }
  }
  return out;
}

/// Exact minimal period of a point known to be periodic.
inline std::size_t minimal_period(const PiecewiseLinearMap& f, const Rat& x) {
  Rat y = f(x);
  std::size_t t = 1;
  while (y != x) {
    y = f(y);
    ++t;
  }
  return t;
}

/// Points of minimal period n among the fixed points of f^n.
inline std::set<Rat> periodic_points_by_itinerary(const PiecewiseLinearMap& f, std::size_t n) {
  std::set<Rat> out;
  for (const Rat& x : fixed_points_by_itinerary(f, n)) {
    if (minimal_period(f, x) == n) out.insert(x);
  }
  return out;
}

/// Periodic points with period <= n_max among the rationals k / D.
inline std::vector<std::pair<Rat, std::size_t>> periodic_on_denominator_grid(
    const PiecewiseLinearMap& f, long D, std::size_t n_max) {
  std::vector<std::pair<Rat, std::size_t>> out;
  for (long k = 0; k <= D; ++k) {
    const Rat x(k, D);
    Rat y = f(x);
    for (std::size_t t = 1; t <= n_max; ++t) {
      if (y == x) {
        out.emplace_back(x, t);
        break;
      }
      y = f(y);
    }
  }
  return out;
}

}  // namespace oracle
