#include "stunted/renorm.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <numeric>

#include "stunted/errors.hpp"
#include "stunted/kneading.hpp"
#include "stunted/orbits.hpp"

namespace stunted {

RenormCheck check_renormalization(const PiecewiseLinearMap& f, const Ivl& J, std::size_t p) {
  if (p == 0) throw PreconditionError("window period must be >= 1");
  RenormCheck out;
  if (J.lo().sign() < 0 || J.hi() > Rat(1) || (J.lo().sign() == 0 && J.hi() == Rat(1))) {
    out.violation = RenormViolation{RenormViolationKind::not_proper, 0, 0, std::nullopt,
                                    std::nullopt,
                                    J.str() + " is not a proper subinterval of [0,1]"};
    return out;
  }
  std::vector<Ivl> images{J};
  images.reserve(p + 1);
  for (std::size_t i = 1; i <= p; ++i) images.push_back(image_of_interval(f, images.back()));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t k = i + 1; k < p; ++k) {
      if (!images[i].interiors_disjoint(images[k])) {
        out.violation = RenormViolation{
            RenormViolationKind::overlap, i, k, std::nullopt, std::nullopt,
            "f^" + std::to_string(i) + "(J) = " + images[i].str() + " and f^" +
                std::to_string(k) + "(J) = " + images[k].str() + " overlap in their interiors"};
        return out;
      }
    }
  }
  const Ivl& back = images[p];
  if (!J.contains(back)) {
    const Rat x = back.lo() < J.lo() ? back.lo() : back.hi();
    out.violation = RenormViolation{RenormViolationKind::escape, 0, 0, back, x,
                                    "f^" + std::to_string(p) + "(J) = " + back.str() +
                                        " leaves J at " + x.str()};
    return out;
  }
  images.pop_back();
  out.window = RenormWindow{J, p, std::move(images)};
  return out;
}

GapFixedPoint gap_fixed_point(const PiecewiseLinearMap& f, const Ivl& k0, const Ivl& k1,
                              std::size_t piece_budget) {
  if (!(k0.hi() < k1.lo())) throw PreconditionError("k0 must lie strictly left of k1");
  if (image_of_interval(f, k0).disjoint(k1) || image_of_interval(f, k1).disjoint(k0)) {
    throw StructureError("f does not swap " + k0.str() + " and " + k1.str());
  }
  std::optional<Rat> p;
  for (const Rat& x : fixed_points(f)) {
    if (k0.hi() < x && x < k1.lo()) {
      p = x;
      break;
    }
  }
  if (!p) throw StructureError("no fixed point of f between " + k0.str() + " and " + k1.str());
  const auto g = compose_self(f, 2, piece_budget);
  Rat q = *p;
  for (const Rat& x : fixed_points(g)) {
    if (*p <= x && x < k1.lo() && x > q) q = x;
  }
  GapFixedPoint out{*p, q, f(q) == q ? std::size_t{1} : std::size_t{2}, unstable_manifold_of(g, q),
                    false};
  out.manifold_covers_k1 = out.manifold.contains(k1);
  return out;
}

namespace {

// Orbit of the plateau value, long enough to group by any 2^n with n <= depth.
struct ValueOrbit {
  std::vector<Rat> points;
  std::optional<std::size_t> period;  // set when v itself is periodic
};

ValueOrbit value_orbit(const PiecewiseLinearMap& f, const Rat& v, std::size_t depth,
                       std::size_t orbit_budget) {
  const std::size_t span = std::size_t{1} << depth;
  ValueOrbit out;
  try {
    const OrbitRecord rec = orbit_eventually_periodic(f, v, orbit_budget);
    if (rec.preperiod == 0) out.period = rec.period;
    const std::size_t len = rec.preperiod + std::lcm(rec.period, span);
    out.points.reserve(len);
    for (std::size_t k = 0; k < len; ++k) {
      out.points.push_back(k < rec.points.size()
                               ? rec.points[k]
                               : rec.points[rec.preperiod + (k - rec.preperiod) % rec.period]);
    }
  } catch (const BudgetExceeded&) {
    out.points = iterate(f, v, orbit_budget - 1);
  }
  return out;
}

// blocks[k] = hull of the orbit points with index = k mod 2^n; empty when the
// orbit is too short to fill every block.
std::vector<Ivl> value_blocks(const std::vector<Rat>& orbit, std::size_t n) {
  const std::size_t u = std::size_t{1} << n;
  if (orbit.size() < u) return {};
  std::vector<Ivl> blocks;
  blocks.reserve(u);
  for (std::size_t k = 0; k < u; ++k) {
    Ivl b = Ivl::point(orbit[k]);
    for (std::size_t m = k + u; m < orbit.size(); m += u) b = b.hull(orbit[m]);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

bool pairwise_disjoint(std::vector<Ivl> blocks) {
  std::sort(blocks.begin(), blocks.end(),
            [](const Ivl& a, const Ivl& b) { return a.lo() < b.lo(); });
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (!(blocks[i - 1].hi() < blocks[i].lo())) return false;
  }
  return true;
}

}  // namespace

RenormTower build_tower(const StuntedSawtoothMap& m, std::size_t depth, std::size_t plateau,
                        const TowerBudgets& budgets) {
  if (depth == 0) throw PreconditionError("tower depth must be >= 1");
  if (depth > kMaxOdometerDepth) throw DomainError("tower depth too large");
  if (plateau < 1 || plateau > static_cast<std::size_t>(m.degree())) {
    throw PreconditionError("plateau index out of range");
  }
  const PiecewiseLinearMap& f = m.map();
  RenormTower tower;
  tower.plateau = plateau;
  tower.value = m.plateau(plateau).height;
  const ValueOrbit orbit = value_orbit(f, tower.value, depth, budgets.orbit_budget);
  tower.value_period = orbit.period;
  for (std::size_t n = 1; n <= depth; ++n) {
    const std::string level = "level " + std::to_string(n) + ": ";
    auto blocks = value_blocks(orbit.points, n);
    if (blocks.empty()) {
      tower.stop_reason = level + "orbit of the plateau value too short";
      break;
    }
    if (!pairwise_disjoint(blocks)) {
      tower.stop_reason = level + "blocks are not pairwise disjoint";
      break;
    }
    const std::size_t u = std::size_t{1} << n;
    RenormCheck check = check_renormalization(f, blocks[0], u);
    if (!check.certified()) {
      tower.stop_reason = level + check.violation->message;
      break;
    }
    if (!tower.levels.empty()) {
      const Ivl& prev = tower.levels.back().I;
      if (!prev.contains(blocks[0]) || !(blocks[0].length() < prev.length())) {
        tower.stop_reason = level + "no strict nesting in the previous level";
        break;
      }
    }
    Ivl I = blocks[0];
    tower.levels.push_back(TowerLevel{std::move(I), u, std::move(blocks), std::move(*check.window)});
  }
  return tower;
}

RenormTower build_tower(const StuntedSawtoothMap& m, std::size_t depth,
                        const TowerBudgets& budgets) {
  std::optional<RenormTower> best;
  for (std::size_t i = 1; i <= static_cast<std::size_t>(m.degree()); ++i) {
    RenormTower t = build_tower(m, depth, i, budgets);
    if (!best || t.depth() > best->depth()) best = std::move(t);
  }
  return std::move(*best);
}

SemiconjugacyReport semiconjugacy_check(const StuntedSawtoothMap& m, const RenormTower& tower,
                                        std::size_t n) {
  SemiconjugacyReport rep;
  rep.depth = n;
  if (n == 0) {
    rep.blocks = {Ivl(Rat(0), Rat(1))};
    rep.permutation = {0};
    rep.blocks_disjoint = rep.maps_into_successor = rep.odometer_match = true;
    rep.fiber_diagnostics = 1;
    return rep;
  }
  if (n > kMaxOdometerDepth) throw DomainError("semiconjugacy depth too large");
  const PiecewiseLinearMap& f = m.map();
  const ValueOrbit orbit = value_orbit(f, tower.value, n, TowerBudgets{}.orbit_budget);
  rep.blocks = value_blocks(orbit.points, n);
  if (n > tower.depth()) {
    rep.message = "tower depth " + std::to_string(tower.depth()) + " is below " +
                  std::to_string(n) + "; ";
  }
  if (rep.blocks.empty()) {
    rep.message += "orbit of the plateau value too short";
    return rep;
  }
  const std::size_t u = rep.blocks.size();
  rep.blocks_disjoint = pairwise_disjoint(rep.blocks);
  rep.permutation.assign(u, SIZE_MAX);
  std::vector<std::size_t> hits(u, 0);
  rep.maps_into_successor = true;
  for (std::size_t k = 0; k < u; ++k) {
    const Ivl img = image_of_interval(f, rep.blocks[k]);
    for (std::size_t t = 0; t < u; ++t) {
      if (rep.blocks[t].contains(img)) {
        rep.permutation[k] = t;
        ++hits[t];
        break;
      }
    }
    if (!rep.blocks[(k + 1) % u].contains(img)) rep.maps_into_successor = false;
  }
  rep.fiber_diagnostics = *std::max_element(hits.begin(), hits.end());
  bool cycle = rep.blocks_disjoint;
  const auto words = odometer_orbit(n);
  for (std::size_t t = 0; t < words.size() && cycle; ++t) {
    const auto from = static_cast<std::size_t>(words[t].to_index());
    const auto to = static_cast<std::size_t>(words[(t + 1) % words.size()].to_index());
    cycle = rep.permutation[from] == to;
  }
  rep.odometer_match = cycle && rep.maps_into_successor;
  if (!rep.blocks_disjoint) rep.message += "blocks overlap";
  else if (!rep.maps_into_successor) rep.message += "some block does not map into its successor";
  else if (!cycle) rep.message += "block permutation differs from the adding machine";
  return rep;
}

std::optional<DoublingWitness> doubling_witness(const PiecewiseLinearMap& f,
                                                const RenormTower& tower, std::size_t n,
                                                std::size_t piece_budget) {
  if (n == 0 || n >= tower.depth()) {
    throw PreconditionError("doubling witness needs 1 <= n < tower depth");
  }
  const auto& outer = tower.levels[n - 1].blocks;
  const auto& inner = tower.levels[n].blocks;
  auto in_any = [](const std::vector<Ivl>& bs, const Rat& x) {
    return std::any_of(bs.begin(), bs.end(), [&](const Ivl& b) { return b.contains(x); });
  };
  IterateSequence seq(f, piece_budget);
  for (std::size_t period : {std::size_t{1} << n, std::size_t{1} << (n + 1)}) {
    while (seq.power() < period) seq.advance();
    const PiecewiseLinearMap& g = seq.current();
    for (const Rat& x : fixed_points(g)) {
      if (!in_any(outer, x) || in_any(inner, x)) continue;
      const auto orbit = iterate(f, x, period);
      if (std::find(orbit.begin() + 1, orbit.end() - 1, x) != orbit.end() - 1) continue;
      const Ivl W = unstable_manifold_of(g, x);
      for (std::size_t b = 0; b < inner.size(); ++b) {
        if (W.contains(inner[b])) return DoublingWitness{x, period, W, b};
      }
    }
  }
  return std::nullopt;
}

}  // namespace stunted
