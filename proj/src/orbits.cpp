#include "stunted/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "stunted/errors.hpp"

namespace stunted {

std::string to_string(Stability s) {
  switch (s) {
    case Stability::repelling: return "repelling";
    case Stability::attracting: return "attracting";
    case Stability::one_sided_attracting: return "one_sided_attracting";
    case Stability::superattracting_plateau: return "superattracting_plateau";
  }
  return "?";
}

std::string to_string(EntropyMethod m) {
  switch (m) {
    case EntropyMethod::bowen: return "bowen";
    case EntropyMethod::lap: return "lap";
    case EntropyMethod::markov: return "markov";
  }
  return "?";
}

std::vector<Rat> fixed_points(const PiecewiseLinearMap& g) {
  const auto& xs = g.breakpoints();
  const auto& ys = g.values();
  std::vector<Rat> out;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    if (ys[k] == ys[k + 1]) {
      if (xs[k] <= ys[k] && ys[k] <= xs[k + 1]) out.push_back(ys[k]);
      continue;
    }
    const Rat a = g.slope(k);
    if (a == Rat(1)) {
      throw StructureError("slope-1 piece on " + g.piece_domain(k).str() +
                           ": fixed points form an interval");
    }
    Rat x = (ys[k] - a * xs[k]) / (Rat(1) - a);
    if (xs[k] <= x && x <= xs[k + 1]) out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// How the half-neighbourhood on side `s` of a fixed point of g behaves,
// given its slope and the slope on the other side (absent = nullopt).
bool side_attracted(const Rat& s, const std::optional<Rat>& other) {
  if (s.is_zero()) return true;
  if (abs(s) < Rat(1)) return true;
  // A reversing side lands on the other side; a flat other side swallows it.
  return s.sign() < 0 && other && other->is_zero();
}

bool side_live(const Rat& s, const std::optional<Rat>& other) {
  if (abs(s) <= Rat(1)) return false;
  if (s.sign() > 0) return true;
  return other && other->sign() < 0 && abs(s * *other) > Rat(1);
}

struct Germ {
  std::optional<Rat> left;
  std::optional<Rat> right;
};

Germ germ_at(const PiecewiseLinearMap& g, const Rat& p) {
  const auto sl = one_sided_slopes(g, p);
  Germ out;
  if (p > Rat(0)) out.left = sl.left;
  if (p < Rat(1)) out.right = sl.right;
  return out;
}

int stability_rank(Stability s) {
  switch (s) {
    case Stability::repelling: return 0;
    case Stability::one_sided_attracting: return 1;
    case Stability::attracting: return 2;
    case Stability::superattracting_plateau: return 3;
  }
  return 0;
}

std::size_t minimal_period(const PiecewiseLinearMap& f, const Rat& x, std::size_t n) {
  Rat y = f(x);
  for (std::size_t t = 1; t <= n; ++t) {
    if (y == x) return t;
    y = f(y);
  }
  return 0;
}

std::vector<PeriodicOrbit> orbits_from_fixed(const PiecewiseLinearMap& f,
                                             const PiecewiseLinearMap& g,
                                             const std::vector<Rat>& fix, std::size_t n) {
  std::vector<PeriodicOrbit> out;
  std::unordered_set<Rat> used;
  for (const Rat& x : fix) {
    if (used.count(x)) continue;
    if (minimal_period(f, x, n) != n) continue;
    PeriodicOrbit orb;
    orb.period = n;
    Rat y = x;
    for (std::size_t t = 0; t < n; ++t) {
      orb.points.push_back(y);
      used.insert(y);
      y = f(y);
    }
    auto it = std::min_element(orb.points.begin(), orb.points.end());
    std::rotate(orb.points.begin(), it, orb.points.end());
    orb.stability = classify_stability(g, orb.points);
    out.push_back(std::move(orb));
  }
  std::sort(out.begin(), out.end(),
            [](const PeriodicOrbit& a, const PeriodicOrbit& b) { return a.points[0] < b.points[0]; });
  return out;
}

}  // namespace

Stability classify_stability(const PiecewiseLinearMap& g, const std::vector<Rat>& orbit) {
  Stability best = Stability::repelling;
  for (const Rat& p : orbit) {
    const Germ gm = germ_at(g, p);
    int attracted = 0;
    int sides = 0;
    bool flat = false;
    for (int s = 0; s < 2; ++s) {
      const auto& mine = s == 0 ? gm.left : gm.right;
      const auto& other = s == 0 ? gm.right : gm.left;
      if (!mine) continue;
      ++sides;
      if (side_attracted(*mine, other)) ++attracted;
      if (mine->is_zero()) flat = true;
    }
    Stability here = Stability::repelling;
    if (attracted == sides) {
      here = flat ? Stability::superattracting_plateau : Stability::attracting;
    } else if (attracted > 0) {
      here = Stability::one_sided_attracting;
    }
    if (stability_rank(here) > stability_rank(best)) best = here;
  }
  return best;
}

std::vector<PeriodicOrbit> periodic_points(const PiecewiseLinearMap& f, std::size_t n,
                                           std::size_t piece_budget) {
  if (n == 0) throw PreconditionError("period must be >= 1");
  const auto g = compose_self(f, n, piece_budget);
  return orbits_from_fixed(f, g, fixed_points(g), n);
}

namespace {

std::vector<std::size_t> prime_factors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

namespace {

struct MarkovGraph {
  // Row a of the transition matrix is the index range [lo[a], hi[a]).
  std::vector<std::size_t> lo;
  std::vector<std::size_t> hi;
  std::vector<Rat> pts;  // partition points; interval a is [pts[a], pts[a + 1]]
};

MarkovGraph markov_graph(const PiecewiseLinearMap& f, std::size_t budget) {
  std::unordered_set<Rat> seen;
  std::vector<Rat> pts;
  auto add = [&](const Rat& x) {
    if (seen.insert(x).second) {
      pts.push_back(x);
      if (pts.size() > budget) {
        throw BudgetExceeded("Markov partition exceeds " + std::to_string(budget) + " points");
      }
      return true;
    }
    return false;
  };
  for (const Rat& x : f.breakpoints()) add(x);
  for (const Rat& x : f.breakpoints()) {
    Rat y = f(x);
    while (add(y)) y = f(y);
  }
  std::sort(pts.begin(), pts.end());
  std::unordered_map<Rat, std::size_t> index;
  index.reserve(pts.size() * 2);
  for (std::size_t i = 0; i < pts.size(); ++i) index.emplace(pts[i], i);
  MarkovGraph g;
  const std::size_t m = pts.size() - 1;
  g.lo.resize(m);
  g.hi.resize(m);
  Rat prev = f(pts[0]);
  for (std::size_t a = 0; a < m; ++a) {
    Rat next = f(pts[a + 1]);
    const std::size_t i0 = index.at(prev);
    const std::size_t i1 = index.at(next);
    g.lo[a] = std::min(i0, i1);
    g.hi[a] = std::max(i0, i1);
    prev = std::move(next);
  }
  g.pts = std::move(pts);
  return g;
}

// Iterative Tarjan over range-encoded rows.
std::vector<std::size_t> strongly_connected(const MarkovGraph& g, std::size_t& count) {
  const std::size_t m = g.lo.size();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(m, kUnset), low(m, 0), comp(m, kUnset), edge(m, 0);
  std::vector<std::size_t> stack, call;
  std::vector<char> on_stack(m, 0);
  std::size_t next_index = 0;
  count = 0;
  for (std::size_t root = 0; root < m; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back(root);
    index[root] = low[root] = next_index++;
    edge[root] = g.lo[root];
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      const std::size_t v = call.back();
      if (edge[v] < g.hi[v]) {
        const std::size_t w = edge[v]++;
        if (index[w] == kUnset) {
          index[w] = low[w] = next_index++;
          edge[w] = g.lo[w];
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back(w);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      call.pop_back();
      if (!call.empty()) low[call.back()] = std::min(low[call.back()], low[v]);
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
    }
  }
  return comp;
}

}  // namespace

FixedPointSequence::FixedPointSequence(PiecewiseLinearMap f, std::size_t max_period,
                                       std::size_t piece_budget, std::size_t partition_budget)
    : f_(std::move(f)), budget_(piece_budget) {
  const auto& xs = f_.breakpoints();
  const auto& ys = f_.values();
  std::vector<Rat> values;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    if (ys[k] == ys[k + 1]) values.push_back(ys[k]);
  }
  std::optional<MarkovGraph> g;
  try {
    g.emplace(markov_graph(f_, partition_budget));
  } catch (const BudgetExceeded&) {
  }
  if (g) {
    // Periodic orbits off the constant pieces are closed walks, so only
    // strongly connected components carrying a cycle are followed.
    const std::size_t m = g->lo.size();
    std::size_t ncomp = 0;
    comp_ = strongly_connected(*g, ncomp);
    std::vector<char> cyclic(ncomp, 0);
    std::vector<std::size_t> size(ncomp, 0);
    for (std::size_t c = 0; c < m; ++c) ++size[comp_[c]];
    for (std::size_t c = 0; c < m; ++c) {
      if (size[comp_[c]] > 1 || (g->lo[c] <= c && c < g->hi[c])) cyclic[comp_[c]] = 1;
    }
    cells_.resize(m);
    for (std::size_t c = 0; c < m; ++c) {
      const Rat& x0 = g->pts[c];
      const Rat& x1 = g->pts[c + 1];
      Cell& cell = cells_[c];
      cell.succ_lo = g->lo[c];
      cell.succ_hi = g->hi[c];
      cell.slope = (f_(x1) - f_(x0)) / (x1 - x0);
      cell.intercept = f_(x0) - cell.slope * x0;
      cell.lo = x0;
      cell.hi = x1;
      if (cyclic[comp_[c]] && cell.succ_lo < cell.succ_hi) {
        pieces_.push_back(Piece{x0, x1, cell.slope, cell.intercept, c});
      }
    }
  } else {
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      if (ys[k] == ys[k + 1]) continue;
      const Rat a = f_.slope(k);
      pieces_.push_back(Piece{xs[k], xs[k + 1], a, ys[k] - a * xs[k], kNoCell});
    }
  }
  if (pieces_.size() > budget_) throw BudgetExceeded("more than the piece budget of laps");
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::unordered_set<Rat> seen;
  for (const Rat& c : values) {
    if (seen.count(c)) continue;
    // A cycle longer than max_period never matters; stop following c there.
    std::vector<Rat> orbit{c};
    Rat y = f_(c);
    while (y != c && orbit.size() <= max_period) {
      orbit.push_back(y);
      y = f_(y);
    }
    if (y != c) continue;
    for (const Rat& x : orbit) seen.insert(x);
    cycles_.push_back(std::move(orbit));
  }
}

std::vector<Rat> FixedPointSequence::fixed_points() const {
  std::vector<Rat> out;
  for (const Piece& p : pieces_) {
    if (p.slope == Rat(1)) {
      throw StructureError("f^" + std::to_string(n_) + " has slope 1 on [" + p.lo.str() + ", " +
                           p.hi.str() + "]: fixed points form an interval");
    }
    Rat x = p.intercept / (Rat(1) - p.slope);
    if (p.lo <= x && x <= p.hi) out.push_back(std::move(x));
  }
  for (const auto& cyc : cycles_) {
    if (n_ % cyc.size() == 0) out.insert(out.end(), cyc.begin(), cyc.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void FixedPointSequence::advance() {
  std::vector<Piece> next;
  next.reserve(pieces_.size() * 2);
  auto push = [&](Piece p) {
    next.push_back(std::move(p));
    if (next.size() > budget_) {
      throw BudgetExceeded("f^" + std::to_string(n_ + 1) + " has more than " +
                           std::to_string(budget_) + " expanding pieces");
    }
  };
  // The part of p that f^n sends into [u, v], where f has slope a and intercept b.
  auto restrict = [](const Piece& p, const Rat& u, const Rat& v, const Rat& a, const Rat& b,
                     std::size_t cell) {
    Rat xu = (u - p.intercept) / p.slope;
    Rat xv = (v - p.intercept) / p.slope;
    if (xv < xu) std::swap(xu, xv);
    return Piece{std::move(xu), std::move(xv), a * p.slope, a * p.intercept + b, cell};
  };
  if (!cells_.empty()) {
    for (const Piece& p : pieces_) {
      const Cell& from = cells_[p.cell];
      for (std::size_t c = from.succ_lo; c < from.succ_hi; ++c) {
        if (comp_[c] != comp_[p.cell]) continue;
        // f^n maps p onto f(from), which covers the whole cell `to`.
        const Cell& to = cells_[c];
        push(restrict(p, to.lo, to.hi, to.slope, to.intercept, c));
      }
    }
  } else {
    const auto& xs = f_.breakpoints();
    const auto& ys = f_.values();
    for (const Piece& p : pieces_) {
      const Rat y0 = p.slope * p.lo + p.intercept;
      const Rat y1 = p.slope * p.hi + p.intercept;
      const Rat lo = min(y0, y1);
      const Rat hi = max(y0, y1);
      std::size_t k = f_.piece_of(lo);
      for (; k + 1 < xs.size() && xs[k] < hi; ++k) {
        if (ys[k] == ys[k + 1]) continue;  // the orbit is absorbed by a constant piece
        const Rat u = max(lo, xs[k]);
        const Rat v = min(hi, xs[k + 1]);
        if (!(u < v)) continue;
        const Rat a = f_.slope(k);
        push(restrict(p, u, v, a, ys[k] - a * xs[k], kNoCell));
      }
    }
  }
  pieces_ = std::move(next);
  ++n_;
}

PeriodSetReport period_set(const PiecewiseLinearMap& f, std::size_t bound,
                           std::size_t piece_budget, bool stop_at_non_power_of_two) {
  if (bound == 0) throw PreconditionError("period bound must be >= 1");
  PeriodSetReport rep;
  rep.search_bound = bound;
  std::vector<std::vector<Rat>> fix(bound + 1);
  std::optional<FixedPointSequence> seq;
  try {
    seq.emplace(f, bound, piece_budget);
  } catch (const BudgetExceeded&) {
    rep.complete_to_bound = false;
    return rep;
  }
  for (std::size_t n = 1; n <= bound; ++n) {
    if (n > 1) {
      try {
        seq->advance();
      } catch (const BudgetExceeded&) {
        rep.complete_to_bound = false;
        break;
      }
    }
    fix[n] = seq->fixed_points();
    const auto primes = prime_factors(n);
    for (const Rat& x : fix[n]) {
      bool minimal = true;
      for (std::size_t q : primes) {
        const auto& lower = fix[n / q];
        if (std::binary_search(lower.begin(), lower.end(), x)) {
          minimal = false;
          break;
        }
      }
      if (minimal) {
        rep.periods.insert(n);
        rep.witnesses.emplace(n, x);
        break;
      }
    }
    rep.checked_to = n;
    if (stop_at_non_power_of_two && rep.periods.count(n) && (n & (n - 1)) != 0) {
      rep.complete_to_bound = n == bound;
      break;
    }
  }
  return rep;
}

namespace {

std::tuple<int, long, long> sharkovskii_key(std::size_t n) {
  long twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (n == 1) return {1, -twos, 0};
  return {0, twos, static_cast<long>(n)};
}

}  // namespace

bool sharkovskii_forces(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) throw DomainError("periods are positive");
  return sharkovskii_key(a) < sharkovskii_key(b);
}

std::vector<std::pair<std::size_t, std::size_t>> sharkovskii_violations(
    const PeriodSetReport& report) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t top = report.checked_to;
  for (std::size_t p : report.periods) {
    for (std::size_t q = 1; q <= top; ++q) {
      if (!report.periods.count(q) && sharkovskii_forces(p, q)) out.emplace_back(p, q);
    }
  }
  return out;
}

// ---------------------------------------------------------------- entropy --

EntropyEstimate entropy_lap(const PiecewiseLinearMap& f, std::size_t n_max,
                            std::size_t piece_budget) {
  if (n_max < 2) throw PreconditionError("entropy_lap needs n_max >= 2");
  EntropyEstimate est;
  est.method = EntropyMethod::lap;
  IterateSequence seq(f, piece_budget);
  std::vector<double> log_laps{0.0};
  log_laps.push_back(std::log(static_cast<double>(lap_count(seq.current()))));
  for (std::size_t n = 2; n <= n_max; ++n) {
    try {
      seq.advance();
    } catch (const BudgetExceeded&) {
      if (n == 2) throw;
      break;
    }
    log_laps.push_back(std::log(static_cast<double>(lap_count(seq.current()))));
  }
  const std::size_t reached = log_laps.size() - 1;
  double upper = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= reached; ++n) {
    const double b = log_laps[n] / static_cast<double>(n);
    upper = std::min(upper, b);
    est.parameters.emplace_back("bound_n" + std::to_string(n), b);
  }
  const std::size_t half = reached / 2;
  double extrapolated = (log_laps[reached] - log_laps[half]) / static_cast<double>(reached - half);
  est.lower = 0.0;
  est.upper = upper;
  est.value = std::clamp(extrapolated, 0.0, upper);
  est.parameters.insert(est.parameters.begin(),
                        {{"n_max", static_cast<double>(n_max)},
                         {"n_reached", static_cast<double>(reached)}});
  return est;
}

EntropyEstimate entropy_markov(const PiecewiseLinearMap& f, std::size_t partition_budget,
                               double rel_tol) {
  const MarkovGraph g = markov_graph(f, partition_budget);
  const std::size_t m = g.lo.size();
  std::size_t ncomp = 0;
  const auto comp = strongly_connected(g, ncomp);

  // Out-degree inside the own component, and component sizes.
  std::vector<std::size_t> size(ncomp, 0);
  std::vector<char> non_cycle(ncomp, 0);
  for (std::size_t a = 0; a < m; ++a) {
    ++size[comp[a]];
    std::size_t inside = 0;
    for (std::size_t b = g.lo[a]; b < g.hi[a]; ++b) inside += comp[b] == comp[a];
    if (inside > 1) non_cycle[comp[a]] = 1;
  }

  EntropyEstimate est;
  est.method = EntropyMethod::markov;
  est.matrix_dimension = m;
  est.parameters.emplace_back("partition_intervals", static_cast<double>(m));
  est.parameters.emplace_back("rel_tol", rel_tol);
  std::size_t expanding = 0;
  std::size_t total_iterations = 0;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> x(m), prefix(m + 1), y(m);
  for (std::size_t c = 0; c < ncomp; ++c) {
    if (!non_cycle[c]) continue;
    ++expanding;
    // Collatz-Wielandt bounds for (A_C + I), which is primitive.
    std::vector<std::size_t> members;
    for (std::size_t a = 0; a < m; ++a) {
      x[a] = comp[a] == c ? 1.0 : 0.0;
      if (comp[a] == c) members.push_back(a);
    }
    const std::size_t max_iter = std::max<std::size_t>(20000, 400'000'000 / (m + 1));
    double lo_r = 0.0;
    double hi_r = 0.0;
    for (std::size_t it = 0; it < max_iter; ++it) {
      prefix[0] = 0.0;
      for (std::size_t a = 0; a < m; ++a) prefix[a + 1] = prefix[a] + x[a];
      lo_r = std::numeric_limits<double>::infinity();
      hi_r = 0.0;
      double top = 0.0;
      for (std::size_t a : members) {
        y[a] = x[a] + prefix[g.hi[a]] - prefix[g.lo[a]];
        const double r = y[a] / x[a];
        lo_r = std::min(lo_r, r);
        hi_r = std::max(hi_r, r);
        top = std::max(top, y[a]);
      }
      for (std::size_t a : members) x[a] = y[a] / top;
      ++total_iterations;
      if (hi_r - lo_r <= rel_tol * lo_r) break;
    }
    for (std::size_t a : members) x[a] = 0.0;
    // rho(A_C) > 1 for a strongly connected graph that is not a cycle.
    const double rho_lo = std::max(lo_r - 1.0, 1.0);
    const double rho_hi = std::max(hi_r - 1.0, 1.0);
    lower = std::max(lower, std::log(rho_lo));
    upper = std::max(upper, std::log(rho_hi));
  }
  est.exact_zero = expanding == 0;
  est.lower = lower;
  est.upper = upper;
  est.value = 0.5 * (lower + upper);
  est.parameters.emplace_back("expanding_components", static_cast<double>(expanding));
  est.parameters.emplace_back("power_iterations", static_cast<double>(total_iterations));
  return est;
}

EntropyEstimate entropy_bowen(const PiecewiseLinearMap& f, const BowenOptions& opts) {
  if (opts.n_max < 2) throw PreconditionError("entropy_bowen needs n_max >= 2");
  if (opts.grid_resolution < 2) throw PreconditionError("grid resolution must be >= 2");
  for (std::size_t i = 1; i < opts.epsilons.size(); ++i) {
    if (!(opts.epsilons[i] < opts.epsilons[i - 1])) {
      throw PreconditionError("epsilons must be strictly descending");
    }
  }
  const std::size_t G = opts.grid_resolution;
  const std::size_t n_max = opts.n_max;
  double lip = 1.0;
  {
    const auto& xs = f.breakpoints();
    const auto& ys = f.values();
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      lip = std::max(lip, std::abs(((ys[k + 1] - ys[k]) / (xs[k + 1] - xs[k])).to_double()));
    }
  }
  // Past this n neighbouring grid points can already be eps apart at time
  // n - 1, and the count measures the grid instead of the map.
  auto unsaturated = [&](double eps) {
    std::size_t top = 1;
    while (top < n_max &&
           std::pow(lip, static_cast<double>(top)) / static_cast<double>(G) <= eps / 2) {
      ++top;
    }
    return top;
  };
  std::size_t horizon = 1;
  for (const Rat& e : opts.epsilons) {
    if (e.sign() <= 0) throw DomainError("epsilon must be positive");
    horizon = std::max(horizon, unsaturated(e.to_double()));
  }
  // orbit[k * horizon + i] = f^i(k / G), computed exactly then rounded once.
  std::vector<double> orbit((G + 1) * horizon);
  for (std::size_t k = 0; k <= G; ++k) {
    Rat x(static_cast<long>(k), static_cast<long>(G));
    for (std::size_t i = 0; i < horizon; ++i) {
      orbit[k * horizon + i] = x.to_double();
      if (i + 1 < horizon) x = f(x);
    }
  }
  EntropyEstimate est;
  est.method = EntropyMethod::bowen;
  est.parameters.emplace_back("n_max", static_cast<double>(n_max));
  est.parameters.emplace_back("grid_resolution", static_cast<double>(G));
  est.parameters.emplace_back("lipschitz", lip);
  double best = 0.0;
  for (const Rat& eps_r : opts.epsilons) {
    const double eps = eps_r.to_double();
    const double gap = eps * (1.0 + 1e-9);  // separated only with a safety margin
    const std::size_t top = unsaturated(eps);
    est.parameters.emplace_back("unsaturated_n_eps" + eps_r.str(), static_cast<double>(top));
    std::vector<double> H(top + 1, 1.0);
    std::vector<std::size_t> chosen;
    for (std::size_t n = 1; n <= top; ++n) {
      chosen.clear();
      std::size_t window = 0;  // first chosen index still within eps at time 0
      for (std::size_t k = 0; k <= G; ++k) {
        const double* xo = &orbit[k * horizon];
        while (window < chosen.size() && xo[0] - orbit[chosen[window] * horizon] > gap) ++window;
        bool separated = true;
        for (std::size_t s = window; s < chosen.size() && separated; ++s) {
          const double* so = &orbit[chosen[s] * horizon];
          double dist = 0.0;
          for (std::size_t i = 0; i < n; ++i) dist = std::max(dist, std::abs(xo[i] - so[i]));
          if (dist <= gap) separated = false;
        }
        if (separated) chosen.push_back(k);
      }
      H[n] = static_cast<double>(chosen.size());
      est.parameters.emplace_back("H_n" + std::to_string(n) + "_eps" + eps_r.str(), H[n]);
    }
    // Zero-entropy maps still separate polynomially many orbits (up to cubic
    // growth near the period-doubling cascade), so the rate is read off the
    // third differences of H, which vanish on cubics and grow like exp(h n)
    // otherwise. Window sums of third differences are differences of second
    // differences, and each is moved by k counts against growth to absorb
    // greedy jitter. Renormalizable maps make the counts alternate, so k is
    // even whenever the range allows it.
    std::vector<double> D(H.begin() + 1, H.end());
    for (int order = 0; order < 2; ++order) {
      for (std::size_t j = 0; j + 1 < D.size(); ++j) D[j] = D[j + 1] - D[j];
      D.pop_back();
    }
    if (D.size() < 3) continue;
    const std::size_t t = D.size() - 1;
    const std::size_t k = t / 2 >= 2 ? (t / 2) & ~std::size_t{1} : t / 2;
    const double later = D[t] - D[t - k] - static_cast<double>(k);
    const double earlier = D[t - k] - D[t - 2 * k] + static_cast<double>(k);
    if (later <= 0.0 || earlier <= 0.0) continue;
    const double rate = std::log(later / earlier) / static_cast<double>(k);
    best = std::max(best, rate);
  }
  est.lower = best;
  est.upper = best;
  est.value = best;
  return est;
}

// ------------------------------------------------------ unstable manifolds --

Ivl unstable_manifold_of(const PiecewiseLinearMap& g, const Rat& p) {
  if (g(p) != p) throw PreconditionError(p.str() + " is not a fixed point");
  const Germ gm = germ_at(g, p);
  const bool left = gm.left && side_live(*gm.left, gm.right);
  const bool right = gm.right && side_live(*gm.right, gm.left);
  if (!left && !right) return Ivl::point(p);
  const auto& xs = g.breakpoints();
  auto above = std::upper_bound(xs.begin(), xs.end(), p);
  auto below = std::lower_bound(xs.begin(), xs.end(), p);
  std::optional<Rat> eta;
  if (above != xs.end()) eta = *above - p;
  if (below != xs.begin()) {
    const Rat d = p - *(below - 1);
    eta = eta ? min(*eta, d) : d;
  }
  const Rat h = *eta / Rat(2);
  Ivl J(left ? p - h : p, right ? p + h : p);
  constexpr std::size_t kMaxRounds = 1'000'000;
  for (std::size_t round = 0; round < kMaxRounds; ++round) {
    Ivl next = J.hull(image_of_interval(g, J));
    if (next == J) return J;
    J = std::move(next);
  }
  throw BudgetExceeded("unstable manifold of " + p.str() + " did not stabilize");
}

Ivl unstable_manifold(const PiecewiseLinearMap& f, const Rat& p, std::size_t n,
                      std::size_t piece_budget) {
  if (n == 0) throw PreconditionError("period must be >= 1");
  return unstable_manifold_of(compose_self(f, n, piece_budget), p);
}

bool certify_homoclinic(const PiecewiseLinearMap& f, const HomoclinicWitness& w,
                        std::size_t piece_budget) {
  if (w.x == w.p || w.n == 0 || w.m == 0) return false;
  const auto g = compose_self(f, w.n, piece_budget);
  if (g(w.p) != w.p) return false;
  const Ivl W = unstable_manifold_of(g, w.p);
  if (!(W == w.manifold) || !W.contains(w.x)) return false;
  Rat y = w.x;
  for (std::size_t k = 0; k < w.m; ++k) y = iterate(f, y, w.n).back();
  return y == w.p;
}

namespace {

// Preimages under g of y inside W; one representative per constant piece.
std::vector<Rat> preimages_in(const PiecewiseLinearMap& g, const Rat& y, const Ivl& W,
                              const Rat& avoid) {
  std::vector<Rat> out;
  const auto& xs = g.breakpoints();
  const auto& ys = g.values();
  std::size_t k = g.piece_of(W.lo());
  for (; k + 1 < xs.size() && xs[k] <= W.hi(); ++k) {
    const Rat lo = max(xs[k], W.lo());
    const Rat hi = min(xs[k + 1], W.hi());
    if (hi < lo) continue;
    if (ys[k] == ys[k + 1]) {
      if (ys[k] != y) continue;
      Rat pick = (lo + hi) / Rat(2);
      if (pick == avoid) pick = lo != avoid ? lo : hi;
      out.push_back(pick);
      continue;
    }
    const Rat x = xs[k] + (y - ys[k]) / g.slope(k);
    if (lo <= x && x <= hi) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

HomoclinicSearch find_homoclinic(const PiecewiseLinearMap& f, std::size_t period_bound,
                                 std::size_t m_budget, std::size_t piece_budget) {
  if (period_bound == 0 || m_budget == 0) throw PreconditionError("search bounds must be >= 1");
  HomoclinicSearch out;
  out.period_bound = period_bound;
  out.m_budget = m_budget;
  std::optional<IterateSequence> seq;
  try {
    seq.emplace(f, piece_budget);
  } catch (const BudgetExceeded&) {
    out.budget_exhausted = true;
    return out;
  }
  for (std::size_t n = 1; n <= period_bound; n *= 2) {
    try {
      while (seq->power() < n) seq->advance();
    } catch (const BudgetExceeded&) {
      out.budget_exhausted = true;
      return out;
    }
    const PiecewiseLinearMap& g = seq->current();
    for (const Rat& p : fixed_points(g)) {
      if (minimal_period(f, p, n) != n) continue;
      Ivl W;
      try {
        W = unstable_manifold_of(g, p);
      } catch (const BudgetExceeded&) {
        out.budget_exhausted = true;
        continue;
      }
      if (W.degenerate()) continue;
      // Breadth-first over backward g-orbits of p inside W.
      std::vector<Rat> frontier{p};
      std::unordered_set<Rat> seen{p};
      for (std::size_t m = 1; m <= m_budget && !frontier.empty(); ++m) {
        std::vector<Rat> next;
        for (const Rat& y : frontier) {
          for (Rat& x : preimages_in(g, y, W, p)) {
            if (!seen.insert(x).second) continue;
            HomoclinicWitness w{p, n, x, m, W, {}};
            Rat z = x;
            w.chain.push_back(z);
            for (std::size_t k = 0; k < m; ++k) {
              z = g(z);
              w.chain.push_back(z);
            }
            if (w.chain.back() == p) {
              out.witness = std::move(w);
              out.searched_to_period = n;
              return out;
            }
            next.push_back(std::move(x));
          }
        }
        frontier = std::move(next);
      }
    }
    out.searched_to_period = n;
  }
  return out;
}

std::vector<Rat> omega_accumulation(const PiecewiseLinearMap& f, std::size_t k_min,
                                    std::size_t k_max, const Rat& radius,
                                    std::size_t piece_budget) {
  if (k_min > k_max) throw PreconditionError("k_min must not exceed k_max");
  if (k_max >= 63) throw DomainError("period exponent too large");
  std::vector<std::pair<Rat, std::size_t>> pts;
  IterateSequence seq(f, piece_budget);
  for (std::size_t k = 0; k <= k_max; ++k) {
    const std::size_t n = std::size_t{1} << k;
    while (seq.power() < n) seq.advance();
    if (k < k_min) continue;
    for (const auto& orb : orbits_from_fixed(f, seq.current(), fixed_points(seq.current()), n)) {
      for (const Rat& x : orb.points) pts.emplace_back(x, k);
    }
  }
  std::sort(pts.begin(), pts.end());
  std::vector<Rat> out;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    bool hit = false;
    for (std::size_t b = a; b-- > 0 && pts[a].first - pts[b].first <= radius && !hit;) {
      hit = pts[b].second > pts[a].second;
    }
    for (std::size_t b = a + 1; b < pts.size() && pts[b].first - pts[a].first <= radius && !hit; ++b) {
      hit = pts[b].second > pts[a].second;
    }
    if (hit) out.push_back(pts[a].first);
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace stunted
