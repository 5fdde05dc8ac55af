#pragma once

// Periodic orbits, period sets, topological entropy estimators, unstable
// manifolds, homoclinic points and accumulation of period-doubling orbits.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stunted/plmap.hpp"
#include "stunted/rational.hpp"

namespace stunted {

enum class Stability { repelling, attracting, one_sided_attracting, superattracting_plateau };

std::string to_string(Stability s);

struct PeriodicOrbit {
  std::vector<Rat> points;  // starts at the smallest point, then follows f
  std::size_t period = 1;
  Stability stability = Stability::repelling;
};

/// Every fixed point of g. A constant piece contributes its value when the
/// value lies in the piece; a slope-1 piece throws StructureError.
std::vector<Rat> fixed_points(const PiecewiseLinearMap& g);

/// Stability of the f-orbit through p, read from the one-sided slopes of
/// g = f^n at each orbit point.
Stability classify_stability(const PiecewiseLinearMap& g, const std::vector<Rat>& orbit);

/// All periodic orbits of exact period n, sorted by smallest point.
std::vector<PeriodicOrbit> periodic_points(const PiecewiseLinearMap& f, std::size_t n,
                                           std::size_t piece_budget = kDefaultPieceBudget);

/// Fixed points of f, f^2, f^3, ... without composing f^n. Orbits that avoid
/// every constant piece are followed on the intervals where f^n is affine;
/// an orbit meeting a constant piece is a cycle through that piece's value.
/// When the breakpoint orbits are finite the intervals are cylinders of the
/// Markov partition, and only cylinders inside one strongly connected
/// component of the transition graph are kept.
class FixedPointSequence {
 public:
  /// Cycles through constant-piece values longer than max_period are ignored.
  FixedPointSequence(PiecewiseLinearMap f, std::size_t max_period,
                     std::size_t piece_budget = kDefaultPieceBudget,
                     std::size_t partition_budget = std::size_t{1} << 16);

  std::size_t power() const { return n_; }
  /// Sorted fixed points of f^power().
  std::vector<Rat> fixed_points() const;
  /// Advances to f^{n+1}. Throws BudgetExceeded past the piece budget.
  void advance();
  std::size_t expanding_pieces() const { return pieces_.size(); }

 private:
  static constexpr std::size_t kNoCell = static_cast<std::size_t>(-1);
  struct Piece {
    Rat lo, hi;        // f^n(x) = slope * x + intercept on [lo, hi]
    Rat slope, intercept;
    std::size_t cell;  // Markov cell holding f^(n-1)([lo, hi])
  };
  struct Cell {
    Rat lo, hi;
    Rat slope, intercept;            // f on the cell
    std::size_t succ_lo, succ_hi;    // cells covered by f(cell)
  };
  PiecewiseLinearMap f_;
  std::size_t budget_;
  std::size_t n_ = 1;
  std::vector<Piece> pieces_;
  std::vector<std::vector<Rat>> cycles_;
  std::vector<Cell> cells_;          // empty when the partition budget is exceeded
  std::vector<std::size_t> comp_;    // strongly connected component of each cell
};

struct PeriodSetReport {
  std::size_t search_bound = 0;
  std::set<std::size_t> periods;
  bool complete_to_bound = true;
  /// Largest n whose fixed points were fully solved (== search_bound when complete).
  std::size_t checked_to = 0;
  /// One point of minimal period n for every realized n.
  std::map<std::size_t, Rat> witnesses;
};

/// With stop_at_non_power_of_two the search ends at the first period that is
/// not a power of 2, and complete_to_bound reports whether it reached bound.
PeriodSetReport period_set(const PiecewiseLinearMap& f, std::size_t bound,
                           std::size_t piece_budget = kDefaultPieceBudget,
                           bool stop_at_non_power_of_two = false);

/// True when a forces b in Sharkovskii's order (a comes first: 3, 5, 7, ...,
/// 2*3, 2*5, ..., 4, 2, 1).
bool sharkovskii_forces(std::size_t a, std::size_t b);

/// Pairs (p, q) with p realized, p forcing q, q <= bound and q missing.
std::vector<std::pair<std::size_t, std::size_t>> sharkovskii_violations(
    const PeriodSetReport& report);

enum class EntropyMethod { bowen, lap, markov };

std::string to_string(EntropyMethod m);

struct EntropyEstimate {
  double lower = 0.0;
  double upper = 0.0;
  /// Point estimate (extrapolation for lap, midpoint for markov).
  double value = 0.0;
  EntropyMethod method = EntropyMethod::markov;
  /// Markov only: zero entropy certified exactly from the transition graph.
  bool exact_zero = false;
  /// Markov only: dimension of the transition matrix.
  std::size_t matrix_dimension = 0;
  /// Method parameters and per-n bounds, as (name, value) pairs.
  std::vector<std::pair<std::string, double>> parameters;
};

struct BowenOptions {
  std::size_t n_max = 12;
  std::vector<Rat> epsilons{Rat(1, 64)};
  std::size_t grid_resolution = 65521;  // prime, so the grid avoids dyadic orbits
};

/// Greedy (n, eps)-separated sets over the grid k / grid_resolution, for n up
/// to the range the grid resolves. The estimate is the exponential growth rate
/// of the third differences of their sizes, so cubic growth reads as 0.
/// A validation heuristic, not a bound.
EntropyEstimate entropy_bowen(const PiecewiseLinearMap& f, const BowenOptions& opts = {});

/// Upper bounds (1/n) log l(f^n) for n <= n_max; the reported upper bound
/// is their minimum.
EntropyEstimate entropy_lap(const PiecewiseLinearMap& f, std::size_t n_max,
                            std::size_t piece_budget = kDefaultPieceBudget);

inline constexpr std::size_t kDefaultPartitionBudget = 2'000'000;

/// Exact Markov partition from the breakpoints and their forward orbits;
/// log of the spectral radius of the 0-1 transition matrix.
EntropyEstimate entropy_markov(const PiecewiseLinearMap& f,
                               std::size_t partition_budget = kDefaultPartitionBudget,
                               double rel_tol = 1e-12);

/// W^u(p, f^n). p must be fixed by f^n.
Ivl unstable_manifold(const PiecewiseLinearMap& f, const Rat& p, std::size_t n,
                      std::size_t piece_budget = kDefaultPieceBudget);

/// Same, for an already composed g = f^n.
Ivl unstable_manifold_of(const PiecewiseLinearMap& g, const Rat& p);

struct HomoclinicWitness {
  Rat p;
  std::size_t n = 1;
  Rat x;
  std::size_t m = 1;
  Ivl manifold;                 // W^u(p, f^n)
  std::vector<Rat> chain;       // x, f^n(x), ..., f^{mn}(x) = p
};

/// Re-verifies every clause of a witness from scratch.
bool certify_homoclinic(const PiecewiseLinearMap& f, const HomoclinicWitness& w,
                        std::size_t piece_budget = kDefaultPieceBudget);

struct HomoclinicSearch {
  std::optional<HomoclinicWitness> witness;
  /// True when a budget stopped the search before it covered its bounds.
  bool budget_exhausted = false;
  std::size_t period_bound = 0;
  std::size_t m_budget = 0;
  std::size_t searched_to_period = 0;
};

HomoclinicSearch find_homoclinic(const PiecewiseLinearMap& f, std::size_t period_bound,
                                 std::size_t m_budget,
                                 std::size_t piece_budget = kDefaultPieceBudget);

/// Periodic points of period 2^k (k_min <= k <= k_max) that have a periodic
/// point of strictly larger 2-power period within `radius`.
std::vector<Rat> omega_accumulation(const PiecewiseLinearMap& f, std::size_t k_min,
                                    std::size_t k_max, const Rat& radius,
                                    std::size_t piece_budget = kDefaultPieceBudget);

}  // namespace stunted
