#pragma once

// Continuous piecewise-linear self-maps of [0,1] with exact rational data.

#include <cstddef>
#include <span>
#include <vector>

#include "stunted/rational.hpp"

namespace stunted {

inline constexpr std::size_t kDefaultPieceBudget = 1'000'000;

/// A continuous PL map given by breakpoints 0 = x_0 < ... < x_m = 1 and the
/// values y_k = f(x_k). Continuity is structural. Collinear interior
/// breakpoints are merged on construction, so every stored breakpoint is a
/// genuine change of slope.
class PiecewiseLinearMap {
 public:
  PiecewiseLinearMap(std::vector<Rat> breakpoints, std::vector<Rat> values);

  static PiecewiseLinearMap identity();

  const std::vector<Rat>& breakpoints() const { return xs_; }
  const std::vector<Rat>& values() const { return ys_; }
  std::size_t piece_count() const { return xs_.size() - 1; }

  Rat slope(std::size_t piece) const;
  Ivl piece_domain(std::size_t piece) const { return Ivl(xs_[piece], xs_[piece + 1]); }
  /// The piece k with x_k <= x < x_{k+1} (the last piece when x = 1).
  std::size_t piece_of(const Rat& x) const;

  Rat operator()(const Rat& x) const;

  friend bool operator==(const PiecewiseLinearMap&, const PiecewiseLinearMap&) = default;

 private:
  PiecewiseLinearMap() = default;
  friend class PiecewiseBuilder;

  std::vector<Rat> xs_;
  std::vector<Rat> ys_;
};

/// Accumulates (x, y) vertices left to right, merging collinear runs, and
/// enforces a piece budget.
class PiecewiseBuilder {
 public:
  explicit PiecewiseBuilder(std::size_t piece_budget = kDefaultPieceBudget)
      : budget_(piece_budget) {}

  void push(Rat x, Rat y);
  PiecewiseLinearMap finish() &&;

 private:
  std::size_t budget_;
  std::vector<Rat> xs_;
  std::vector<Rat> ys_;
};

/// Result of following an orbit until it repeats.
struct OrbitRecord {
  Rat start;
  std::vector<Rat> points;  // x_0 ... x_{preperiod + period - 1}
  std::size_t preperiod = 0;
  std::size_t period = 1;

  std::span<const Rat> cycle() const {
    return std::span<const Rat>(points).subspan(preperiod, period);
  }
};

Rat eval(const PiecewiseLinearMap& f, const Rat& x);

/// [x, f(x), ..., f^n(x)].
std::vector<Rat> iterate(const PiecewiseLinearMap& f, const Rat& x, std::size_t n);

/// Exact preperiod and minimal period of the orbit of x. Throws
/// BudgetExceeded once more than `cap` distinct points have been visited.
OrbitRecord orbit_eventually_periodic(const PiecewiseLinearMap& f, const Rat& x,
                                      std::size_t cap = 1'000'000);

/// outer ∘ inner.
PiecewiseLinearMap compose(const PiecewiseLinearMap& outer, const PiecewiseLinearMap& inner,
                           std::size_t piece_budget = kDefaultPieceBudget);

/// f^n, built by repeated left composition with f.
PiecewiseLinearMap compose_self(const PiecewiseLinearMap& f, std::size_t n,
                                std::size_t piece_budget = kDefaultPieceBudget);

/// Walks f, f^2, f^3, ... without recomputing earlier iterates.
class IterateSequence {
 public:
  IterateSequence(PiecewiseLinearMap f, std::size_t piece_budget = kDefaultPieceBudget);

  std::size_t power() const { return n_; }
  const PiecewiseLinearMap& current() const { return current_; }
  /// Advances to f^{n+1}.
  const PiecewiseLinearMap& advance();

 private:
  PiecewiseLinearMap f_;
  PiecewiseLinearMap current_;
  std::size_t n_ = 1;
  std::size_t budget_;
};

/// Number of maximal monotone runs of f (plateaus do not start a lap).
std::size_t lap_count(const PiecewiseLinearMap& f);
/// ℓ(f^n).
std::size_t lap_count(const PiecewiseLinearMap& f, std::size_t n,
                      std::size_t piece_budget = kDefaultPieceBudget);

/// Exact f(J).
Ivl image_of_interval(const PiecewiseLinearMap& f, const Ivl& J);

/// Maximal closed intervals on which f is constant and has positive length.
std::vector<Ivl> constant_intervals(const PiecewiseLinearMap& f);

/// One-sided slopes of f at x; a missing side (x = 0 or x = 1) is reported
/// as equal to the present one.
struct OneSidedSlopes {
  Rat left;
  Rat right;
};
OneSidedSlopes one_sided_slopes(const PiecewiseLinearMap& f, const Rat& x);

}  // namespace stunted
