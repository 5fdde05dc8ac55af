#pragma once

// Renormalization windows, period-doubling towers built from the orbit of a
// plateau value, and the adding-machine check on their blocks.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stunted/plmap.hpp"
#include "stunted/rational.hpp"
#include "stunted/sawtooth.hpp"

namespace stunted {

/// J with f^i(J), 0 <= i < p, pairwise interior-disjoint and f^p(J) inside J.
struct RenormWindow {
  Ivl J;
  std::size_t p = 1;
  std::vector<Ivl> itinerary;  // f^i(J), i = 0 .. p-1
  bool trivial() const { return p == 1; }
};

enum class RenormViolationKind { not_proper, overlap, escape };

struct RenormViolation {
  RenormViolationKind kind;
  /// overlap: the offending pair i < i2. escape: unused.
  std::size_t i = 0;
  std::size_t i2 = 0;
  /// escape: f^p(J) and a point of it outside J.
  std::optional<Ivl> image;
  std::optional<Rat> escape_point;
  std::string message;
};

struct RenormCheck {
  std::optional<RenormWindow> window;
  std::optional<RenormViolation> violation;
  bool certified() const { return window.has_value(); }
};

RenormCheck check_renormalization(const PiecewiseLinearMap& f, const Ivl& J, std::size_t p);

struct GapFixedPoint {
  Rat p;               // fixed point of f between the hulls
  Rat q;               // largest fixed point of f^2 in [p, inf K1)
  std::size_t n = 1;   // 1 when f(q) = q, else 2
  Ivl manifold;        // W^u(q, f^2)
  bool manifold_covers_k1 = false;
};

/// k0 must lie strictly left of k1 and f must send each hull onto a set
/// meeting the other. Throws PreconditionError otherwise and StructureError
/// when f has no fixed point strictly between them.
GapFixedPoint gap_fixed_point(const PiecewiseLinearMap& f, const Ivl& k0, const Ivl& k1,
                              std::size_t piece_budget = kDefaultPieceBudget);

struct TowerLevel {
  Ivl I;                      // block holding the plateau value
  std::size_t u = 1;          // 2^n
  std::vector<Ivl> blocks;    // blocks[k] = hull of f^(k + j 2^n)(v), 0 <= k < 2^n
  RenormWindow window;
};

struct RenormTower {
  std::size_t plateau = 1;    // 1-based distinguished plateau
  Rat value;                  // its plateau value v
  /// Period of v when its orbit closes within the budget.
  std::optional<std::size_t> value_period;
  std::vector<TowerLevel> levels;  // levels[n-1] is level n
  std::size_t depth() const { return levels.size(); }
  /// Why construction stopped below the requested depth (empty when it did not).
  std::string stop_reason;
};

struct TowerBudgets {
  /// Orbit points of v examined when its orbit does not close.
  std::size_t orbit_budget = 1 << 14;
};

/// Levels 1 .. depth around the given plateau. Stops early, with the reason,
/// when a level fails: blocks not pairwise disjoint, window not certified, or
/// no strict nesting with shrinking length.
RenormTower build_tower(const StuntedSawtoothMap& m, std::size_t depth, std::size_t plateau,
                        const TowerBudgets& budgets = {});

/// Tries every plateau and keeps the deepest tower (lowest index on ties).
RenormTower build_tower(const StuntedSawtoothMap& m, std::size_t depth,
                        const TowerBudgets& budgets = {});

struct SemiconjugacyReport {
  std::size_t depth = 0;
  std::vector<Ivl> blocks;          // blocks[k] is labelled by OdometerWord::from_index(k, n)
  std::vector<std::size_t> permutation;  // block index receiving f(block k), or SIZE_MAX
  bool blocks_disjoint = false;
  bool maps_into_successor = false;
  bool odometer_match = false;
  /// Largest number of blocks whose images land in one block.
  std::size_t fiber_diagnostics = 0;
  std::string message;
};

SemiconjugacyReport semiconjugacy_check(const StuntedSawtoothMap& m, const RenormTower& tower,
                                        std::size_t n);

/// A periodic point of period 2^n or 2^(n+1) inside the level-n blocks but
/// outside every level-(n+1) block whose unstable manifold covers some
/// level-(n+1) block.
struct DoublingWitness {
  Rat x;
  std::size_t period = 1;
  Ivl manifold;
  std::size_t covered_block = 0;  // index into level n+1 blocks
};

std::optional<DoublingWitness> doubling_witness(const PiecewiseLinearMap& f,
                                                const RenormTower& tower, std::size_t n,
                                                std::size_t piece_budget = kDefaultPieceBudget);

}  // namespace stunted
