#pragma once

// Parameter classification (finite periods, period-doubling boundary, chaos),
// boundary bisection along a line in parameter space, the perturbation
// experiment at a boundary point, and grid scans.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stunted/orbits.hpp"
#include "stunted/rational.hpp"
#include "stunted/renorm.hpp"
#include "stunted/sawtooth.hpp"

namespace stunted {

struct Budgets {
  std::size_t max_period_exp = 8;  // periods searched up to 2^k
  std::size_t piece_budget = kDefaultPieceBudget;
  std::size_t tower_depth = 6;
  std::size_t homoclinic_m_budget = 64;
  double entropy_tol = 1e-9;

  std::size_t period_bound() const { return std::size_t{1} << max_period_exp; }
  /// Throws DomainError unless every field is positive.
  void validate() const;
  /// Escalation used once on Inconclusive cells: k and tower depth doubled.
  Budgets escalated() const;
};

enum class Verdict { finite, boundary, chaotic, inconclusive };

std::string to_string(Verdict v);

enum class ChaosWitness { none, period, entropy, homoclinic };

std::string to_string(ChaosWitness w);

struct ClassificationRecord {
  Shape shape{std::vector<int>{1, -1}};
  std::vector<Rat> w;
  Verdict verdict = Verdict::inconclusive;
  /// Finite: the largest period 2^j.
  std::size_t max_period = 0;
  /// Boundary: the certified tower depth (also filled for Finite when a tower exists).
  std::size_t tower_depth = 0;
  ChaosWitness witness_kind = ChaosWitness::none;
  /// Chaotic by period: a point of that minimal period.
  std::optional<std::pair<std::size_t, Rat>> period_witness;
  std::optional<HomoclinicWitness> homoclinic;
  std::optional<EntropyEstimate> entropy;
  PeriodSetReport periods;
  /// Why the cell is Inconclusive, or notes about the evidence.
  std::string note;
  Budgets budgets_used;
  bool escalated = false;

  std::string verdict_label() const;
};

ClassificationRecord classify(const StuntedSawtoothMap& m, const Budgets& budgets = {});

/// classify, and on Inconclusive once more with escalated budgets.
ClassificationRecord classify_escalating(const StuntedSawtoothMap& m,
                                         const Budgets& budgets = {});

/// Re-derives every certificate of a record from scratch: the period witness
/// cycles back with the stated minimal period, the homoclinic witness
/// re-certifies, entropy recomputes within tol, and Finite or Boundary
/// period sets and towers are rebuilt identically.
bool verify_record(const ClassificationRecord& rec);

/// Points w_lo + t (w_hi - w_lo) for t in [0, 1].
struct ParameterLine {
  Shape shape{std::vector<int>{1, -1}};
  std::vector<Rat> lo;
  std::vector<Rat> hi;

  std::vector<Rat> at(const Rat& t) const;
};

struct BisectStep {
  Rat t;
  Verdict verdict;
  bool escalated = false;
};

struct BisectResult {
  ParameterLine line;
  /// Bracket in t; flanks are its endpoints.
  Rat t_lo;
  Rat t_hi;
  ClassificationRecord left;
  ClassificationRecord right;
  std::vector<BisectStep> steps;
  /// Empty unless an Inconclusive midpoint stopped the bisection early.
  std::string stalled;

  Rat width() const { return t_hi - t_lo; }
  /// Bracket width measured in w (max over coordinates).
  Rat w_width() const;
  std::vector<Rat> midpoint() const { return line.at((t_lo + t_hi) / Rat(2)); }
};

/// Exact bisection of a line between a Finite endpoint and a Chaotic one
/// until the bracket in w is at most tol. Boundary cells count as the
/// order side. Throws PreconditionError if the endpoints coincide or do not
/// straddle the boundary.
BisectResult bisect_boundary(const ParameterLine& line, const Rat& tol,
                             const Budgets& budgets = {},
                             const std::function<void(const BisectStep&)>& progress = {});

struct Theorem1Row {
  Rat eps;
  PlateauSelection selection;
  std::vector<Rat> w_chaos;
  std::vector<Rat> w_order;
  std::vector<ClampNote> chaos_clamps;
  std::vector<ClampNote> order_clamps;
  ClassificationRecord chaos;
  ClassificationRecord order;
  bool chaos_ok = false;  // Chaotic as expected
  bool order_ok = false;  // Finite as expected
};

struct Theorem1Report {
  Shape shape{std::vector<int>{1, -1}};
  std::vector<Rat> w;
  ClassificationRecord boundary;
  std::vector<Rat> omega_points;
  std::vector<Theorem1Row> rows;
  bool all_ok() const;
};

/// For each eps: perturb toward chaos on the plateaus near accumulation
/// points of doubling orbits and toward order on every plateau, then classify
/// both. Throws PreconditionError unless m classifies as Boundary.
Theorem1Report theorem1_experiment(const StuntedSawtoothMap& m, const std::vector<Rat>& eps_list,
                                   const Budgets& budgets = {});

struct ScanConfig {
  Shape shape{std::vector<int>{1, -1}};
  /// Per-coordinate grid: points lo + i (hi - lo) / (count - 1).
  struct Axis {
    Rat lo;
    Rat hi;
    std::size_t count = 1;
  };
  std::vector<Axis> axes;
  /// Alternative to axes: count points along a line (count >= 1).
  std::optional<ParameterLine> line;
  std::size_t line_count = 0;
  Budgets budgets;
  std::string csv_path;
  /// Completed cells, one CSV row per line, appended as cells finish.
  std::string manifest_path;
  /// When set, one JSON certificate per cell is written here.
  std::string json_dir;
  std::size_t threads = 0;  // 0: hardware concurrency

  /// Parses the JSON config format documented in the README.
  static ScanConfig from_json_text(const std::string& text);
};

struct ScanCell {
  std::size_t index = 0;
  std::vector<Rat> w;
  bool skipped = false;  // invalid critical values
  std::string skip_reason;
  std::optional<ClassificationRecord> record;
};

/// Row-major cells of the configured grid (the last coordinate varies fastest).
std::vector<ScanCell> scan_cells(const ScanConfig& config);

inline constexpr const char* kScanCsvHeader =
    "# stunted-scan csv v1\ncell,w,verdict,max_period,entropy,tower_depth,note";

std::string scan_csv_row(const ScanCell& cell);

struct ScanSummary {
  std::size_t cells = 0;
  std::size_t skipped = 0;
  std::size_t resumed = 0;
  std::size_t inconclusive = 0;
  std::vector<std::string> rows;  // CSV rows in cell order
};

/// Classifies every valid cell (concurrently, merged by cell index), appends
/// finished rows to the manifest, then writes the CSV. Cells already listed
/// in the manifest are not recomputed.
ScanSummary scan_grid(const ScanConfig& config);

}  // namespace stunted
