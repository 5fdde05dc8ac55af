#pragma once

// Sawtooth maps S_d, the stunted family S_w and the two plateau
// perturbations that move a boundary map toward chaos or toward order.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "stunted/plmap.hpp"
#include "stunted/rational.hpp"

namespace stunted {

/// Alternating lap orientations s_1 ... s_{d+1}, each +1 or -1.
class Shape {
 public:
  explicit Shape(std::vector<int> signs);
  /// "+-+" style sign strings.
  static Shape parse(std::string_view text);

  int degree() const { return static_cast<int>(signs_.size()) - 1; }
  /// Orientation of lap k, 0-based (lap k lies between turning points k and k+1).
  int lap_sign(std::size_t k) const { return signs_[k]; }
  const std::vector<int>& signs() const { return signs_; }
  /// Shape of x -> 1 - f(1 - x).
  Shape mirrored() const;
  std::string str() const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<int> signs_;
};

enum class PlateauKind { max, min };

struct Plateau {
  Ivl span;         // [a_i, b_i]; degenerate when w_i is the untruncated extreme
  Rat height;       // w_i
  Rat turning;      // c_i = i/(d+1)
  PlateauKind kind;
};

PiecewiseLinearMap build_sawtooth(int d, const Shape& shape);

class StuntedSawtoothMap {
 public:
  const Shape& shape() const { return shape_; }
  int degree() const { return shape_.degree(); }
  const std::vector<Rat>& w() const { return w_; }
  const PiecewiseLinearMap& map() const { return map_; }
  const std::vector<Plateau>& plateaus() const { return plateaus_; }
  /// Plateau i, 1-based as in the family's indexing.
  const Plateau& plateau(std::size_t i) const { return plateaus_.at(i - 1); }

  Rat operator()(const Rat& x) const { return map_(x); }

 private:
  friend StuntedSawtoothMap build_stunted(const Shape& shape, std::vector<Rat> w);
  StuntedSawtoothMap(Shape shape, std::vector<Rat> w, PiecewiseLinearMap map,
                     std::vector<Plateau> plateaus)
      : shape_(std::move(shape)), w_(std::move(w)), map_(std::move(map)),
        plateaus_(std::move(plateaus)) {}

  Shape shape_;
  std::vector<Rat> w_;
  PiecewiseLinearMap map_;
  std::vector<Plateau> plateaus_;
};

/// Throws ConstraintViolation naming the violated condition.
void validate_critical_values(const Shape& shape, const std::vector<Rat>& w);

StuntedSawtoothMap build_stunted(const Shape& shape, std::vector<Rat> w);

/// The family member conjugate to m by x -> 1 - x.
StuntedSawtoothMap mirror(const StuntedSawtoothMap& m);

/// Plateau indices, 1-based, kept sorted and unique.
class PlateauSelection {
 public:
  PlateauSelection() = default;
  explicit PlateauSelection(std::vector<std::size_t> indices);
  static PlateauSelection all(const StuntedSawtoothMap& m);

  const std::vector<std::size_t>& indices() const { return indices_; }
  bool empty() const { return indices_.empty(); }
  bool contains(std::size_t i) const;

  friend bool operator==(const PlateauSelection&, const PlateauSelection&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// A coordinate whose requested step would have left the valid range.
struct ClampNote {
  std::size_t index;  // 1-based plateau index
  Rat requested;
  Rat applied;
};

struct Perturbation {
  StuntedSawtoothMap map;
  std::vector<ClampNote> clamps;
};

/// Raises selected max plateaus and lowers selected min plateaus by eps.
Perturbation perturb_toward_chaos(const StuntedSawtoothMap& m, const Rat& eps,
                                  const PlateauSelection& sel);
/// Lowers every max plateau and raises every min plateau by eps.
Perturbation perturb_toward_order(const StuntedSawtoothMap& m, const Rat& eps);

/// Plateaus with a closure endpoint within delta of some omega point.
PlateauSelection select_lambda_plateaus(const StuntedSawtoothMap& m,
                                        const std::vector<Rat>& omega_points, const Rat& delta);

}  // namespace stunted
