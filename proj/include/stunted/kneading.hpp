#pragma once

// Kneading data of stunted sawtooth maps, the signed-lexicographic order on
// itineraries, the binary adding machine, and recovery of a parameter from
// its kneading data.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stunted/rational.hpp"
#include "stunted/sawtooth.hpp"

namespace stunted {

/// sgn(f^n(c_i) - c_j) for 1 <= n <= depth and 1 <= i, j <= d, where f(c_i)
/// is the plateau value w_i and the comparison against c_j uses the closed
/// plateau [a_j, b_j] (0 inside, -1 left of it, +1 right of it).
class KneadingData {
 public:
  KneadingData(Shape shape, std::size_t depth, std::vector<int8_t> signs);

  const Shape& shape() const { return shape_; }
  std::size_t depth() const { return depth_; }
  int degree() const { return shape_.degree(); }
  /// 1-based n, i, j.
  int sign(std::size_t n, std::size_t i, std::size_t j) const;
  const std::vector<int8_t>& raw() const { return signs_; }

  friend bool operator==(const KneadingData&, const KneadingData&) = default;

 private:
  Shape shape_;
  std::size_t depth_;
  std::vector<int8_t> signs_;  // [(n-1) * d + (i-1)] * d + (j-1)
};

KneadingData kneading_data(const StuntedSawtoothMap& m, std::size_t depth);

/// The signs of one critical orbit: entries[n-1][j-1] = sgn(f^n(c_i) - c_j)
/// for the fixed turning index i. Each entry pins down which lap or plateau
/// f^n(c_i) lies in, so the sequence is the itinerary of w_i.
struct KneadingSequence {
  Shape shape;
  std::size_t index;  // i, 1-based
  std::vector<std::vector<int>> entries;

  friend bool operator==(const KneadingSequence&, const KneadingSequence&) = default;
};

KneadingSequence kneading_sequence(const KneadingData& k, std::size_t i);

/// Position code of a sign vector: lap k -> 2k, plateau j -> 2j - 1. Codes
/// increase left to right along [0,1].
int address_code(const std::vector<int>& signs_against_plateaus);

enum class Order { LT, EQ, GT };

/// Signed-lexicographic order: at the first differing address the naive
/// comparison is reversed when the orientation accumulated along the common
/// prefix is negative. EQ only means equal to the stored depth.
Order compare_kneading(const KneadingSequence& a, const KneadingSequence& b);

std::string to_string(Order o);

/// A depth-n cylinder of {0,1}^N, written with the first coordinate first.
struct OdometerWord {
  std::vector<uint8_t> bits;

  static OdometerWord zeros(std::size_t n) { return {std::vector<uint8_t>(n, 0)}; }
  static OdometerWord parse(std::string_view text);
  /// The word whose binary value (x_0 least significant) is `value`.
  static OdometerWord from_index(std::uint64_t value, std::size_t n);
  std::uint64_t to_index() const;
  std::string str() const;

  friend bool operator==(const OdometerWord&, const OdometerWord&) = default;
};

/// y_i = 1 - x_i if x_j = 1 for all j < i, else y_i = x_i.
OdometerWord adding_machine_step(const OdometerWord& word);

inline constexpr std::size_t kMaxOdometerDepth = 20;

/// The 2^n words visited from 00...0.
std::vector<OdometerWord> odometer_orbit(std::size_t n);

/// A critical value vector whose kneading data matches `target` to
/// `depth`, found by coordinatewise bisection with bracket width <= tol.
/// Throws NotFound when no sweep produces a match.
std::vector<Rat> realize_kneading(const KneadingData& target, std::size_t depth, const Rat& tol);

}  // namespace stunted
