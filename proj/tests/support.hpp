#pragma once

#include <random>
#include <string>
#include <vector>

#include "stunted/errors.hpp"
#include "stunted/plmap.hpp"
#include "stunted/rational.hpp"
#include "stunted/sawtooth.hpp"

namespace testing_support {

using stunted::Rat;

inline Rat R(const char* s) { return Rat::parse(s); }

inline stunted::StuntedSawtoothMap tent_family(const Rat& w) {
  return stunted::build_stunted(stunted::Shape::parse("+-"), {w});
}

inline stunted::PiecewiseLinearMap full_tent() {
  return stunted::build_sawtooth(1, stunted::Shape::parse("+-"));
}

/// Random valid critical value vector with denominators up to `den`.
inline std::vector<Rat> random_valid_w(std::mt19937_64& rng, const stunted::Shape& shape,
                                       long den) {
  std::uniform_int_distribution<long> num(0, den);
  for (;;) {
    std::vector<Rat> w;
    for (int i = 0; i < shape.degree(); ++i) w.emplace_back(num(rng), den);
    try {
      stunted::validate_critical_values(shape, w);
      return w;
    } catch (const stunted::Error&) {
    }
  }
}

inline Rat random_unit_rational(std::mt19937_64& rng, long max_den) {
  std::uniform_int_distribution<long> dd(1, max_den);
  const long q = dd(rng);
  std::uniform_int_distribution<long> nn(0, q);
  return Rat(nn(rng), q);
}

}  // namespace testing_support
