#include "stunted/sawtooth.hpp"

#include <algorithm>

#include "stunted/errors.hpp"

namespace stunted {

Shape::Shape(std::vector<int> signs) : signs_(std::move(signs)) {
  if (signs_.size() < 2) throw ConstraintViolation("a shape needs at least two laps (d >= 1)");
  for (std::size_t i = 0; i < signs_.size(); ++i) {
    if (signs_[i] != 1 && signs_[i] != -1) throw ConstraintViolation("shape signs must be +1 or -1");
    if (i > 0 && signs_[i] != -signs_[i - 1]) {
      throw ConstraintViolation("shape must alternate: s_{i+1} = -s_i fails at i = " +
                                std::to_string(i));
    }
  }
}

Shape Shape::parse(std::string_view text) {
  std::vector<int> signs;
  for (char c : text) {
    if (c == '+') {
      signs.push_back(1);
    } else if (c == '-') {
      signs.push_back(-1);
    } else if (c != ' ') {
      throw ConstraintViolation("bad shape character '" + std::string(1, c) + "'");
    }
  }
  return Shape(std::move(signs));
}

Shape Shape::mirrored() const {
  std::vector<int> r(signs_.rbegin(), signs_.rend());
  return Shape(std::move(r));
}

std::string Shape::str() const {
  std::string s;
  for (int v : signs_) s.push_back(v > 0 ? '+' : '-');
  return s;
}

PiecewiseLinearMap build_sawtooth(int d, const Shape& shape) {
  if (d < 1) throw ConstraintViolation("sawtooth degree must be >= 1");
  if (shape.degree() != d) {
    throw ConstraintViolation("shape " + shape.str() + " has " +
                              std::to_string(shape.signs().size()) + " signs, expected " +
                              std::to_string(d + 1));
  }
  std::vector<Rat> xs;
  std::vector<Rat> ys;
  const Rat step(1, d + 1);
  for (int k = 0; k <= d + 1; ++k) {
    xs.push_back(step * Rat(k));
    // value at the left end of lap k is 0 iff the lap increases
    if (k <= d) {
      ys.push_back(shape.lap_sign(static_cast<std::size_t>(k)) > 0 ? Rat(0) : Rat(1));
    } else {
      ys.push_back(shape.lap_sign(static_cast<std::size_t>(d)) > 0 ? Rat(1) : Rat(0));
    }
  }
  return PiecewiseLinearMap(std::move(xs), std::move(ys));
}

void validate_critical_values(const Shape& shape, const std::vector<Rat>& w) {
  const auto d = static_cast<std::size_t>(shape.degree());
  if (w.size() != d) {
    throw ConstraintViolation("critical value vector has " + std::to_string(w.size()) +
                              " entries, shape " + shape.str() + " needs " + std::to_string(d));
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (w[j] < Rat(0) || w[j] > Rat(1)) {
      throw ConstraintViolation("range: w_" + std::to_string(j + 1) + " = " + w[j].str() +
                                " outside [0,1]");
    }
  }
  for (std::size_t j = 0; j + 1 < d; ++j) {
    // (w_j - w_{j+1}) * s_{j+1} < 0, with s_{j+1} the orientation of lap j (0-based)
    const Rat lhs = (w[j] - w[j + 1]) * Rat(shape.lap_sign(j + 1));
    if (lhs.sign() >= 0) {
      throw ConstraintViolation("alternation: (w_" + std::to_string(j + 1) + " - w_" +
                                std::to_string(j + 2) + ") * s_" + std::to_string(j + 2) + " = " +
                                lhs.str() + " is not < 0");
    }
  }
}

StuntedSawtoothMap build_stunted(const Shape& shape, std::vector<Rat> w) {
  validate_critical_values(shape, w);
  const int d = shape.degree();
  const Rat step(1, d + 1);
  std::vector<Plateau> plateaus;
  for (int i = 1; i <= d; ++i) {
    const auto idx = static_cast<std::size_t>(i - 1);
    const Rat c = step * Rat(i);
    const bool is_max = shape.lap_sign(idx) > 0;
    const Rat half = is_max ? (Rat(1) - w[idx]) * step : w[idx] * step;
    plateaus.push_back({Ivl(c - half, c + half), w[idx], c, is_max ? PlateauKind::max : PlateauKind::min});
  }
  for (std::size_t i = 0; i + 1 < plateaus.size(); ++i) {
    if (!(plateaus[i].span.hi() < plateaus[i + 1].span.lo())) {
      throw ConstraintViolation("plateau overlap between plateaus " + std::to_string(i + 1) +
                                " and " + std::to_string(i + 2));
    }
  }

  std::vector<Rat> xs{Rat(0)};
  std::vector<Rat> ys{shape.lap_sign(0) > 0 ? Rat(0) : Rat(1)};
  for (const auto& p : plateaus) {
    xs.push_back(p.span.lo());
    ys.push_back(p.height);
    xs.push_back(p.span.hi());
    ys.push_back(p.height);
  }
  xs.push_back(Rat(1));
  ys.push_back(shape.lap_sign(static_cast<std::size_t>(d)) > 0 ? Rat(1) : Rat(0));
  PiecewiseLinearMap map(std::move(xs), std::move(ys));
  return StuntedSawtoothMap(shape, std::move(w), std::move(map), std::move(plateaus));
}

StuntedSawtoothMap mirror(const StuntedSawtoothMap& m) {
  std::vector<Rat> w(m.w().rbegin(), m.w().rend());
  for (auto& v : w) v = Rat(1) - v;
  return build_stunted(m.shape().mirrored(), std::move(w));
}

PlateauSelection::PlateauSelection(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  if (!indices_.empty() && indices_.front() == 0) {
    throw DomainError("plateau indices are 1-based");
  }
}

PlateauSelection PlateauSelection::all(const StuntedSawtoothMap& m) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 1; i <= m.plateaus().size(); ++i) idx.push_back(i);
  return PlateauSelection(std::move(idx));
}

bool PlateauSelection::contains(std::size_t i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

namespace {

// dir[i] in {-1, 0, +1}: direction each coordinate moves.
Perturbation perturb(const StuntedSawtoothMap& m, const Rat& eps, const std::vector<int>& dir) {
  if (eps.sign() <= 0) throw DomainError("perturbation size must be positive");
  const auto& w = m.w();
  const std::size_t d = w.size();
  std::vector<Rat> out = w;
  std::vector<ClampNote> clamps;
  for (std::size_t i = 0; i < d; ++i) {
    if (dir[i] == 0) continue;
    // Tightest limit in the direction of motion. Neighbouring plateaus bound
    // strictly; when a neighbour moves toward us the gap is shared.
    Rat limit = dir[i] > 0 ? Rat(1) : Rat(0);
    bool strict = false;
    for (std::size_t j : {i - 1, i + 1}) {
      if (j >= d) continue;  // also catches i - 1 underflow
      const bool ahead = dir[i] > 0 ? w[j] > w[i] : w[j] < w[i];
      if (!ahead) continue;
      const Rat lim = dir[j] == -dir[i] ? (w[i] + w[j]) / Rat(2) : w[j];
      if (dir[i] > 0 ? lim <= limit : lim >= limit) {
        limit = lim;
        strict = true;
      }
    }
    const Rat slack = abs(limit - w[i]);
    if (slack.is_zero()) {
      throw ConstraintViolation("plateau " + std::to_string(i + 1) +
                                " is already extremal in the requested direction");
    }
    Rat step = eps;
    if (eps > slack || (strict && eps == slack)) {
      step = slack / Rat(2);
      clamps.push_back({i + 1, eps, step});
    }
    out[i] = w[i] + Rat(dir[i]) * step;
  }
  return {build_stunted(m.shape(), std::move(out)), std::move(clamps)};
}

}  // namespace

Perturbation perturb_toward_chaos(const StuntedSawtoothMap& m, const Rat& eps,
                                  const PlateauSelection& sel) {
  std::vector<int> dir(m.w().size(), 0);
  for (std::size_t i : sel.indices()) {
    if (i > dir.size()) throw DomainError("plateau index " + std::to_string(i) + " out of range");
    dir[i - 1] = m.plateau(i).kind == PlateauKind::max ? 1 : -1;
  }
  return perturb(m, eps, dir);
}

Perturbation perturb_toward_order(const StuntedSawtoothMap& m, const Rat& eps) {
  std::vector<int> dir(m.w().size(), 0);
  for (std::size_t i = 1; i <= dir.size(); ++i) {
    dir[i - 1] = m.plateau(i).kind == PlateauKind::max ? -1 : 1;
  }
  return perturb(m, eps, dir);
}

PlateauSelection select_lambda_plateaus(const StuntedSawtoothMap& m,
                                        const std::vector<Rat>& omega_points, const Rat& delta) {
  std::vector<std::size_t> picked;
  for (std::size_t i = 1; i <= m.plateaus().size(); ++i) {
    const Ivl& span = m.plateau(i).span;
    for (const Rat& x : omega_points) {
      if (abs(x - span.lo()) <= delta || abs(x - span.hi()) <= delta) {
        picked.push_back(i);
        break;
      }
    }
  }
  return PlateauSelection(std::move(picked));
}

}  // namespace stunted
