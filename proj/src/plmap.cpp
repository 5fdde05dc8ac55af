#include "stunted/plmap.hpp"

#include <algorithm>
#include <unordered_map>

#include "stunted/errors.hpp"

namespace stunted {

void PiecewiseBuilder::push(Rat x, Rat y) {
  if (!xs_.empty()) {
    if (x == xs_.back()) {
      if (y != ys_.back()) {
        throw DomainError("discontinuity at x = " + x.str() + ": " + ys_.back().str() +
                          " vs " + y.str());
      }
      return;
    }
    if (x < xs_.back()) throw DomainError("breakpoints must ascend (" + x.str() + ")");
  }
  const std::size_t n = xs_.size();
  if (n >= 2) {
    const Rat& x1 = xs_[n - 2];
    const Rat& y1 = ys_[n - 2];
    const Rat& x2 = xs_[n - 1];
    const Rat& y2 = ys_[n - 1];
    if ((y2 - y1) * (x - x2) == (y - y2) * (x2 - x1)) {
      xs_.pop_back();
      ys_.pop_back();
    }
  }
  xs_.push_back(std::move(x));
  ys_.push_back(std::move(y));
  if (xs_.size() > budget_ + 1) {
    throw BudgetExceeded("piece budget of " + std::to_string(budget_) + " exceeded");
  }
}

PiecewiseLinearMap PiecewiseBuilder::finish() && {
  if (xs_.size() < 2) throw DomainError("a PL map needs at least one piece");
  if (xs_.front() != Rat(0) || xs_.back() != Rat(1)) {
    throw DomainError("breakpoints must start at 0 and end at 1");
  }
  PiecewiseLinearMap out;
  out.xs_ = std::move(xs_);
  out.ys_ = std::move(ys_);
  return out;
}

PiecewiseLinearMap::PiecewiseLinearMap(std::vector<Rat> breakpoints, std::vector<Rat> values) {
  if (breakpoints.size() != values.size()) {
    throw DomainError("breakpoints and values differ in length");
  }
  PiecewiseBuilder b(breakpoints.size());
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (values[i] < Rat(0) || values[i] > Rat(1)) {
      throw DomainError("value " + values[i].str() + " outside [0,1]: not a self-map");
    }
    b.push(std::move(breakpoints[i]), std::move(values[i]));
  }
  *this = std::move(b).finish();
}

PiecewiseLinearMap PiecewiseLinearMap::identity() {
  return PiecewiseLinearMap({Rat(0), Rat(1)}, {Rat(0), Rat(1)});
}

Rat PiecewiseLinearMap::slope(std::size_t k) const {
  return (ys_[k + 1] - ys_[k]) / (xs_[k + 1] - xs_[k]);
}

std::size_t PiecewiseLinearMap::piece_of(const Rat& x) const {
  if (x < Rat(0) || x > Rat(1)) throw DomainError("x = " + x.str() + " outside [0,1]");
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t k = static_cast<std::size_t>(it - xs_.begin()) - 1;
  return std::min(k, piece_count() - 1);
}

Rat PiecewiseLinearMap::operator()(const Rat& x) const {
  const std::size_t k = piece_of(x);
  if (x == xs_[k]) return ys_[k];
  if (x == xs_[k + 1]) return ys_[k + 1];
  return ys_[k] + (x - xs_[k]) * (ys_[k + 1] - ys_[k]) / (xs_[k + 1] - xs_[k]);
}

Rat eval(const PiecewiseLinearMap& f, const Rat& x) { return f(x); }

std::vector<Rat> iterate(const PiecewiseLinearMap& f, const Rat& x, std::size_t n) {
  std::vector<Rat> out;
  out.reserve(n + 1);
  out.push_back(x);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(out.back()));
  return out;
}

OrbitRecord orbit_eventually_periodic(const PiecewiseLinearMap& f, const Rat& x,
                                      std::size_t cap) {
  OrbitRecord rec;
  rec.start = x;
  std::unordered_map<Rat, std::size_t> seen;
  Rat cur = x;
  for (;;) {
    auto [it, inserted] = seen.emplace(cur, rec.points.size());
    if (!inserted) {
      rec.preperiod = it->second;
      rec.period = rec.points.size() - it->second;
      return rec;
    }
    if (rec.points.size() >= cap) {
      throw BudgetExceeded("orbit of " + x.str() + " longer than " + std::to_string(cap));
    }
    rec.points.push_back(cur);
    cur = f(cur);
  }
}

PiecewiseLinearMap compose(const PiecewiseLinearMap& outer, const PiecewiseLinearMap& inner,
                           std::size_t piece_budget) {
  const auto& bx = outer.breakpoints();
  const auto& by = outer.values();
  const auto& xs = inner.breakpoints();
  const auto& ys = inner.values();
  PiecewiseBuilder out(piece_budget);
  out.push(xs[0], outer(ys[0]));
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const Rat& y0 = ys[k];
    const Rat& y1 = ys[k + 1];
    if (y0 != y1) {
      const Rat& lo = y0 < y1 ? y0 : y1;
      const Rat& hi = y0 < y1 ? y1 : y0;
      auto first = std::upper_bound(bx.begin(), bx.end(), lo);
      auto last = std::lower_bound(bx.begin(), bx.end(), hi);
      if (first < last) {
        const Rat dx_over_dy = (xs[k + 1] - xs[k]) / (y1 - y0);
        auto emit = [&](auto it) {
          const auto j = static_cast<std::size_t>(it - bx.begin());
          out.push(xs[k] + (bx[j] - y0) * dx_over_dy, by[j]);
        };
        if (y0 < y1) {
          for (auto it = first; it != last; ++it) emit(it);
        } else {
          for (auto it = last; it != first;) emit(--it);
        }
      }
    }
    out.push(xs[k + 1], outer(y1));
  }
  return std::move(out).finish();
}

PiecewiseLinearMap compose_self(const PiecewiseLinearMap& f, std::size_t n,
                                std::size_t piece_budget) {
  if (n == 0) throw PreconditionError("compose_self needs n >= 1");
  IterateSequence seq(f, piece_budget);
  while (seq.power() < n) seq.advance();
  return seq.current();
}

IterateSequence::IterateSequence(PiecewiseLinearMap f, std::size_t piece_budget)
    : f_(f), current_(std::move(f)), budget_(piece_budget) {
  if (current_.piece_count() > budget_) {
    throw BudgetExceeded("piece budget of " + std::to_string(budget_) + " exceeded");
  }
}

const PiecewiseLinearMap& IterateSequence::advance() {
  current_ = compose(f_, current_, budget_);
  ++n_;
  return current_;
}

std::size_t lap_count(const PiecewiseLinearMap& f) {
  std::size_t laps = 0;
  int last = 0;
  const auto& ys = f.values();
  for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
    const int s = (ys[k + 1] - ys[k]).sign();
    if (s == 0) continue;
    if (s != last) ++laps;
    last = s;
  }
  return std::max<std::size_t>(laps, 1);
}

std::size_t lap_count(const PiecewiseLinearMap& f, std::size_t n, std::size_t piece_budget) {
  return lap_count(compose_self(f, n, piece_budget));
}

Ivl image_of_interval(const PiecewiseLinearMap& f, const Ivl& J) {
  if (J.lo() < Rat(0) || J.hi() > Rat(1)) {
    throw DomainError("interval " + J.str() + " not inside [0,1]");
  }
  Rat lo = f(J.lo());
  Rat hi = lo;
  auto widen = [&](const Rat& y) {
    if (y < lo) lo = y;
    if (y > hi) hi = y;
  };
  widen(f(J.hi()));
  const auto& xs = f.breakpoints();
  const auto& ys = f.values();
  auto first = std::upper_bound(xs.begin(), xs.end(), J.lo());
  auto last = std::lower_bound(xs.begin(), xs.end(), J.hi());
  for (auto it = first; it < last; ++it) widen(ys[static_cast<std::size_t>(it - xs.begin())]);
  return Ivl(lo, hi);
}

std::vector<Ivl> constant_intervals(const PiecewiseLinearMap& f) {
  std::vector<Ivl> out;
  const auto& xs = f.breakpoints();
  const auto& ys = f.values();
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    if (ys[k] == ys[k + 1]) out.emplace_back(xs[k], xs[k + 1]);
  }
  return out;
}

OneSidedSlopes one_sided_slopes(const PiecewiseLinearMap& f, const Rat& x) {
  const std::size_t k = f.piece_of(x);
  const auto& xs = f.breakpoints();
  if (x == xs[k] && k > 0) return {f.slope(k - 1), f.slope(k)};
  const Rat s = f.slope(k);
  return {s, s};
}

}  // namespace stunted
