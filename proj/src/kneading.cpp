#include "stunted/kneading.hpp"

#include <optional>

#include "stunted/errors.hpp"

namespace stunted {

KneadingData::KneadingData(Shape shape, std::size_t depth, std::vector<int8_t> signs)
    : shape_(std::move(shape)), depth_(depth), signs_(std::move(signs)) {
  const auto d = static_cast<std::size_t>(shape_.degree());
  if (depth_ == 0) throw DomainError("kneading depth must be >= 1");
  if (signs_.size() != depth_ * d * d) throw DomainError("kneading table is not rectangular");
  for (int8_t s : signs_) {
    if (s < -1 || s > 1) throw DomainError("kneading entries must be -1, 0 or +1");
  }
}

int KneadingData::sign(std::size_t n, std::size_t i, std::size_t j) const {
  const auto d = static_cast<std::size_t>(degree());
  if (n < 1 || n > depth_ || i < 1 || i > d || j < 1 || j > d) {
    throw DomainError("kneading index out of range");
  }
  return signs_[((n - 1) * d + (i - 1)) * d + (j - 1)];
}

namespace {

int side_of(const Rat& x, const Ivl& span) {
  if (x < span.lo()) return -1;
  if (x > span.hi()) return 1;
  return 0;
}

}  // namespace

KneadingData kneading_data(const StuntedSawtoothMap& m, std::size_t depth) {
  const auto d = static_cast<std::size_t>(m.degree());
  std::vector<int8_t> signs(depth * d * d);
  for (std::size_t i = 0; i < d; ++i) {
    Rat x = m.w()[i];
    for (std::size_t n = 0; n < depth; ++n) {
      for (std::size_t j = 0; j < d; ++j) {
        signs[(n * d + i) * d + j] = static_cast<int8_t>(side_of(x, m.plateaus()[j].span));
      }
      x = m(x);
    }
  }
  return KneadingData(m.shape(), depth, std::move(signs));
}

KneadingSequence kneading_sequence(const KneadingData& k, std::size_t i) {
  const auto d = static_cast<std::size_t>(k.degree());
  if (i < 1 || i > d) throw DomainError("turning index out of range");
  KneadingSequence seq{k.shape(), i, {}};
  for (std::size_t n = 1; n <= k.depth(); ++n) {
    std::vector<int> row(d);
    for (std::size_t j = 1; j <= d; ++j) row[j - 1] = k.sign(n, i, j);
    seq.entries.push_back(std::move(row));
  }
  return seq;
}

int address_code(const std::vector<int>& signs) {
  int right_of = 0;
  for (std::size_t j = 0; j < signs.size(); ++j) {
    if (signs[j] == 0) return 2 * static_cast<int>(j + 1) - 1;
    if (signs[j] > 0) ++right_of;
  }
  return 2 * right_of;
}

Order compare_kneading(const KneadingSequence& a, const KneadingSequence& b) {
  if (!(a.shape == b.shape)) throw PreconditionError("kneading sequences have different shapes");
  if (a.index != b.index) throw PreconditionError("kneading sequences for different turning indices");
  if (a.entries.size() != b.entries.size()) {
    throw PreconditionError("kneading sequences have different depths");
  }
  int orientation = 1;
  for (std::size_t n = 0; n < a.entries.size(); ++n) {
    const int ca = address_code(a.entries[n]);
    const int cb = address_code(b.entries[n]);
    if (ca != cb) {
      const int naive = ca < cb ? -1 : 1;
      return naive * orientation < 0 ? Order::LT : Order::GT;
    }
    // Plateaus collapse everything after them, so their orientation is moot.
    if (ca % 2 == 0) orientation *= a.shape.lap_sign(static_cast<std::size_t>(ca / 2));
  }
  return Order::EQ;
}

std::string to_string(Order o) {
  switch (o) {
    case Order::LT: return "LT";
    case Order::EQ: return "EQ";
    case Order::GT: return "GT";
  }
  return "?";
}

OdometerWord OdometerWord::parse(std::string_view text) {
  OdometerWord w;
  for (char c : text) {
    if (c != '0' && c != '1') throw DomainError("odometer words are bit strings");
    w.bits.push_back(static_cast<uint8_t>(c - '0'));
  }
  return w;
}

OdometerWord OdometerWord::from_index(std::uint64_t value, std::size_t n) {
  OdometerWord w = zeros(n);
  for (std::size_t i = 0; i < n; ++i) w.bits[i] = static_cast<uint8_t>((value >> i) & 1U);
  return w;
}

std::uint64_t OdometerWord::to_index() const {
  std::uint64_t v = 0;
  for (std::size_t i = bits.size(); i-- > 0;) v = (v << 1) | bits[i];
  return v;
}

std::string OdometerWord::str() const {
  std::string s;
  for (uint8_t b : bits) s.push_back(static_cast<char>('0' + b));
  return s;
}

OdometerWord adding_machine_step(const OdometerWord& word) {
  OdometerWord out = word;
  bool all_ones_before = true;
  for (std::size_t i = 0; i < word.bits.size(); ++i) {
    out.bits[i] = all_ones_before ? static_cast<uint8_t>(1 - word.bits[i]) : word.bits[i];
    all_ones_before = all_ones_before && word.bits[i] == 1;
  }
  return out;
}

std::vector<OdometerWord> odometer_orbit(std::size_t n) {
  if (n > kMaxOdometerDepth) {
    throw BudgetExceeded("odometer depth " + std::to_string(n) + " exceeds " +
                         std::to_string(kMaxOdometerDepth));
  }
  std::vector<OdometerWord> out;
  out.reserve(std::size_t{1} << n);
  OdometerWord w = OdometerWord::zeros(n);
  for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
    out.push_back(w);
    w = adding_machine_step(w);
  }
  return out;
}

namespace {

KneadingData truncate(const KneadingData& k, std::size_t depth) {
  const auto d = static_cast<std::size_t>(k.degree());
  std::vector<int8_t> s(k.raw().begin(), k.raw().begin() + static_cast<long>(depth * d * d));
  return KneadingData(k.shape(), depth, std::move(s));
}

std::optional<StuntedSawtoothMap> try_build(const Shape& shape, const std::vector<Rat>& w) {
  try {
    return build_stunted(shape, w);
  } catch (const ConstraintViolation&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<Rat> realize_kneading(const KneadingData& target_full, std::size_t depth,
                                  const Rat& tol) {
  if (depth == 0 || depth > target_full.depth()) {
    throw PreconditionError("realization depth must be between 1 and the target's depth");
  }
  if (tol.sign() <= 0) throw DomainError("tolerance must be positive");
  const KneadingData target = truncate(target_full, depth);
  const Shape& shape = target.shape();
  const auto d = static_cast<std::size_t>(shape.degree());
  std::vector<KneadingSequence> goal;
  for (std::size_t i = 1; i <= d; ++i) goal.push_back(kneading_sequence(target, i));

  // Start with max plateaus high and min plateaus low.
  std::vector<Rat> w(d);
  for (std::size_t i = 0; i < d; ++i) w[i] = shape.lap_sign(i) > 0 ? Rat(3, 4) : Rat(1, 4);

  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool moved = false;
    for (std::size_t i = 0; i < d; ++i) {
      const bool is_max = shape.lap_sign(i) > 0;
      // Feasible range for w_i with the other coordinates held fixed. Bounds
      // from neighbours are strict, the ends of [0,1] are attainable.
      Rat lo = 0;
      Rat hi = 1;
      for (std::size_t j : {i - 1, i + 1}) {
        if (j >= d) continue;
        if (is_max) {
          lo = max(lo, w[j]);
        } else {
          hi = min(hi, w[j]);
        }
      }
      // Raising w_i moves its itinerary up in the signed order, for max and
      // min plateaus alike (the reflection x -> 1 - x reverses both).
      auto probe = [&](const Rat& x) -> std::optional<std::pair<Order, bool>> {
        std::vector<Rat> trial = w;
        trial[i] = x;
        auto m = try_build(shape, trial);
        if (!m) return std::nullopt;
        const KneadingData kd = kneading_data(*m, depth);
        const Order o = compare_kneading(kneading_sequence(kd, i + 1), goal[i]);
        return std::make_pair(o, kd == target);
      };
      // The attainable extreme first (w_i = 1 for a max plateau, 0 for a min one).
      const Rat extreme = is_max ? hi : lo;
      if (auto r = probe(extreme); r && r->second) {
        w[i] = extreme;
        return w;
      }
      Rat a = lo;
      Rat b = hi;
      Rat last = w[i];
      while (b - a > tol) {
        const Rat mid = (a + b) / Rat(2);
        auto r = probe(mid);
        if (!r) break;
        last = mid;
        if (r->second) {
          w[i] = mid;
          return w;
        }
        if (r->first == Order::EQ) break;
        if (r->first == Order::LT) {
          a = mid;
        } else {
          b = mid;
        }
      }
      if (last != w[i]) {
        w[i] = last;
        moved = true;
      }
    }
    if (!moved) break;
  }
  throw NotFound("no critical value vector reproduces the target kneading data to depth " +
                 std::to_string(depth));
}

}  // namespace stunted
