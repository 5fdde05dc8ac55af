#pragma once

// Exact rationals and closed rational intervals.
//
// Rat wraps a GMP rational that is always kept in lowest terms with a
// positive denominator. Nothing in the core library rounds; the only
// conversions to floating point are explicit (to_double).

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace stunted {

class Rat {
 public:
  Rat() = default;
  Rat(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p/q", an integer "p", or a finite decimal "0.825" exactly.
  static Rat parse(std::string_view text);
  /// 2^-k.
  static Rat pow2_inv(unsigned k);

  /// "p/q" in lowest terms, q > 0 (integers are written "p/1").
  std::string str() const;
  double to_double() const { return q_.get_d(); }

  const mpq_class& raw() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

 private:
  mpq_class q_;
};

Rat abs(const Rat& x);
Rat min(const Rat& a, const Rat& b);
Rat max(const Rat& a, const Rat& b);
/// Least common multiple of the denominators.
mpz_class lcm_den(const Rat& a, const Rat& b);

std::ostream& operator<<(std::ostream& os, const Rat& x);

/// Closed interval [lo, hi]; lo == hi is a legal degenerate interval.
class Ivl {
 public:
  Ivl() = default;
  Ivl(Rat lo, Rat hi);
  static Ivl point(const Rat& x) { return Ivl(x, x); }

  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  Rat length() const { return hi_ - lo_; }
  Rat midpoint() const { return (lo_ + hi_) / Rat(2); }
  bool degenerate() const { return lo_ == hi_; }

  bool contains(const Rat& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Ivl& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool contains_interior(const Rat& x) const { return lo_ < x && x < hi_; }
  /// Closed intervals share no point.
  bool disjoint(const Ivl& o) const { return hi_ < o.lo_ || o.hi_ < lo_; }
  /// Open interiors do not meet (degenerate intervals have empty interior).
  bool interiors_disjoint(const Ivl& o) const;
  Ivl hull(const Ivl& o) const { return Ivl(min(lo_, o.lo_), max(hi_, o.hi_)); }
  Ivl hull(const Rat& x) const { return Ivl(min(lo_, x), max(hi_, x)); }
  /// Distance from x to the interval (0 when inside).
  Rat distance(const Rat& x) const;

  std::string str() const;

  friend bool operator==(const Ivl&, const Ivl&) = default;

 private:
  Rat lo_{0};
  Rat hi_{0};
};

std::ostream& operator<<(std::ostream& os, const Ivl& x);

}  // namespace stunted

template <>
struct std::hash<stunted::Rat> {
  std::size_t operator()(const stunted::Rat& x) const noexcept { return x.hash(); }
};
