#include "stunted/rational.hpp"

#include <ostream>

#include "stunted/errors.hpp"

namespace stunted {

Rat::Rat(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

namespace {

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw DomainError("cannot parse rational: '" + std::string(whole) + "'");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw DomainError("cannot parse rational: '" + std::string(whole) + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      throw DomainError("cannot parse rational: '" + std::string(whole) + "'");
    }
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

}  // namespace

Rat Rat::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class n = parse_integer(text.substr(0, slash), text);
    mpz_class d = parse_integer(text.substr(slash + 1), text);
    if (d == 0) throw DomainError("rational with zero denominator: '" + std::string(text) + "'");
    return Rat(mpq_class(n, d));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part[0] == '-';
    mpz_class ip = (int_part.empty() || int_part == "-" || int_part == "+")
                       ? mpz_class(0)
                       : parse_integer(int_part, text);
    if (ip < 0) ip = -ip;
    mpz_class fp = frac_part.empty() ? mpz_class(0) : parse_integer(frac_part, text);
    if (!frac_part.empty() && (frac_part[0] == '-' || frac_part[0] == '+')) {
      throw DomainError("cannot parse rational: '" + std::string(text) + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    mpq_class q(ip * scale + fp, scale);
    if (negative) q = -q;
    return Rat(q);
  }
  return Rat(mpq_class(parse_integer(text, text)));
}

Rat Rat::pow2_inv(unsigned k) {
  mpz_class d = 1;
  d <<= k;
  return Rat(mpq_class(mpz_class(1), d));
}

std::string Rat::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::size_t Rat::hash() const {
  const mpz_srcptr n = q_.get_num_mpz_t();
  const mpz_srcptr d = q_.get_den_mpz_t();
  std::size_t h = static_cast<std::size_t>(mpz_size(n)) * 0x9e3779b97f4a7c15ULL;
  h ^= static_cast<std::size_t>(mpz_getlimbn(n, 0)) + 0x7f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::size_t>(mpz_getlimbn(d, 0)) + 0x9e3779b9ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::size_t>(mpz_size(d)) + (h << 6) + (h >> 2);
  if (mpz_sgn(n) < 0) h = ~h;
  return h;
}

Rat abs(const Rat& x) { return x.sign() < 0 ? -x : x; }
Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

mpz_class lcm_den(const Rat& a, const Rat& b) {
  mpz_class out;
  mpz_lcm(out.get_mpz_t(), a.den().get_mpz_t(), b.den().get_mpz_t());
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rat& x) { return os << x.str(); }

Ivl::Ivl(Rat lo, Rat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw DomainError("interval with lo > hi: [" + lo_.str() + ", " + hi_.str() + "]");
}

bool Ivl::interiors_disjoint(const Ivl& o) const {
  if (degenerate() || o.degenerate()) return true;
  return hi_ <= o.lo_ || o.hi_ <= lo_;
}

Rat Ivl::distance(const Rat& x) const {
  if (x < lo_) return lo_ - x;
  if (x > hi_) return x - hi_;
  return Rat(0);
}

std::string Ivl::str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

std::ostream& operator<<(std::ostream& os, const Ivl& x) { return os << x.str(); }

}  // namespace stunted
