#include <random>
#include <set>

#include "doctest.h"
#include "stunted/errors.hpp"
#include "stunted/kneading.hpp"
#include "support.hpp"

using namespace stunted;
using testing_support::R;
using testing_support::tent_family;

namespace {

KneadingSequence seq(const StuntedSawtoothMap& m, std::size_t depth, std::size_t i = 1) {
  return kneading_sequence(kneading_data(m, depth), i);
}

// Signed-lex order computed from raw orbits: position along [0,1] by lap or
// plateau, orientation from the sign of the slope at each point visited.
Order brute_itinerary_order(const StuntedSawtoothMap& ma, const StuntedSawtoothMap& mb,
                            std::size_t depth) {
  Rat x = ma.w()[0];
  Rat y = mb.w()[0];
  int orient = 1;
  for (std::size_t n = 0; n < depth; ++n) {
    auto where = [](const StuntedSawtoothMap& m, const Rat& p) {
      const auto& pl = m.plateau(1).span;
      return p < pl.lo() ? 0 : (p > pl.hi() ? 2 : 1);
    };
    const int a = where(ma, x);
    const int b = where(mb, y);
    if (a != b) return (a < b ? -1 : 1) * orient < 0 ? Order::LT : Order::GT;
    if (a == 2) orient = -orient;
    x = ma(x);
    y = mb(y);
  }
  return Order::EQ;
}

}  // namespace

TEST_CASE("kneading_data examples") {
  const auto tent = tent_family(R("1"));
  const auto k = kneading_data(tent, 3);
  CHECK(k.sign(1, 1, 1) == 1);
  CHECK(k.sign(2, 1, 1) == -1);
  CHECK(k.sign(3, 1, 1) == -1);

  const auto k2 = kneading_data(tent_family(R("3/5")), 2);
  CHECK(k2.sign(1, 1, 1) == 0);
  CHECK(k2.sign(2, 1, 1) == 0);

  // f(c_1) landing exactly on turning point c_1.
  const auto k3 = kneading_data(tent_family(R("1/2")), 2);
  CHECK(k3.sign(1, 1, 1) == 0);
  CHECK_THROWS_AS(k3.sign(3, 1, 1), DomainError);
}

TEST_CASE("address codes") {
  CHECK(address_code({-1, -1}) == 0);
  CHECK(address_code({0, -1}) == 1);
  CHECK(address_code({1, -1}) == 2);
  CHECK(address_code({1, 0}) == 3);
  CHECK(address_code({1, 1}) == 4);
}

TEST_CASE("compare_kneading examples") {
  const auto a = seq(tent_family(R("3/4")), 8);
  CHECK(compare_kneading(a, a) == Order::EQ);
  CHECK(compare_kneading(seq(tent_family(R("1")), 8), seq(tent_family(R("9/10")), 8)) == Order::GT);
  CHECK(compare_kneading(seq(tent_family(R("9/10")), 8), seq(tent_family(R("1")), 8)) == Order::LT);
  CHECK_THROWS_AS(compare_kneading(seq(tent_family(R("1")), 8), seq(tent_family(R("1")), 7)),
                  PreconditionError);
}

TEST_CASE("a decreasing lap reverses the naive verdict") {
  // Both critical values sit right of the plateau (a decreasing lap) at
  // n = 1; they first separate at n = 2.
  const auto lo = tent_family(R("7/10"));
  const auto hi = tent_family(R("9/10"));
  const auto ka = seq(lo, 4);
  const auto kb = seq(hi, 4);
  REQUIRE(address_code(ka.entries[0]) == 2);
  REQUIRE(address_code(kb.entries[0]) == 2);
  const int ca = address_code(ka.entries[1]);
  const int cb = address_code(kb.entries[1]);
  REQUIRE(ca != cb);
  // naive lexicographic order says GT, the signed order says LT
  CHECK(ca > cb);
  CHECK(compare_kneading(ka, kb) == Order::LT);
}

TEST_CASE("signed order agrees with a brute-force itinerary comparison") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 300; ++t) {
    const Rat a = testing_support::random_unit_rational(rng, 1000);
    const Rat b = testing_support::random_unit_rational(rng, 1000);
    const auto ma = tent_family(a);
    const auto mb = tent_family(b);
    CHECK(compare_kneading(seq(ma, 10), seq(mb, 10)) == brute_itinerary_order(ma, mb, 10));
  }
}

TEST_CASE("kneading is monotone in the stunted tent parameter") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    Rat a = testing_support::random_unit_rational(rng, 5000);
    Rat b = testing_support::random_unit_rational(rng, 5000);
    if (b < a) std::swap(a, b);
    const Order o = compare_kneading(seq(tent_family(a), 10), seq(tent_family(b), 10));
    CHECK((o == Order::LT || o == Order::EQ));
  }
}

TEST_CASE("compare_kneading is a total preorder") {
  std::mt19937_64 rng(7);
  const Shape shape = Shape::parse("+-+");
  std::vector<KneadingSequence> ks;
  for (int t = 0; t < 40; ++t) {
    ks.push_back(seq(build_stunted(shape, testing_support::random_valid_w(rng, shape, 60)), 8, 1));
  }
  auto le = [](const KneadingSequence& x, const KneadingSequence& y) {
    return compare_kneading(x, y) != Order::GT;
  };
  for (const auto& x : ks) {
    for (const auto& y : ks) {
      CHECK((le(x, y) || le(y, x)));
      const Order xy = compare_kneading(x, y);
      const Order yx = compare_kneading(y, x);
      CHECK((xy == Order::EQ) == (yx == Order::EQ));
      if (xy == Order::LT) CHECK(yx == Order::GT);
      for (const auto& z : ks) {
        if (le(x, y) && le(y, z)) CHECK(le(x, z));
      }
    }
  }
}

TEST_CASE("mirror flips the kneading table") {
  std::mt19937_64 rng(31);
  for (const char* s : {"+-", "+-+", "-+-+"}) {
    const Shape shape = Shape::parse(s);
    for (int t = 0; t < 10; ++t) {
      const auto m = build_stunted(shape, testing_support::random_valid_w(rng, shape, 80));
      const auto k = kneading_data(m, 9);
      const auto km = kneading_data(mirror(m), 9);
      const auto d = static_cast<std::size_t>(shape.degree());
      for (std::size_t n = 1; n <= 9; ++n) {
        for (std::size_t i = 1; i <= d; ++i) {
          for (std::size_t j = 1; j <= d; ++j) CHECK(km.sign(n, i, j) == -k.sign(n, d + 1 - i, d + 1 - j));
        }
      }
    }
  }
}

TEST_CASE("adding machine") {
  CHECK(adding_machine_step(OdometerWord::parse("0000")).str() == "1000");
  CHECK(adding_machine_step(OdometerWord::parse("110")).str() == "001");
  CHECK(adding_machine_step(OdometerWord::parse("111")).str() == "000");
  CHECK(adding_machine_step(OdometerWord::parse("")).str() == "");
}

TEST_CASE("odometer orbit") {
  auto o1 = odometer_orbit(1);
  CHECK(o1.size() == 2);
  CHECK(o1[0].str() == "0");
  CHECK(o1[1].str() == "1");
  auto o2 = odometer_orbit(2);
  std::vector<std::string> s2;
  for (auto& w : o2) s2.push_back(w.str());
  CHECK(s2 == std::vector<std::string>{"00", "10", "01", "11"});
  auto o3 = odometer_orbit(3);
  for (std::size_t k = 0; k < o3.size(); ++k) CHECK((o3[k].bits[0] == 1) == (k % 2 == 1));
  CHECK_THROWS_AS(odometer_orbit(21), BudgetExceeded);
}

TEST_CASE("odometer is a full cycle on cylinders") {
  for (std::size_t n = 1; n <= 10; ++n) {
    OdometerWord w = OdometerWord::from_index(5 % (1U << n), n);
    const OdometerWord start = w;
    std::set<std::uint64_t> seen;
    for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
      seen.insert(w.to_index());
      CHECK(adding_machine_step(w).to_index() == ((w.to_index() + 1) & ((1U << n) - 1)));
      w = adding_machine_step(w);
    }
    CHECK(w == start);
    CHECK(seen.size() == (std::size_t{1} << n));
  }
}

TEST_CASE("realize_kneading") {
  const auto target = kneading_data(tent_family(R("1")), 8);
  const Rat tol(1, 1000000);
  const auto w = realize_kneading(target, 8, tol);
  CHECK(abs(w[0] - Rat(1)) <= tol);
  CHECK(kneading_data(tent_family(w[0]), 8) == target);

  // f(c_1) left of the plateau is impossible for the stunted tent.
  std::vector<int8_t> bad(8, -1);
  CHECK_THROWS_AS(realize_kneading(KneadingData(Shape::parse("+-"), 8, bad), 8, tol), NotFound);
}

TEST_CASE("realize_kneading round trip") {
  std::mt19937_64 rng(2024);
  const Rat tol(1, 1000000000000L);
  for (const char* s : {"+-", "-+", "+-+", "-+-"}) {
    const Shape shape = Shape::parse(s);
    for (int t = 0; t < 10; ++t) {
      const auto w = testing_support::random_valid_w(rng, shape, 997);
      const auto target = kneading_data(build_stunted(shape, w), 12);
      std::vector<Rat> found;
      CHECK_NOTHROW(found = realize_kneading(target, 12, tol));
      if (!found.empty()) CHECK(kneading_data(build_stunted(shape, found), 12) == target);
    }
  }
}
