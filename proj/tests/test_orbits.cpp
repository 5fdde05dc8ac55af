#include <chrono>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "stunted/errors.hpp"
#include "stunted/orbits.hpp"
#include "support.hpp"

using namespace stunted;
using testing_support::full_tent;
using testing_support::R;
using testing_support::tent_family;

namespace {

std::set<Rat> points_of(const std::vector<PeriodicOrbit>& orbits) {
  std::set<Rat> out;
  for (const auto& o : orbits) out.insert(o.points.begin(), o.points.end());
  return out;
}

}  // namespace

TEST_CASE("periodic_points examples") {
  auto p1 = periodic_points(full_tent(), 1);
  REQUIRE(p1.size() == 2);
  CHECK(p1[0].points == std::vector<Rat>{R("0")});
  CHECK(p1[1].points == std::vector<Rat>{R("2/3")});
  CHECK(p1[0].stability == Stability::repelling);
  CHECK(p1[1].stability == Stability::repelling);

  auto p3 = periodic_points(full_tent(), 3);
  REQUIRE(p3.size() == 2);
  CHECK(p3[0].points == std::vector<Rat>{R("2/9"), R("4/9"), R("8/9")});
  CHECK(p3[1].points == std::vector<Rat>{R("2/7"), R("4/7"), R("6/7")});

  auto s = periodic_points(tent_family(R("3/5")).map(), 1);
  REQUIRE(s.size() == 2);
  CHECK(s[0].points == std::vector<Rat>{R("0")});
  CHECK(s[0].stability == Stability::repelling);
  CHECK(s[1].points == std::vector<Rat>{R("3/5")});
  CHECK(s[1].stability == Stability::superattracting_plateau);

  // At w = 4/5 the cycle point 2/5 is the plateau's left end. f^2 throws its
  // left neighbours onto the plateau, so the cycle still captures a neighbourhood.
  auto t = periodic_points(tent_family(R("4/5")).map(), 2);
  REQUIRE(t.size() == 1);
  CHECK(t[0].points == std::vector<Rat>{R("2/5"), R("4/5")});
  CHECK(t[0].stability == Stability::superattracting_plateau);
  // Inside the window it is superattracting.
  auto u = periodic_points(tent_family(R("3/4")).map(), 2);
  REQUIRE(u.size() == 1);
  CHECK(u[0].stability == Stability::superattracting_plateau);

  CHECK_THROWS_AS(periodic_points(full_tent(), 0), PreconditionError);
}

TEST_CASE("fixed_points rejects slope-1 pieces") {
  CHECK_THROWS_AS(fixed_points(PiecewiseLinearMap::identity()), StructureError);
}

TEST_CASE("periodic_points matches the itinerary oracle") {
  std::mt19937_64 rng(77);
  for (const char* s : {"+-", "-+", "+-+", "-+-", "+-+-"}) {
    const Shape shape = Shape::parse(s);
    for (int trial = 0; trial < 4; ++trial) {
      const auto m = build_stunted(shape, testing_support::random_valid_w(rng, shape, 40));
      for (std::size_t n = 1; n <= 5; ++n) {
        const auto mine = points_of(periodic_points(m.map(), n));
        const auto ref = oracle::periodic_points_by_itinerary(m.map(), n);
        CHECK(mine == ref);
        for (const auto& o : periodic_points(m.map(), n)) {
          for (std::size_t k = 0; k < n; ++k) CHECK(m(o.points[k]) == o.points[(k + 1) % n]);
        }
      }
    }
  }
}

TEST_CASE("every periodic point on the denominator grid is found") {
  std::mt19937_64 rng(78);
  for (const char* s : {"+-", "+-+"}) {
    const Shape shape = Shape::parse(s);
    for (int trial = 0; trial < 4; ++trial) {
      const auto w = testing_support::random_valid_w(rng, shape, 12);
      const auto m = build_stunted(shape, w);
      long D = shape.degree() + 1;
      for (const auto& wi : w) D = std::lcm(D, wi.den().get_si());
      D *= 64;
      std::vector<std::set<Rat>> found(7);
      for (std::size_t n = 1; n <= 6; ++n) found[n] = points_of(periodic_points(m.map(), n));
      for (const auto& [x, t] : oracle::periodic_on_denominator_grid(m.map(), D, 6)) {
        CHECK(found[t].count(x) == 1);
      }
    }
  }
}

TEST_CASE("period_set examples") {
  auto a = period_set(full_tent(), 8);
  CHECK(a.periods == std::set<std::size_t>{1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(a.complete_to_bound);
  auto b = period_set(tent_family(R("3/5")).map(), 16);
  CHECK(b.periods == std::set<std::size_t>{1});
  auto c = period_set(tent_family(R("4/5")).map(), 16);
  CHECK(c.periods == std::set<std::size_t>{1, 2});
  auto d = period_set(full_tent(), 40, 1000);
  CHECK(!d.complete_to_bound);
  CHECK(d.checked_to < 40);
  for (const auto& [n, x] : a.witnesses) CHECK(oracle::minimal_period(full_tent(), x) == n);
}

TEST_CASE("FixedPointSequence agrees with composed iterates") {
  std::mt19937_64 rng(21);
  for (const char* s : {"+-", "-+", "+-+", "-+-+"}) {
    const Shape shape = Shape::parse(s);
    for (int trial = 0; trial < 6; ++trial) {
      const auto m = build_stunted(shape, testing_support::random_valid_w(rng, shape, 40));
      FixedPointSequence markov(m.map(), 6);
      FixedPointSequence laps(m.map(), 6, kDefaultPieceBudget, 0);
      for (std::size_t n = 1; n <= 6; ++n) {
        if (n > 1) {
          markov.advance();
          laps.advance();
        }
        const auto g = compose_self(m.map(), n);
        const auto expected = fixed_points(g);
        CHECK(markov.fixed_points() == expected);
        CHECK(laps.fixed_points() == expected);
      }
    }
  }
  // Zero entropy keeps the cylinder count flat.
  FixedPointSequence p8(tent_family(R("103/125")).map(), 256);
  for (int n = 1; n < 200; ++n) p8.advance();
  CHECK(p8.expanding_pieces() <= 16);
}

TEST_CASE("Sharkovskii order") {
  CHECK(sharkovskii_forces(3, 5));
  CHECK(sharkovskii_forces(5, 6));
  CHECK(sharkovskii_forces(6, 10));
  CHECK(sharkovskii_forces(12, 8));
  CHECK(sharkovskii_forces(8, 4));
  CHECK(sharkovskii_forces(2, 1));
  CHECK(!sharkovskii_forces(1, 2));
  CHECK(!sharkovskii_forces(4, 3));
}

TEST_CASE("period sets are Sharkovskii lower sets") {
  std::mt19937_64 rng(10);
  for (const char* s : {"+-", "-+", "+-+", "-+-+"}) {
    const Shape shape = Shape::parse(s);
    for (int trial = 0; trial < 12; ++trial) {
      const auto m = build_stunted(shape, testing_support::random_valid_w(rng, shape, 50));
      const auto rep = period_set(m.map(), 12, 200000);
      CHECK(sharkovskii_violations(rep).empty());
    }
  }
  for (long k = 50; k <= 100; ++k) {
    const auto rep = period_set(tent_family(Rat(k, 100)).map(), 16, 200000);
    CHECK(sharkovskii_violations(rep).empty());
  }
}

TEST_CASE("entropy_markov of full sawtooth maps") {
  for (int d = 1; d <= 4; ++d) {
    std::string s;
    for (int i = 0; i <= d; ++i) s.push_back(i % 2 ? '-' : '+');
    const auto e = entropy_markov(build_sawtooth(d, Shape::parse(s)));
    CHECK(std::abs(e.lower - std::log(d + 1.0)) <= 1e-9);
    CHECK(std::abs(e.upper - std::log(d + 1.0)) <= 1e-9);
    CHECK(!e.exact_zero);
  }
}

TEST_CASE("entropy_markov zero cases") {
  for (const char* w : {"3/5", "4/5", "1/2", "0"}) {
    const auto e = entropy_markov(tent_family(R(w)).map());
    CHECK(e.exact_zero);
    CHECK(e.upper == 0.0);
  }
}

TEST_CASE("entropy_markov stays under lap growth at w = 9/10") {
  const auto f = tent_family(R("9/10")).map();
  const auto mk = entropy_markov(f);
  const auto lp = entropy_lap(f, 18);
  CHECK(mk.upper <= lp.upper + 1e-12);
  CHECK(mk.lower > 0.3);
}

TEST_CASE("entropy_lap") {
  for (int d = 1; d <= 2; ++d) {
    const auto f = build_sawtooth(d, Shape::parse(d == 1 ? "+-" : "+-+"));
    const auto e = entropy_lap(f, 8);
    CHECK(std::abs(e.upper - std::log(d + 1.0)) < 1e-12);
    for (const auto& [name, v] : e.parameters) {
      if (name.rfind("bound_n", 0) == 0) CHECK(std::abs(v - std::log(d + 1.0)) < 1e-12);
    }
  }
  const auto e = entropy_lap(tent_family(R("3/5")).map(), 16);
  CHECK(e.upper < 0.1);
  double prev = 1e9;
  for (std::size_t n = 1; n <= 16; n *= 2) {
    for (const auto& [name, v] : e.parameters) {
      if (name == "bound_n" + std::to_string(n)) {
        CHECK(v <= prev + 1e-15);
        prev = v;
      }
    }
  }
  CHECK_THROWS_AS(entropy_lap(full_tent(), 1), PreconditionError);
}

TEST_CASE("entropy_bowen") {
  BowenOptions opts;
  opts.n_max = 12;
  opts.epsilons = {R("1/64")};
  const auto tent = entropy_bowen(full_tent(), opts);
  CHECK(tent.lower >= 0.60);
  CHECK(tent.lower <= std::log(2.0) + 1e-9);
  const PiecewiseLinearMap mono({R("0"), R("1/3"), R("1")}, {R("0"), R("1/2"), R("1")});
  CHECK(entropy_bowen(mono, opts).lower == 0.0);
  CHECK(entropy_bowen(tent_family(R("3/5")).map(), opts).lower == 0.0);
}

TEST_CASE("unstable_manifold") {
  CHECK(unstable_manifold(full_tent(), R("2/3"), 1) == Ivl(R("0"), R("1")));
  CHECK(unstable_manifold(tent_family(R("3/5")).map(), R("0"), 1) == Ivl(R("0"), R("3/5")));
  CHECK(unstable_manifold(tent_family(R("3/5")).map(), R("3/5"), 1) == Ivl::point(R("3/5")));
  CHECK(unstable_manifold(tent_family(R("4/5")).map(), R("2/5"), 2) == Ivl::point(R("2/5")));
  CHECK(unstable_manifold(tent_family(R("4/5")).map(), R("2/3"), 1) == Ivl(R("2/5"), R("4/5")));
  CHECK_THROWS_AS(unstable_manifold(full_tent(), R("1/2"), 1), PreconditionError);
}

TEST_CASE("unstable manifolds are invariant") {
  std::mt19937_64 rng(1);
  const Shape shape = Shape::parse("+-+");
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = build_stunted(shape, testing_support::random_valid_w(rng, shape, 30));
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto g = compose_self(m.map(), n);
      for (const Rat& p : fixed_points(g)) {
        const Ivl W = unstable_manifold_of(g, p);
        CHECK(W.contains(p));
        CHECK(W.contains(image_of_interval(g, W)));
      }
    }
  }
}

TEST_CASE("find_homoclinic") {
  const auto tent = full_tent();
  auto r = find_homoclinic(tent, 64, 64);
  REQUIRE(r.witness);
  CHECK(certify_homoclinic(tent, *r.witness));
  CHECK(r.witness->x != r.witness->p);

  // The textbook witness through the turning point also certifies.
  HomoclinicWitness w{R("0"), 1, R("1/2"), 2, Ivl(R("0"), R("1")), {}};
  CHECK(certify_homoclinic(tent, w));
  HomoclinicWitness bad = w;
  bad.x = R("1/3");
  CHECK(!certify_homoclinic(tent, bad));

  auto none = find_homoclinic(tent_family(R("3/5")).map(), 64, 64);
  CHECK(!none.witness);
  CHECK(!none.budget_exhausted);
  auto none2 = find_homoclinic(tent_family(R("4/5")).map(), 64, 64);
  CHECK(!none2.witness);
}

TEST_CASE("omega_accumulation") {
  CHECK(omega_accumulation(tent_family(R("3/5")).map(), 0, 4, R("1/100")).empty());
  CHECK(omega_accumulation(full_tent(), 0, 1, R("1/1000")).empty());
}
