#include <random>

#include "doctest.h"
#include "stunted/errors.hpp"
#include "stunted/sawtooth.hpp"
#include "support.hpp"

using namespace stunted;
using testing_support::R;
using testing_support::tent_family;

TEST_CASE("build_sawtooth") {
  const auto tent = build_sawtooth(1, Shape::parse("+-"));
  CHECK(tent.breakpoints() == std::vector<Rat>{R("0"), R("1/2"), R("1")});
  CHECK(tent.values() == std::vector<Rat>{R("0"), R("1"), R("0")});
  const auto s2 = build_sawtooth(2, Shape::parse("+-+"));
  CHECK(s2.breakpoints() == std::vector<Rat>{R("0"), R("1/3"), R("2/3"), R("1")});
  CHECK(s2.values() == std::vector<Rat>{R("0"), R("1"), R("0"), R("1")});
  CHECK(build_sawtooth(1, Shape::parse("-+")).values() == std::vector<Rat>{R("1"), R("0"), R("1")});
  CHECK_THROWS_AS(build_sawtooth(2, Shape::parse("+-")), ConstraintViolation);
  for (int d = 1; d <= 5; ++d) {
    std::string s;
    for (int i = 0; i <= d; ++i) s.push_back(i % 2 ? '-' : '+');
    const auto f = build_sawtooth(d, Shape::parse(s));
    for (std::size_t k = 0; k < f.piece_count(); ++k) CHECK(abs(f.slope(k)) == Rat(d + 1));
  }
}

TEST_CASE("shape parsing") {
  CHECK(Shape::parse("+-+").degree() == 2);
  CHECK_THROWS_AS(Shape::parse("++"), ConstraintViolation);
  CHECK_THROWS_AS(Shape::parse("+"), ConstraintViolation);
  CHECK_THROWS_AS(Shape::parse("+x"), ConstraintViolation);
  CHECK(Shape::parse("+-+-").mirrored().str() == "-+-+");
}

TEST_CASE("build_stunted") {
  const auto full = tent_family(R("1"));
  CHECK(full.map() == build_sawtooth(1, Shape::parse("+-")));
  CHECK(full.plateau(1).span.degenerate());
  CHECK(full.plateau(1).span.lo() == R("1/2"));

  const auto m = tent_family(R("3/5"));
  CHECK(m.plateau(1).span == Ivl(R("3/10"), R("7/10")));
  CHECK(m.plateau(1).height == R("3/5"));
  CHECK(m.plateau(1).kind == PlateauKind::max);

  try {
    build_stunted(Shape::parse("+-+"), {R("1/4"), R("1/2")});
    FAIL("expected a constraint violation");
  } catch (const ConstraintViolation& e) {
    CHECK(std::string(e.what()).find("alternation") != std::string::npos);
  }
  CHECK_THROWS_AS(tent_family(R("11/10")), ConstraintViolation);
  CHECK_THROWS_AS(build_stunted(Shape::parse("+-+"), {R("1/2")}), ConstraintViolation);
}

TEST_CASE("min plateaus use the mirrored half-width") {
  const auto m = build_stunted(Shape::parse("+-+"), {R("7/10"), R("3/10")});
  CHECK(m.plateau(1).kind == PlateauKind::max);
  CHECK(m.plateau(2).kind == PlateauKind::min);
  CHECK(m.plateau(1).span == Ivl(R("1/3") - R("1/10"), R("1/3") + R("1/10")));
  CHECK(m.plateau(2).span == Ivl(R("2/3") - R("1/10"), R("2/3") + R("1/10")));
}

TEST_CASE("validation round trip and plateau geometry") {
  std::mt19937_64 rng(21);
  const Rat eta(1, 100000);
  for (const char* s : {"+-", "-+", "+-+", "-+-", "+-+-", "-+-+-"}) {
    const Shape shape = Shape::parse(s);
    for (int trial = 0; trial < 25; ++trial) {
      const auto w = testing_support::random_valid_w(rng, shape, 90);
      const auto m = build_stunted(shape, w);
      CHECK(m.w() == w);
      CHECK_NOTHROW(validate_critical_values(m.shape(), m.w()));
      for (std::size_t i = 1; i <= w.size(); ++i) {
        const auto& p = m.plateau(i);
        CHECK(m(p.span.lo()) == w[i - 1]);
        CHECK(m(p.turning) == w[i - 1]);
        CHECK(m(p.span.hi()) == w[i - 1]);
        const int side = p.kind == PlateauKind::max ? -1 : 1;
        if (p.span.lo() - eta >= Rat(0)) CHECK((m(p.span.lo() - eta) - w[i - 1]).sign() == side);
        if (p.span.hi() + eta <= Rat(1)) CHECK((m(p.span.hi() + eta) - w[i - 1]).sign() == side);
      }
      for (std::size_t k = 0; k < m.map().piece_count(); ++k) {
        const Rat a = abs(m.map().slope(k));
        CHECK((a.is_zero() || a == Rat(shape.degree() + 1)));
      }
    }
  }
}

TEST_CASE("mirror conjugacy") {
  std::mt19937_64 rng(8);
  for (const char* s : {"+-", "+-+", "-+-+"}) {
    const Shape shape = Shape::parse(s);
    for (int trial = 0; trial < 10; ++trial) {
      const auto m = build_stunted(shape, testing_support::random_valid_w(rng, shape, 70));
      const auto mm = mirror(m);
      for (long k = 0; k <= 500; ++k) {
        const Rat x(k, 500);
        REQUIRE(mm(x) == Rat(1) - m(Rat(1) - x));
      }
      CHECK(mirror(mm).w() == m.w());
    }
  }
}

TEST_CASE("perturb_toward_chaos") {
  auto p = perturb_toward_chaos(tent_family(R("3/5")), R("1/100"), PlateauSelection({1}));
  CHECK(p.map.w() == std::vector<Rat>{R("61/100")});
  CHECK(p.clamps.empty());

  const auto bi = build_stunted(Shape::parse("+-+"), {R("7/10"), R("3/10")});
  p = perturb_toward_chaos(bi, R("1/50"), PlateauSelection({1, 2}));
  CHECK(p.map.w() == std::vector<Rat>{R("18/25"), R("7/25")});

  // Empty selection leaves the map unchanged.
  p = perturb_toward_chaos(bi, R("1/50"), PlateauSelection());
  CHECK(p.map.w() == bi.w());

  // Clamped at the top of the range.
  p = perturb_toward_chaos(tent_family(R("99/100")), R("1/10"), PlateauSelection({1}));
  CHECK(p.map.w() == std::vector<Rat>{R("199/200")});
  REQUIRE(p.clamps.size() == 1);
  CHECK(p.clamps[0].index == 1);
  CHECK(p.clamps[0].requested == R("1/10"));
  CHECK(p.clamps[0].applied == R("1/200"));

  // Exactly reaching the inclusive bound is allowed.
  p = perturb_toward_chaos(tent_family(R("9/10")), R("1/10"), PlateauSelection({1}));
  CHECK(p.map.w() == std::vector<Rat>{R("1")});
  CHECK(p.clamps.empty());

  CHECK_THROWS_AS(perturb_toward_chaos(tent_family(R("1")), R("1/10"), PlateauSelection({1})),
                  ConstraintViolation);
  CHECK_THROWS_AS(perturb_toward_chaos(tent_family(R("1/2")), R("0"), PlateauSelection({1})),
                  DomainError);
  CHECK_THROWS_AS(perturb_toward_chaos(tent_family(R("1/2")), R("1/10"), PlateauSelection({2})),
                  DomainError);
}

TEST_CASE("perturb_toward_order") {
  auto p = perturb_toward_order(tent_family(R("3/5")), R("1/100"));
  CHECK(p.map.w() == std::vector<Rat>{R("59/100")});
  p = perturb_toward_order(tent_family(R("1")), R("1/10"));
  CHECK(p.map.w() == std::vector<Rat>{R("9/10")});

  // Neighbouring plateaus moving toward each other share the gap.
  const auto bi = build_stunted(Shape::parse("+-+"), {R("1/2"), R("2/5")});
  p = perturb_toward_order(bi, R("1/10"));
  CHECK(p.map.w() == std::vector<Rat>{R("19/40"), R("17/40")});
  CHECK(p.clamps.size() == 2);
  CHECK(p.map.w()[0] > p.map.w()[1]);
}

TEST_CASE("perturbations stay within eps and valid") {
  std::mt19937_64 rng(99);
  for (const char* s : {"+-", "+-+", "-+-+"}) {
    const Shape shape = Shape::parse(s);
    for (int trial = 0; trial < 30; ++trial) {
      const auto m = build_stunted(shape, testing_support::random_valid_w(rng, shape, 30));
      const Rat eps(1, 20);
      for (int kind = 0; kind < 2; ++kind) {
        try {
          const auto p = kind == 0 ? perturb_toward_chaos(m, eps, PlateauSelection::all(m))
                                   : perturb_toward_order(m, eps);
          for (std::size_t i = 0; i < m.w().size(); ++i) CHECK(abs(p.map.w()[i] - m.w()[i]) <= eps);
        } catch (const ConstraintViolation&) {
          // some plateau already extremal
        }
      }
    }
  }
}

TEST_CASE("select_lambda_plateaus") {
  const auto m = tent_family(R("3/5"));
  CHECK(select_lambda_plateaus(m, {}, R("1/100")).empty());
  CHECK(select_lambda_plateaus(m, {R("3/10") + R("1/200")}, R("1/100")).indices() ==
        std::vector<std::size_t>{1});
  CHECK(select_lambda_plateaus(m, {R("1/2"), R("9/10")}, R("1/100")).empty());
}
