#include <cmath>
#include <random>

#include "doctest.h"
#include "johncheck/envelope.hpp"
#include "johncheck/types.hpp"
#include "oracles.hpp"

using namespace johncheck;

namespace {

const TypeProfile kRef{{2.0, 1.0}, {0.0, 3.0}};

Menu example_menu() {
  return Menu{{Outcome{{1.0, 0.0}, 0.0}, Outcome{{0.0, 1.0}, 0.0}}};
}

Menu random_menu(std::mt19937_64& rng, int n_outcomes, int d) {
  Menu menu;
  for (int k = 0; k < n_outcomes; ++k) {
    Outcome o;
    for (int i = 0; i < d; ++i) o.z.push_back(oracle::uniform(rng, -2.0, 2.0));
    o.cost = oracle::uniform(rng, -1.0, 1.0);
    menu.outcomes.push_back(std::move(o));
  }
  return menu;
}

void check_partition(const std::vector<EnvelopeSegment>& segs) {
  REQUIRE_FALSE(segs.empty());
  CHECK(segs.front().lo == 0.0);
  CHECK(segs.back().hi == 1.0);
  for (std::size_t k = 0; k + 1 < segs.size(); ++k) {
    CHECK(segs[k].hi == segs[k + 1].lo);
    CHECK(segs[k].winner != segs[k + 1].winner);
  }
  for (const EnvelopeSegment& s : segs) CHECK(s.hi > s.lo);
}

}  // namespace

TEST_CASE("line parameters at the reference profile") {
  const std::vector<Line> lines = line_parameters(example_menu(), kRef);
  REQUIRE(lines.size() == 2);
  // Outcome (1,0): value y1 + lambda (x1-y1) = 0 + 2 lambda.
  CHECK(lines[0].intercept == doctest::Approx(0.0));
  CHECK(lines[0].slope == doctest::Approx(2.0));
  // Outcome (0,1): value y2 + lambda (x2-y2) = 3 - 2 lambda.
  CHECK(lines[1].intercept == doctest::Approx(3.0));
  CHECK(lines[1].slope == doctest::Approx(-2.0));
  CHECK(lines[0].outcome_index == 0);
  CHECK(lines[1].outcome_index == 1);
}

TEST_CASE("upper envelope of the example menu crosses at 3/4") {
  const auto segs = upper_envelope(line_parameters(example_menu(), kRef));
  REQUIRE(segs.size() == 2);
  CHECK(segs[0].lo == 0.0);
  CHECK(segs[0].hi == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(segs[0].winner == 1);
  CHECK(segs[1].hi == 1.0);
  CHECK(segs[1].winner == 0);
}

TEST_CASE("upper envelope trivial families") {
  SUBCASE("single line") {
    const auto segs = upper_envelope({{1.0, -3.0, 0}});
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].lo == 0.0);
    CHECK(segs[0].hi == 1.0);
    CHECK(segs[0].winner == 0);
  }
  SUBCASE("identical lines keep the lowest index") {
    const auto segs = upper_envelope({{1.0, 2.0, 0}, {1.0, 2.0, 1}});
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].winner == 0);
  }
  SUBCASE("parallel lines: higher intercept wins everywhere") {
    const auto segs = upper_envelope({{0.0, 1.0, 0}, {2.0, 1.0, 1}});
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].winner == 1);
  }
  SUBCASE("dominated line never appears") {
    const auto segs =
        upper_envelope({{0.0, 2.0, 0}, {3.0, -2.0, 1}, {-5.0, 0.1, 2}});
    for (const EnvelopeSegment& s : segs) CHECK(s.winner != 2);
  }
  SUBCASE("crossing outside [0,1] clips to one segment") {
    // Crossing at lambda = 2; line 0 dominates on all of [0,1].
    const auto segs = upper_envelope({{1.0, 0.0, 0}, {-1.0, 1.0, 1}});
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].winner == 0);
  }
  SUBCASE("empty input is rejected") {
    CHECK_THROWS_AS(upper_envelope({}), InvalidArgument);
  }
}

TEST_CASE("upper envelope matches brute force on random menus") {
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(oracle::unit(rng) * 12);
    const Menu menu = random_menu(rng, n, 3);
    TypeProfile p;
    for (int i = 0; i < 3; ++i) {
      p.x.push_back(oracle::uniform(rng, -2.0, 2.0));
      p.y.push_back(oracle::uniform(rng, -2.0, 2.0));
    }
    const auto segs = upper_envelope(line_parameters(menu, p));
    check_partition(segs);
    for (const EnvelopeSegment& s : segs) {
      const double mid = 0.5 * (s.lo + s.hi);
      const std::size_t brute = oracle::argmax_outcome(menu, mid, p);
      // The midpoint winner must at least tie the brute-force winner; with
      // random data ties have probability zero, so demand equality.
      CHECK(static_cast<std::size_t>(s.winner) == brute);
    }
  }
}

TEST_CASE("uniform mixture integral on the example menu is the closed form") {
  const Vector t = integrate_uniform_mixture(example_menu(), kRef);
  REQUIRE(t.size() == 2);
  CHECK(t[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(t[1] == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("uniform mixture integral matches the Riemann oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(oracle::unit(rng) * 8);
    const Menu menu = random_menu(rng, n, 2);
    TypeProfile p;
    for (int i = 0; i < 2; ++i) {
      p.x.push_back(oracle::uniform(rng, -2.0, 2.0));
      p.y.push_back(oracle::uniform(rng, -2.0, 2.0));
    }
    const Vector exact = integrate_uniform_mixture(menu, p);
    const Vector approx = oracle::riemann_uniform_mixture(menu, p, 200000);
    // Midpoint-rule error on a piecewise-constant integrand: one grid cell
    // per breakpoint, so <= (#outcomes) * range / n ~ 2e-4 here.
    for (std::size_t i = 0; i < exact.size(); ++i)
      CHECK(std::abs(exact[i] - approx[i]) <= 5e-4);
  }
}

TEST_CASE("uniform mixture is a convex combination of menu outcomes") {
  // Segment lengths are the mixture weights: they are nonnegative and sum
  // to 1, so each integral coordinate lies in the menu's coordinate range.
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const Menu menu = random_menu(rng, 5, 2);
    TypeProfile p{{oracle::uniform(rng, -2.0, 2.0), oracle::uniform(rng, -2.0, 2.0)},
                  {oracle::uniform(rng, -2.0, 2.0), oracle::uniform(rng, -2.0, 2.0)}};
    const Vector t = integrate_uniform_mixture(menu, p);
    for (std::size_t i = 0; i < t.size(); ++i) {
      double lo = 1e300, hi = -1e300;
      for (const Outcome& o : menu.outcomes) {
        lo = std::min(lo, o.z[i]);
        hi = std::max(hi, o.z[i]);
      }
      CHECK(t[i] >= lo - 1e-12);
      CHECK(t[i] <= hi + 1e-12);
    }
  }
}

TEST_CASE("discrete mixture integral") {
  const Menu menu = example_menu();
  SUBCASE("two atoms") {
    const LambdaMeasure m = LambdaMeasure::discrete({{0.5, 0.5}, {1.0, 0.5}});
    const Vector t = integrate_discrete_mixture(menu, m, kRef);
    CHECK(t[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t[1] == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("single atom reduces to the elementary rule") {
    const LambdaMeasure m = LambdaMeasure::discrete({{1.0, 1.0}});
    CHECK(integrate_discrete_mixture(menu, m, kRef) == Vector{1.0, 0.0});
  }
  SUBCASE("uniform measure is rejected") {
    CHECK_THROWS_AS(
        integrate_discrete_mixture(menu, LambdaMeasure::uniform(), kRef),
        InvalidArgument);
  }
}
