#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "aodsort/cost.hpp"
#include "support.hpp"

using namespace aodsort;
using testing::singleTrap;

TEST_CASE("presets") {
  const auto tm = presetTm();
  const auto tm2 = presetTm2();
  CHECK(tm.constantOffset == 120.0);
  CHECK(tm.perSubstepOffset == 0.0);
  CHECK(tm.linearFactor == doctest::Approx(1.0 / 0.13));
  CHECK(tm2.linearFactor == doctest::Approx(1.0 / 0.55));
  CHECK(tm.sitePitch == 1.0);
  CHECK(costPreset("tm") == tm);
  CHECK(costPreset("tm2") == tm2);
  CHECK_THROWS_AS(costPreset("tm3"), ConfigError);
  CHECK(PlannerConfig{}.cost == tm2);
}

TEST_CASE("time demand examples") {
  const auto tm = presetTm();
  const std::vector<double> none{};
  CHECK(timeDemandFromSubsteps(tm, std::vector<double>{0.0}) == doctest::Approx(120.0));
  CHECK(timeDemandFromSubsteps(tm, std::vector<double>{13.0}) == doctest::Approx(220.0));
  CHECK(timeDemandFromSubsteps(presetTm2(), std::vector<double>{55.0}) == doctest::Approx(220.0));
  CHECK(timeDemandFromSubsteps(tm, std::vector<double>{6.5}) == doctest::Approx(170.0));
  CHECK(timeDemand(tm, singleTrap({2, 2}, {2, 2})) == doctest::Approx(120.0));
  // 6.5 sites in one substep (13 doubled units).
  CHECK(timeDemand(tm, singleTrap({0, 13 + 1}, {0, 0})) ==
        doctest::Approx(120.0 + 7.0 / 0.13));

  CostParams generic{0.0, 10.0, 0.0, 1.0, 1.0};
  CHECK(timeDemand(generic, singleTrap({0, 4, 8}, {0, 0, 0})) ==
        doctest::Approx(20.0 + 2.0 * std::sqrt(2.0)));
  generic.sitePitch = 2.0;
  CHECK(timeDemand(generic, singleTrap({0, 4, 8}, {0, 0, 0})) ==
        doctest::Approx(20.0 + 2.0 * std::sqrt(4.0)));
}

TEST_CASE("cost parameter checks") {
  CostParams p;
  p.sitePitch = 0.0;
  CHECK_THROWS_AS(p.check(), ConfigError);
  p = CostParams{};
  p.linearFactor = -1.0;
  CHECK_THROWS_AS(p.check(), ConfigError);
  p = CostParams{};
  p.constantOffset = std::nan("");
  CHECK_THROWS_AS(p.check(), ConfigError);
}

TEST_CASE("fitness") {
  const auto ref = testing::sample10();
  SUBCASE("sample move") {
    const auto f = fitness(ref.grid, ref.region, testing::sampleMove(), presetTm());
    CHECK(f.netFilled == 8);
    CHECK(f.cost == doctest::Approx(120.0 + 5.0 / 0.13));
    CHECK(f.value == doctest::Approx(8.0 / f.cost));
  }
  SUBCASE("move outside the region") {
    // (0,1) -> (0,2) in the top row.
    const auto f = fitness(ref.grid, ref.region, singleTrap({0, 0}, {2, 4}), presetTm());
    CHECK(f.netFilled == 0);
    CHECK(f.value == 0.0);
  }
  SUBCASE("relocation inside the region") {
    // (2,4) -> (2,3) along row 2.
    const auto f = fitness(ref.grid, ref.region, singleTrap({4, 4}, {8, 6}), presetTm());
    CHECK(f.netFilled == 0);
  }
  SUBCASE("moving an atom out of the region") {
    // (2,4) -> (1,4) is a pickup inside, drop outside.
    const auto f = fitness(ref.grid, ref.region, singleTrap({4, 2}, {8, 8}), presetTm());
    CHECK(f.netFilled == -1);
  }
}

TEST_CASE("scaling a, b, c1 scales time") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    CostParams p{u(rng), u(rng), u(rng), 0.0, 1.0 + u(rng)};
    const double lambda = 0.1 + u(rng);
    CostParams q{p.constantOffset * lambda, p.perSubstepOffset * lambda, p.linearFactor * lambda,
                 0.0, p.sitePitch};
    const std::vector<double> steps{u(rng), u(rng), u(rng)};
    CHECK(timeDemandFromSubsteps(q, steps) ==
          doctest::Approx(lambda * timeDemandFromSubsteps(p, steps)).epsilon(1e-12));
  }
}

TEST_CASE("time demand is monotone in displacement") {
  const CostParams p{120.0, 5.0, 2.0, 3.0, 1.5};
  double previous = 0.0;
  for (int d = 0; d <= 40; ++d) {
    const double t = timeDemandFromSubsteps(p, std::vector<double>{d / 2.0});
    CHECK(t >= previous);
    CHECK(t >= p.constantOffset);
    previous = t;
  }
}
