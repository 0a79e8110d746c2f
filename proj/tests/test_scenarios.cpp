#include <doctest.h>

#include <cmath>

#include "bellest/bell.hpp"
#include "bellest/scenarios.hpp"

using namespace bellest;

namespace {
const double kRoot2 = std::sqrt(2.0);

double pure_bell_value(double delta, const Thetas& t, double alpha) {
  // Closed form of Tr(rho S_alpha) for cos d |00> + sin d |11>.
  return alpha * (std::cos(t.t2) + std::cos(t.t3)) +
         std::sin(2.0 * delta) * std::sin(t.t1) * (std::sin(t.t2) - std::sin(t.t3)) +
         std::cos(t.t1) * (std::cos(t.t2) - std::cos(t.t3));
}
}  // namespace

TEST_CASE("scenario states") {
  const auto bell = scenario_state(ScenarioState::pure(M_PI / 4.0));
  CHECK((bell.m - bell_diagonal_state(BellSpectrum({1.0, 0.0, 0.0, 0.0})).m).max_abs() < 1e-14);

  const auto prod = scenario_state(ScenarioState::pure(0.0));
  CHECK(prod.m(0, 0).real() == doctest::Approx(1.0));
  CHECK(std::abs(prod.m(3, 3)) < 1e-15);

  const auto depol = scenario_state(ScenarioState::werner(1.0));
  for (std::size_t i = 0; i < 4; ++i) CHECK(depol.m(i, i).real() == doctest::Approx(0.25));

  CHECK_THROWS_AS(scenario_state(ScenarioState::werner(1.5)), ParamOutOfRangeError);
  CHECK_THROWS_AS(scenario_state(ScenarioState::pure(-0.1)), ParamOutOfRangeError);
}

TEST_CASE("scenario bell values match the printed closed forms") {
  for (double delta : {0.3, 0.6, M_PI / 4.0}) {
    for (double alpha : {1.0, 1.5, 2.4}) {
      const Thetas t{M_PI / 2.0, 0.4, -0.4};
      CHECK(scenario_bell_value(ScenarioState::pure(delta), t, alpha) ==
            doctest::Approx(pure_bell_value(delta, t, alpha)).epsilon(1e-10));
      const Thetas skew{1.1, 0.3, -0.7};
      CHECK(scenario_bell_value(ScenarioState::pure(delta), skew, alpha) ==
            doctest::Approx(pure_bell_value(delta, skew, alpha)).epsilon(1e-10));
    }
  }

  // Werner = (1-p) times the Bell-state value; the identity part drops out.
  for (double p : {0.0, 0.2, 0.7}) {
    const Thetas t{1.2, 0.5, -0.3};
    CHECK(scenario_bell_value(ScenarioState::werner(p), t, 1.3) ==
          doctest::Approx((1.0 - p) *
                          scenario_bell_value(ScenarioState::pure(M_PI / 4.0), t, 1.3))
              .epsilon(1e-10));
  }
}

TEST_CASE("scenario value never exceeds the state's maximum") {
  for (double delta : {0.4, 0.9}) {
    const auto rho = scenario_state(ScenarioState::pure(delta));
    for (double alpha : {1.0, 1.8}) {
      const double cap = max_violation_general(rho, alpha);
      for (double t2 : {0.2, 0.5, 0.7}) {
        CHECK(scenario_bell_value(ScenarioState::pure(delta), {M_PI / 2.0, t2, -t2}, alpha) <=
              cap + 1e-12);
      }
    }
  }
}

TEST_CASE("alpha scan picks the right neighborhood") {
  std::vector<double> grid;
  for (double a = 1.0; a <= 3.0 + 1e-9; a += 0.1) grid.push_back(a);

  {
    // Pure(pi/6) at the DI level: the concurrence peak sits between 1.4 and 1.6.
    const double delta = M_PI / 6.0;
    const double t2 = M_PI / 6.0;
    const auto res = alpha_scan(ScenarioState::pure(delta), {M_PI / 2.0, t2, -t2}, grid,
                                {MeasureKind::Concurrence}, AssumptionLevel::DeviceIndependent);
    CHECK(res.best_alpha[0] >= 1.4 - 0.05 - 1e-9);
    CHECK(res.best_alpha[0] <= 1.6 + 0.05 + 1e-9);
    // The scan's best value never exceeds the closed-form optimum.
    const auto opt =
        optimal_alpha(ScenarioState::pure(delta), t2, AssumptionLevel::DeviceIndependent);
    double best = 0.0;
    for (double v : res.bounds[0]) best = std::max(best, v);
    CHECK(best <= opt.c_est + 1e-9);
    CHECK(best >= opt.c_est - 0.05);
  }

  {
    const auto res = alpha_scan(ScenarioState::werner(0.05), {M_PI / 2.0, M_PI / 6.0, -M_PI / 6.0},
                                grid, {MeasureKind::OneWayDistillable, MeasureKind::Concurrence},
                                AssumptionLevel::DeviceIndependent);
    CHECK(res.best_alpha[0] >= 1.2 - 0.05 - 1e-9);
    CHECK(res.best_alpha[0] <= 1.4 + 0.05 + 1e-9);
    CHECK(res.best_alpha[1] >= 1.0 - 1e-9);
    CHECK(res.best_alpha[1] <= 1.2 + 0.05 + 1e-9);
  }
}

TEST_CASE("improvement condition") {
  // Weakly entangled pure state, semi-DI: improvement available.
  CHECK(improvement_condition(ScenarioState::pure(0.3), {M_PI / 2.0, 0.37, -0.37},
                              AssumptionLevel::QubitPair));
  // Maximally entangled: alpha = 1 is already optimal.
  CHECK_FALSE(improvement_condition(ScenarioState::pure(M_PI / 4.0),
                                    {M_PI / 2.0, M_PI / 3.0, -M_PI / 3.0},
                                    AssumptionLevel::DeviceIndependent));
  // Werner below/above the DI threshold.
  const double thr = di_werner_threshold();
  CHECK(improvement_condition(ScenarioState::werner(thr - 0.02), {M_PI / 2.0, 0.35, -0.35},
                              AssumptionLevel::DeviceIndependent));
  CHECK_FALSE(improvement_condition(ScenarioState::werner(thr + 0.05),
                                    {M_PI / 2.0, 0.35, -0.35},
                                    AssumptionLevel::DeviceIndependent));
}

TEST_CASE("optimal alpha closed forms") {
  // Worked example: Pure(0.6), theta2 = pi/2 - 1.2, semi-DI.
  const auto worked =
      optimal_alpha(ScenarioState::pure(0.6), M_PI / 2.0 - 1.2, AssumptionLevel::QubitPair);
  CHECK(worked.alpha_star == doctest::Approx(std::sin(1.2) / std::tan(M_PI / 2.0 - 1.2)).epsilon(1e-12));
  CHECK(worked.alpha_star == doctest::Approx(2.3973).epsilon(1e-3));
  CHECK(worked.c_est == doctest::Approx(std::sin(1.2)).epsilon(1e-12));
  CHECK(worked.c_est == doctest::Approx(0.9320).epsilon(1e-4));

  // DI pure case agrees with a fine scan.
  {
    const double delta = 0.45, t2 = 0.5;
    const auto opt = optimal_alpha(ScenarioState::pure(delta), t2, AssumptionLevel::DeviceIndependent);
    std::vector<double> grid;
    for (double a = 1.0; a <= 4.0; a += 0.002) grid.push_back(a);
    const auto scan = alpha_scan(ScenarioState::pure(delta), {M_PI / 2.0, t2, -t2}, grid,
                                 {MeasureKind::Concurrence}, AssumptionLevel::DeviceIndependent);
    CHECK(std::abs(scan.best_alpha[0] - opt.alpha_star) <= 0.004);
    double best = 0.0;
    for (double v : scan.bounds[0]) best = std::max(best, v);
    CHECK(best == doctest::Approx(opt.c_est).epsilon(1e-4));
  }

  // Werner closed forms agree with a fine scan too.
  {
    const double p = 0.04, t2 = 0.4;
    const auto opt = optimal_alpha(ScenarioState::werner(p), t2, AssumptionLevel::QubitPair);
    std::vector<double> grid;
    for (double a = 1.0; a <= 3.0; a += 0.002) grid.push_back(a);
    const auto scan = alpha_scan(ScenarioState::werner(p), {M_PI / 2.0, t2, -t2}, grid,
                                 {MeasureKind::Concurrence}, AssumptionLevel::QubitPair);
    CHECK(std::abs(scan.best_alpha[0] - opt.alpha_star) <= 0.004);
  }

  // No improvement available: maximally entangled pure state, DI level.
  CHECK_THROWS_AS(optimal_alpha(ScenarioState::pure(M_PI / 4.0), M_PI / 3.0,
                                AssumptionLevel::DeviceIndependent),
                  ConditionNotMetError);
}

TEST_CASE("improvement condition implies a strictly better bound nearby") {
  const double delta = 0.3, t2 = 0.37;
  REQUIRE(improvement_condition(ScenarioState::pure(delta), {M_PI / 2.0, t2, -t2},
                                AssumptionLevel::QubitPair));
  std::vector<double> grid{1.0, 1.001};
  const auto scan = alpha_scan(ScenarioState::pure(delta), {M_PI / 2.0, t2, -t2}, grid,
                               {MeasureKind::Concurrence}, AssumptionLevel::QubitPair);
  CHECK(scan.bounds[0][1] > scan.bounds[0][0]);
}

TEST_CASE("werner thresholds") {
  CHECK(di_werner_threshold() ==
        doctest::Approx(1.0 - (kRoot2 + 1.0) / std::sqrt(4.0 + 2.0 * kRoot2)).epsilon(1e-14));
  CHECK(di_werner_threshold() == doctest::Approx(0.076120).epsilon(1e-5));

  // The semi-DI threshold is maximized at theta2 = pi/8.
  const double at_max = semi_di_werner_threshold(M_PI / 8.0);
  CHECK(semi_di_werner_threshold_max() == doctest::Approx(at_max).epsilon(1e-14));
  for (double t2 : {0.2, 0.3, 0.5, 0.7}) CHECK(semi_di_werner_threshold(t2) <= at_max + 1e-12);
  CHECK(at_max == doctest::Approx(1.0 - 1.0 / std::sqrt(kRoot2 * std::cos(M_PI / 8.0) *
                                                        std::cos(M_PI / 8.0 - M_PI / 4.0)))
                      .epsilon(1e-12));
}
