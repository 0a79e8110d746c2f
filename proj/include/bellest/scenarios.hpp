#pragma once

#include <vector>

#include "bellest/estimation.hpp"

namespace bellest {

struct ScenarioState {
  enum class Kind { Pure, Werner } kind;
  double param;  // delta in [0, pi/2] for Pure, p in [0, 1] for Werner

  static ScenarioState pure(double delta) { return {Kind::Pure, delta}; }
  static ScenarioState werner(double p) { return {Kind::Werner, p}; }
};

struct Thetas {
  double t1, t2, t3;  // A1, B0, B1 planar angles; A0 is fixed at sigma_z
};

/// Pure(delta) = cos d |00> + sin d |11>; Werner(p) = (1-p)|Phi+><Phi+| + p I/4.
DensityMatrix scenario_state(const ScenarioState& spec);

/// Tr(rho S_alpha) with the quad (0, theta1, theta2, theta3).
double scenario_bell_value(const ScenarioState& spec, const Thetas& thetas, double alpha);

struct ScanResult {
  std::vector<double> alpha_grid;
  std::vector<double> s_values;
  std::vector<MeasureKind> measures;
  std::vector<std::vector<double>> bounds;  // bounds[m][i] for measures[m], alpha_grid[i]
  std::vector<double> best_alpha;           // per measure; smallest maximizer on ties
};

/// Bound-vs-alpha scan through the estimation module. Default grid when
/// alpha_grid is empty: 1.0 to 3.0 in steps of 0.005.
ScanResult alpha_scan(const ScenarioState& spec, const Thetas& thetas,
                      std::vector<double> alpha_grid, const std::vector<MeasureKind>& measures,
                      AssumptionLevel level);

/// Strict inequality (by state kind and assumption level) deciding whether
/// some alpha > 1 improves the concurrence estimate.
bool improvement_condition(const ScenarioState& spec, const Thetas& thetas,
                           AssumptionLevel level);

struct OptimalAlpha {
  double alpha_star;
  double c_est;
};

/// Closed-form best alpha and the concurrence estimate it attains, for the
/// restricted family theta1 = pi/2, theta3 = -theta2, 0 < theta2 < pi/4.
OptimalAlpha optimal_alpha(const ScenarioState& spec, double theta2, AssumptionLevel level);

/// 1 - (sqrt(2)+1)/sqrt(4+2 sqrt(2)), the largest Werner p for which the
/// device-independent improvement condition can hold.
double di_werner_threshold();

/// Right-hand side of the semi-DI Werner condition at a given theta2.
double semi_di_werner_threshold(double theta2);

/// Maximum of semi_di_werner_threshold over theta2 (attained at pi/8).
double semi_di_werner_threshold_max();

}  // namespace bellest
