#include "bellest/scenarios.hpp"

#include <algorithm>
#include <cmath>

namespace bellest {

namespace {

const double kSqrt2 = std::sqrt(2.0);

void validate(const ScenarioState& spec) {
  if (spec.kind == ScenarioState::Kind::Pure) {
    if (!(spec.param >= 0.0 && spec.param <= M_PI / 2.0))
      throw ParamOutOfRangeError("pure-state delta must lie in [0, pi/2]");
  } else {
    if (!(spec.param >= 0.0 && spec.param <= 1.0))
      throw ParamOutOfRangeError("Werner p must lie in [0, 1]");
  }
}

// Shared bracket of the device-independent improvement conditions:
// sin(t1)(sin t2 - sin t3) weighted by the state overlap, plus cosine terms.
double di_bracket(double overlap, const Thetas& th) {
  return overlap * std::sin(th.t1) * (std::sin(th.t2) - std::sin(th.t3)) +
         std::cos(th.t2) * (kSqrt2 + 1.0 + std::cos(th.t1)) +
         std::cos(th.t3) * (kSqrt2 + 1.0 - std::cos(th.t1));
}

double semi_di_bracket(double overlap, const Thetas& th) {
  return overlap * std::sin(th.t1) * (std::sin(th.t2) - std::sin(th.t3)) +
         (1.0 + std::cos(th.t1)) * std::cos(th.t2) +
         (1.0 - std::cos(th.t1)) * std::cos(th.t3);
}

}  // namespace

DensityMatrix scenario_state(const ScenarioState& spec) {
  validate(spec);
  Mat4 m;
  if (spec.kind == ScenarioState::Kind::Pure) {
    const double c = std::cos(spec.param), s = std::sin(spec.param);
    // (c|00> + s|11>)(c<00| + s<11|)
    m(0, 0) = c * c;
    m(0, 3) = c * s;
    m(3, 0) = c * s;
    m(3, 3) = s * s;
  } else {
    const double p = spec.param;
    m(0, 0) = (1.0 - p) / 2.0 + p / 4.0;
    m(3, 3) = (1.0 - p) / 2.0 + p / 4.0;
    m(0, 3) = (1.0 - p) / 2.0;
    m(3, 0) = (1.0 - p) / 2.0;
    m(1, 1) = p / 4.0;
    m(2, 2) = p / 4.0;
  }
  return DensityMatrix(m);
}

double scenario_bell_value(const ScenarioState& spec, const Thetas& thetas, double alpha) {
  const BellScenario scenario(alpha, MeasurementQuad{0.0, thetas.t1, thetas.t2, thetas.t3});
  return bell_value(scenario_state(spec), scenario);
}

ScanResult alpha_scan(const ScenarioState& spec, const Thetas& thetas,
                      std::vector<double> alpha_grid, const std::vector<MeasureKind>& measures,
                      AssumptionLevel level) {
  if (alpha_grid.empty())
    for (int i = 0; i <= 400; ++i) alpha_grid.push_back(1.0 + 0.005 * i);
  for (double a : alpha_grid)
    if (!(a >= 1.0)) throw AlphaOutOfRangeError("scan grid must stay within alpha >= 1");

  ScanResult out;
  out.alpha_grid = alpha_grid;
  out.measures = measures;
  out.bounds.assign(measures.size(), {});
  out.best_alpha.assign(measures.size(), alpha_grid.front());

  for (double a : alpha_grid) {
    const double s = scenario_bell_value(spec, thetas, a);
    if (s > 2.0 * std::sqrt(a * a + 1.0) + 1e-9)
      throw SuperQuantumError("scenario Bell value exceeds the quantum bound; inconsistent input");
    out.s_values.push_back(s);
  }

  for (std::size_t mi = 0; mi < measures.size(); ++mi) {
    double best = -1e300;
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
      const double a = alpha_grid[i], s = out.s_values[i];
      double v = 0.0;
      switch (measures[mi]) {
        case MeasureKind::Concurrence:
          v = concurrence_bound(s, a, level).value;
          break;
        case MeasureKind::EntanglementOfFormation:
          v = eof_bound(s, a, level).value;
          break;
        case MeasureKind::OneWayDistillable:
          // The distillable curve is convex in S, so it stays valid without
          // the dimension assumption; no separate DI branch exists.
          v = distillable_bound(s, a).value;
          break;
      }
      out.bounds[mi].push_back(v);
      if (v > best) {
        best = v;
        out.best_alpha[mi] = a;
      }
    }
  }
  return out;
}

bool improvement_condition(const ScenarioState& spec, const Thetas& thetas,
                           AssumptionLevel level) {
  validate(spec);
  if (spec.kind == ScenarioState::Kind::Pure) {
    const double s2d = std::sin(2.0 * spec.param);
    if (level == AssumptionLevel::DeviceIndependent)
      return di_bracket(s2d, thetas) > 2.0 * (1.0 + kSqrt2);
    return (std::cos(thetas.t2) + std::cos(thetas.t3)) * semi_di_bracket(s2d, thetas) > 4.0;
  }
  const double q = 1.0 - spec.param;
  if (level == AssumptionLevel::DeviceIndependent)
    return q * di_bracket(1.0, thetas) > 2.0 * (1.0 + kSqrt2);
  return q * q * (std::cos(thetas.t2) + std::cos(thetas.t3)) * semi_di_bracket(1.0, thetas) > 4.0;
}

OptimalAlpha optimal_alpha(const ScenarioState& spec, double theta2, AssumptionLevel level) {
  validate(spec);
  if (!(theta2 > 0.0 && theta2 < M_PI / 2.0))
    throw ParamOutOfRangeError("theta2 must lie in (0, pi/2)");
  const Thetas thetas{M_PI / 2.0, theta2, -theta2};
  if (!improvement_condition(spec, thetas, level))
    throw ConditionNotMetError("improvement condition fails; alpha* would not exceed 1");

  const double c2 = std::cos(theta2), s2 = std::sin(theta2);
  if (spec.kind == ScenarioState::Kind::Pure) {
    const double s2d = std::sin(2.0 * spec.param);
    if (level == AssumptionLevel::DeviceIndependent) {
      const double t = s2d * s2 / (1.0 - c2);
      return {0.5 * (t - 1.0 / t), 0.5 * (1.0 - c2) * (t * t + 1.0)};
    }
    return {s2d / std::tan(theta2), s2d};
  }
  const double p = spec.param, q = 1.0 - p;
  if (level == AssumptionLevel::DeviceIndependent) {
    const double t = q * s2 / (1.0 - q * c2);
    return {0.5 * (t - 1.0 / t), 1.0 - p * (2.0 - p) / (2.0 * (1.0 - q * c2))};
  }
  const double denom = 1.0 - q * q * c2 * c2;
  return {q * q * c2 * s2 / denom, q * s2 / std::sqrt(denom)};
}

double di_werner_threshold() { return 1.0 - (kSqrt2 + 1.0) / std::sqrt(4.0 + 2.0 * kSqrt2); }

double semi_di_werner_threshold(double theta2) {
  if (!(theta2 > 0.0 && theta2 < M_PI / 4.0))
    throw ParamOutOfRangeError("theta2 must lie in (0, pi/4)");
  return 1.0 - 1.0 / std::sqrt(kSqrt2 * std::cos(theta2) * std::cos(theta2 - M_PI / 4.0));
}

double semi_di_werner_threshold_max() { return semi_di_werner_threshold(M_PI / 8.0); }

}  // namespace bellest
