#pragma once

#include <optional>
#include <vector>

#include "bellest/bell.hpp"
#include "bellest/measures.hpp"

namespace bellest {

enum class AssumptionLevel { QubitPair, DeviceIndependent };

struct BoundResult {
  double value = 0.0;
  std::optional<BellSpectrum> extremal_spectrum;
  std::optional<double> extremal_theta;
};

/// C >= sqrt(S^2/4 - alpha^2) for a qubit pair; the device-independent level
/// replaces the curve by its chord (S - 2a) / (2 sqrt(1+a^2) - 2a).
/// S <= 2 alpha certifies nothing and yields the trivial bound 0.
BoundResult concurrence_bound(double S, double alpha, AssumptionLevel level);

/// E_F >= h(1/2 + 1/2 sqrt(1 + alpha^2 - S^2/4)) for a qubit pair; the
/// device-independent level shares the concurrence chord.
BoundResult eof_bound(double S, double alpha, AssumptionLevel level);

/// Minimum one-way distillable entanglement over Bell spectra whose maximal
/// violation equals S: eliminate lambda_1, lambda_4 and search the feasible
/// (lambda_2, lambda_3) region. S <= 2 alpha yields the trivial bound -1.
BoundResult distillable_bound(double S, double alpha);

/// Slow independent oracle: plain dense scan of the (lambda_2, lambda_3)
/// region at the given step.
double distillable_bound_gridscan(double S, double alpha, double step = 1e-4);

struct SampledCurve {
  std::vector<double> s;
  std::vector<double> e;
};

/// Lower convex envelope of a curve sampled on a monotone S-grid.
SampledCurve convex_closure(const SampledCurve& curve);

struct DistillableCurve {
  SampledCurve curve;
  bool closure_applied = false;  // true only if the raw curve failed convexity
};

/// Dimension-free distillable curve on a grid: the qubit curve is checked for
/// convexity (second differences >= -1e-6) and only wrapped in convex_closure
/// when the check fails.
DistillableCurve distillable_di_curve(const std::vector<double>& s_grid, double alpha);

}  // namespace bellest
