#pragma once

#include <cstdint>
#include <vector>

#include "bellest/bell.hpp"
#include "bellest/measures.hpp"

namespace bellest {

struct InterplayPoint {
  double theta = 0.0;
  double S = 0.0;
  MeasureKind measure = MeasureKind::Concurrence;
  double e_min = 0.0;
  DensityMatrix witness;
};

/// Least entanglement compatible with Bell value S when Alice is maximally
/// incompatible and Bob's pair is tilted by theta (canonical quad). States
/// are parameterized as G G^dag / Tr(G G^dag); the equality constraint is
/// enforced by an increasing quadratic penalty, best of >= `restarts` runs
/// (run 0 is an analytic Bell-diagonal warm start). Deterministic per seed.
InterplayPoint min_entanglement_at_theta(double S, double alpha, double theta,
                                         MeasureKind measure, int restarts = 64,
                                         std::uint64_t seed = 0);

/// arctan(sqrt(S^2/4 - alpha^2) / alpha): the tilt that needs the least
/// concurrence to support S.
double theta_star_concurrence(double S, double alpha);

/// Interval of theta in [0, pi/4] where some state reaches S, from the top
/// eigenvalue 2 alpha cos(theta) + 2 sin(theta) of the tilted operator.
std::pair<double, double> feasible_theta_range(double S, double alpha);

struct InterplayScanRow {
  double S = 0.0;
  std::vector<InterplayPoint> points;  // one per theta grid node
  double best_theta = 0.0;
  double best_e = 0.0;
};

std::vector<InterplayScanRow> interplay_scan(const std::vector<double>& s_list, double alpha,
                                             int theta_steps, MeasureKind measure,
                                             int restarts = 8, std::uint64_t seed = 0);

namespace detail {

// Smooth surrogate objective and its Euclidean gradient dF/drho, exposed so
// tests can cross-check the analytic gradient against finite differences.
struct MeasureGrad {
  double value;
  Mat4 w;
};

MeasureGrad measure_grad(MeasureKind measure, const Mat4& rho);

}  // namespace detail

}  // namespace bellest
