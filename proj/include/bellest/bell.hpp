#pragma once

#include "bellest/linalg.hpp"

namespace bellest {

// Four planar observables of one Bell-test configuration, stored as angles.
struct MeasurementQuad {
  double a0 = 0.0;
  double a1 = 0.0;
  double b0 = 0.0;
  double b1 = 0.0;
};

struct BellScenario {
  double alpha;
  MeasurementQuad quad;

  BellScenario(double alpha_, const MeasurementQuad& quad_);
};

/// The canonical quad of the tilted expression: A0 = sz, A1 = sx,
/// B0 = cos(theta) sz + sin(theta) sx, B1 = cos(theta) sz - sin(theta) sx.
MeasurementQuad canonical_quad(double theta);

/// S_alpha = alpha A0xB0 + alpha A0xB1 + A1xB0 - A1xB1.
Mat4 alpha_chsh_operator(const BellScenario& scenario);

/// Tr(rho S_alpha).
double bell_value(const DensityMatrix& rho, const BellScenario& scenario);

struct Bounds {
  double classical;  // 2 alpha
  double quantum;    // 2 sqrt(alpha^2 + 1)
};

Bounds bounds(double alpha);

/// Maximal tilted-CHSH value of a Bell-diagonal state:
/// 2 sqrt(alpha^2 (l1+l2-l3-l4)^2 + (l1-l2+l3-l4)^2).
double max_violation_bell_diagonal(const BellSpectrum& spec, double alpha);

/// Canonical quad achieving max_violation_bell_diagonal, with
/// tan(theta) = (l1-l2+l3-l4) / [alpha (l1+l2-l3-l4)].
MeasurementQuad optimal_measurements_bell_diagonal(const BellSpectrum& spec, double alpha);

/// Maximal violation of a general state from the singular values of its
/// correlation matrix: 2 sqrt(alpha^2 s1^2 + s2^2). With plane_restricted,
/// s1 >= s2 come from the 2x2 x-z submatrix; otherwise from the full 3x3 T.
double max_violation_general(const DensityMatrix& rho, double alpha, bool plane_restricted = true);

/// Independent grid + coordinate-descent oracle for the maximal violation
/// over planar measurements. grid_steps >= 8.
double max_violation_bruteforce(const DensityMatrix& rho, double alpha, int grid_steps = 64);

// Record of the Bell-diagonalizing LOCC: the two local y-rotation angles
// and the resulting Bell-diagonal state before any eigenvalue relabeling.
struct LoccTranscript {
  double rotation_a = 0.0;
  double rotation_b = 0.0;
  std::array<double, 4> raw_populations{};  // Bell-basis order, unsorted
  Mat4 reduced;                             // the step-3 state
};

struct LoccResult {
  BellSpectrum spec;
  LoccTranscript transcript;
};

/// Three-step LOCC reduction of a two-qubit state to Bell-diagonal form.
/// The tilted-CHSH value is preserved for every planar quad once the quad
/// is carried through the step-2 frame rotations (transport_quad).
LoccResult locc_to_bell_diagonal(const DensityMatrix& rho);

/// Image of a planar quad under the transcript's local frame rotations.
MeasurementQuad transport_quad(const MeasurementQuad& quad, const LoccTranscript& transcript);

}  // namespace bellest
