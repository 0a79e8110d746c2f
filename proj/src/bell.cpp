#include "bellest/bell.hpp"

#include <algorithm>
#include <cmath>

namespace bellest {

namespace {

struct Vec2 {
  double z, x;
};

Vec2 unit(double t) { return {std::cos(t), std::sin(t)}; }

// Planar correlation block in (z, x) coordinates:
// Tr[rho A(t) x B(s)] = a(t) . M b(s).
struct PlanarBlock {
  double m[2][2];

  static PlanarBlock from_state(const DensityMatrix& rho) {
    const auto t = correlation_matrix(rho);
    return {{{t(2, 2), t(2, 0)}, {t(0, 2), t(0, 0)}}};
  }
  Vec2 apply(const Vec2& v) const {
    return {m[0][0] * v.z + m[0][1] * v.x, m[1][0] * v.z + m[1][1] * v.x};
  }
  Vec2 apply_t(const Vec2& v) const {
    return {m[0][0] * v.z + m[1][0] * v.x, m[0][1] * v.z + m[1][1] * v.x};
  }
};

double dot(const Vec2& a, const Vec2& b) { return a.z * b.z + a.x * b.x; }
double norm(const Vec2& a) { return std::hypot(a.z, a.x); }

void require_alpha(double alpha) {
  if (!(alpha >= 1.0)) throw AlphaOutOfRangeError("tilt parameter alpha must be >= 1");
}

// Two singular values of a 2x2 real matrix, descending.
std::pair<double, double> singular_values_2x2(const double m[2][2]) {
  const double a = m[0][0], b = m[0][1], c = m[1][0], d = m[1][1];
  const double f = a * a + b * b + c * c + d * d;
  const double det = a * d - b * c;
  const double disc = std::sqrt(std::max(0.0, f * f - 4.0 * det * det));
  const double s1 = std::sqrt(std::max(0.0, 0.5 * (f + disc)));
  const double s2 = std::sqrt(std::max(0.0, 0.5 * (f - disc)));
  return {s1, s2};
}

Mat2 rotation_y(double t) {
  Mat2 r;
  r(0, 0) = std::cos(t / 2.0);
  r(0, 1) = std::sin(t / 2.0);
  r(1, 0) = -std::sin(t / 2.0);
  r(1, 1) = std::cos(t / 2.0);
  return r;
}

// Bell basis reordered as (Phi+, Psi-, Phi-, Psi+), which block-pairs the
// states mixed by the sigma_y (x) sigma_y averaging step.
const Mat4& proof_basis() {
  static const Mat4 b = [] {
    const Mat4& canon = bell_basis();
    static const std::size_t perm[4] = {0, 3, 1, 2};
    Mat4 m;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k) m(i, k) = canon(i, perm[k]);
    return m;
  }();
  return b;
}

Mat4 to_proof_basis(const Mat4& rho) {
  const Mat4& b = proof_basis();
  return b.adjoint() * rho * b;
}

// Root of 0.5*d*sin(u) + r*cos(u) = 0 closest to zero.
double zeroing_angle(double d, double r) {
  const double scale = std::max({1.0, std::abs(d), std::abs(r)});
  if (std::abs(r) <= 1e-15 * scale) return 0.0;
  if (std::abs(d) <= 1e-15 * scale) return M_PI / 2.0;
  return std::atan(-2.0 * r / d);
}

}  // namespace

BellScenario::BellScenario(double alpha_, const MeasurementQuad& quad_)
    : alpha(alpha_), quad(quad_) {
  require_alpha(alpha);
  if (!(std::isfinite(quad.a0) && std::isfinite(quad.a1) && std::isfinite(quad.b0) &&
        std::isfinite(quad.b1)))
    throw ParamOutOfRangeError("measurement angles must be finite");
}

MeasurementQuad canonical_quad(double theta) { return {0.0, M_PI / 2.0, theta, -theta}; }

Mat4 alpha_chsh_operator(const BellScenario& scenario) {
  const Mat2 a0 = planar_observable(scenario.quad.a0);
  const Mat2 a1 = planar_observable(scenario.quad.a1);
  const Mat2 b0 = planar_observable(scenario.quad.b0);
  const Mat2 b1 = planar_observable(scenario.quad.b1);
  return scenario.alpha * kron(a0, b0 + b1) + kron(a1, b0 - b1);
}

double bell_value(const DensityMatrix& rho, const BellScenario& scenario) {
  return (rho.m * alpha_chsh_operator(scenario)).trace().real();
}

Bounds bounds(double alpha) {
  require_alpha(alpha);
  return {2.0 * alpha, 2.0 * std::sqrt(alpha * alpha + 1.0)};
}

double max_violation_bell_diagonal(const BellSpectrum& spec, double alpha) {
  require_alpha(alpha);
  const double t33 = spec[0] + spec[1] - spec[2] - spec[3];
  const double t11 = spec[0] - spec[1] + spec[2] - spec[3];
  return 2.0 * std::sqrt(alpha * alpha * t33 * t33 + t11 * t11);
}

MeasurementQuad optimal_measurements_bell_diagonal(const BellSpectrum& spec, double alpha) {
  require_alpha(alpha);
  const double t33 = spec[0] + spec[1] - spec[2] - spec[3];
  const double t11 = spec[0] - spec[1] + spec[2] - spec[3];
  if (!(t33 > 1e-12)) throw DegenerateStateError("l1 + l2 - l3 - l4 must be positive");
  return canonical_quad(std::atan2(t11, alpha * t33));
}

double max_violation_general(const DensityMatrix& rho, double alpha, bool plane_restricted) {
  require_alpha(alpha);
  double s1, s2;
  if (plane_restricted) {
    const PlanarBlock blk = PlanarBlock::from_state(rho);
    std::tie(s1, s2) = singular_values_2x2(blk.m);
  } else {
    const auto t = correlation_matrix(rho);
    Mat<3> g;  // T^T T, symmetric PSD
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < 3; ++k) s += t(k, i) * t(k, j);
        g(i, j) = s;
      }
    const auto es = hermitian_eigensystem(g);
    s1 = std::sqrt(std::max(0.0, es.values[0]));
    s2 = std::sqrt(std::max(0.0, es.values[1]));
  }
  return 2.0 * std::sqrt(alpha * alpha * s1 * s1 + s2 * s2);
}

double max_violation_bruteforce(const DensityMatrix& rho, double alpha, int grid_steps) {
  require_alpha(alpha);
  if (grid_steps < 8) throw ParamOutOfRangeError("grid_steps must be >= 8");
  const PlanarBlock blk = PlanarBlock::from_state(rho);

  const auto value = [&](double a0, double a1, double b0, double b1) {
    const Vec2 w0 = blk.apply({unit(b0).z + unit(b1).z, unit(b0).x + unit(b1).x});
    const Vec2 w1 = blk.apply({unit(b0).z - unit(b1).z, unit(b0).x - unit(b1).x});
    return alpha * dot(unit(a0), w0) + dot(unit(a1), w1);
  };

  // Coarse grid over Bob's angles; Alice's best response to fixed Bob
  // settings is the aligned unit vector, giving alpha|Mw0| + |Mw1|.
  double best = -1e300;
  double seed_b0 = 0.0, seed_b1 = 0.0;
  for (int i = 0; i < grid_steps; ++i) {
    const double b0 = 2.0 * M_PI * i / grid_steps;
    for (int j = 0; j < grid_steps; ++j) {
      const double b1 = 2.0 * M_PI * j / grid_steps;
      const Vec2 w0 = blk.apply({unit(b0).z + unit(b1).z, unit(b0).x + unit(b1).x});
      const Vec2 w1 = blk.apply({unit(b0).z - unit(b1).z, unit(b0).x - unit(b1).x});
      const double v = alpha * norm(w0) + norm(w1);
      if (v > best) {
        best = v;
        seed_b0 = b0;
        seed_b1 = b1;
      }
    }
  }

  // Coordinate ascent with exact single-angle updates; each angle's profile
  // is a pure sinusoid, so the argmax per coordinate is closed form.
  double best_refined = -1e300;
  const double offsets[3] = {0.0, M_PI / 3.0, -M_PI / 3.0};
  for (const double off : offsets) {
    double b0 = seed_b0 + off, b1 = seed_b1 - off, a0 = 0.0, a1 = 0.0;
    for (int iter = 0; iter < 400; ++iter) {
      const double prev_b0 = b0, prev_b1 = b1;
      const Vec2 w0 = blk.apply({unit(b0).z + unit(b1).z, unit(b0).x + unit(b1).x});
      const Vec2 w1 = blk.apply({unit(b0).z - unit(b1).z, unit(b0).x - unit(b1).x});
      if (norm(w0) > 1e-15) a0 = std::atan2(w0.x, w0.z);
      if (norm(w1) > 1e-15) a1 = std::atan2(w1.x, w1.z);
      const Vec2 g0 = blk.apply_t({alpha * unit(a0).z + unit(a1).z, alpha * unit(a0).x + unit(a1).x});
      const Vec2 g1 = blk.apply_t({alpha * unit(a0).z - unit(a1).z, alpha * unit(a0).x - unit(a1).x});
      if (norm(g0) > 1e-15) b0 = std::atan2(g0.x, g0.z);
      if (norm(g1) > 1e-15) b1 = std::atan2(g1.x, g1.z);
      if (std::abs(b0 - prev_b0) < 1e-9 && std::abs(b1 - prev_b1) < 1e-9) break;
    }
    best_refined = std::max(best_refined, value(a0, a1, b0, b1));
  }
  return std::max(best, best_refined);
}

LoccResult locc_to_bell_diagonal(const DensityMatrix& rho) {
  const Mat4 yy = kron(pauli(2), pauli(2));

  // Step 1: symmetrize under sy x sy; blocks {Phi+, Psi-} and {Phi-, Psi+}.
  const Mat4 rho1 = 0.5 * (rho.m + yy * rho.m * yy);

  // Step 2: local y-rotations kill the real off-diagonal parts per block.
  const Mat4 m1 = to_proof_basis(rho1);
  const double d1 = (m1(0, 0) - m1(1, 1)).real();
  const double r1 = m1(0, 1).real();
  const double d2 = (m1(2, 2) - m1(3, 3)).real();
  const double r2 = m1(2, 3).real();
  const double u = zeroing_angle(d1, r1);    // controls rotation difference a - b
  const double v = zeroing_angle(-d2, r2);   // controls rotation sum a + b
  double rot_a = 0.5 * (v + u);
  double rot_b = 0.5 * (v - u);

  auto step2 = [&rho1](double a, double b) {
    const Mat4 uu = kron(rotation_y(a), rotation_y(b));
    return uu * rho1 * uu.adjoint();
  };
  Mat4 rho2 = step2(rot_a, rot_b);

  {
    const Mat4 m2 = to_proof_basis(rho2);
    const double residual = std::max(std::abs(m2(0, 1).real()), std::abs(m2(2, 3).real()));
    if (residual > 1e-12) {
      // Closed form degenerated; bisect each block angle on its residual.
      auto bisect = [](auto f) {
        double lo = -M_PI / 2.0, hi = M_PI / 2.0;
        double flo = f(lo);
        if (flo * f(hi) > 0.0) {
          for (int i = 1; i < 64; ++i) {
            const double x = -M_PI / 2.0 + M_PI * i / 64.0;
            if (flo * f(x) <= 0.0) {
              hi = x;
              lo = x - M_PI / 64.0;
              break;
            }
          }
        }
        flo = f(lo);
        for (int i = 0; i < 100; ++i) {
          const double mid = 0.5 * (lo + hi);
          if (flo * f(mid) <= 0.0)
            hi = mid;
          else {
            lo = mid;
            flo = f(lo);
          }
        }
        return 0.5 * (lo + hi);
      };
      const double ub = bisect([&](double x) {
        return to_proof_basis(step2(0.5 * x, -0.5 * x))(0, 1).real();
      });
      const double vb = bisect([&](double x) {
        return to_proof_basis(step2(0.5 * x, 0.5 * x))(2, 3).real();
      });
      rot_a = 0.5 * (vb + ub);
      rot_b = 0.5 * (vb - ub);
      rho2 = step2(rot_a, rot_b);
    }
  }

  // Step 3: average with the complex conjugate.
  const Mat4 reduced = 0.5 * (rho2 + rho2.conjugate());

  LoccTranscript transcript;
  transcript.rotation_a = rot_a;
  transcript.rotation_b = rot_b;
  transcript.reduced = reduced;
  transcript.raw_populations = bell_basis_populations(DensityMatrix(reduced));

  std::array<double, 4> lam = transcript.raw_populations;
  double sum = 0.0;
  for (auto& x : lam) {
    x = std::max(0.0, x);
    sum += x;
  }
  for (auto& x : lam) x /= sum;
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return {BellSpectrum(lam), transcript};
}

MeasurementQuad transport_quad(const MeasurementQuad& quad, const LoccTranscript& transcript) {
  return {quad.a0 - transcript.rotation_a, quad.a1 - transcript.rotation_a,
          quad.b0 - transcript.rotation_b, quad.b1 - transcript.rotation_b};
}

}  // namespace bellest
