#include "bellest/interplay.hpp"

#include <algorithm>
#include <cmath>

#include "bellest/random.hpp"

namespace bellest {

namespace {

Mat4 tilted_operator(double alpha, double theta) {
  return alpha_chsh_operator(BellScenario(alpha, canonical_quad(theta)));
}

double top_eigenvalue_closed_form(double alpha, double theta) {
  return 2.0 * alpha * std::cos(theta) + 2.0 * std::sin(theta);
}

// The closed form above is a derived fact; cross-check it against the
// numeric eigensolver before trusting it for feasibility decisions.
void assert_top_eigenvalue(double alpha) {
  for (double theta : {0.0, 0.3, M_PI / 4.0}) {
    const auto es = hermitian_eigensystem(tilted_operator(alpha, theta));
    if (std::abs(es.values[0] - top_eigenvalue_closed_form(alpha, theta)) > 1e-9)
      throw SolverFailureError("top-eigenvalue closed form disagrees with eigensolver");
  }
}

void check_window(double S, double alpha) {
  if (!(alpha >= 1.0)) throw AlphaOutOfRangeError("tilt parameter alpha must be >= 1");
  if (S > 2.0 * std::sqrt(alpha * alpha + 1.0) + 1e-9)
    throw SuperQuantumError("Bell value exceeds the quantum bound");
  if (S <= 2.0 * alpha) throw NoViolationError("Bell value does not violate the classical bound");
}

// --- Bell-diagonal slice -------------------------------------------------
//
// Twirling over {I, sx(x)sx, sy(x)sy, sz(x)sz} preserves Tr(rho S_theta) and
// never increases a convex LU-invariant measure, so the global minimum of
// the constrained problem is attained on Bell-diagonal states. This gives
// both the warm start and a fast evaluator for theta refinements.

double bell_diag_measure(MeasureKind measure, const std::array<double, 4>& lam) {
  auto xlog2x = [](double x) { return x > 1e-15 ? x * std::log2(x) : 0.0; };
  const double top = std::max(std::max(lam[0], lam[1]), std::max(lam[2], lam[3]));
  const double c = std::max(0.0, 2.0 * top - 1.0);
  switch (measure) {
    case MeasureKind::Concurrence:
      return c;
    case MeasureKind::EntanglementOfFormation:
      return binary_entropy(0.5 + 0.5 * std::sqrt(std::max(0.0, 1.0 - c * c)));
    case MeasureKind::OneWayDistillable: {
      double h = 0.0;
      for (double l : lam) h -= xlog2x(l);
      return 1.0 - h;
    }
  }
  return 0.0;
}

struct BellDiagOpt {
  double value = 1e300;
  std::array<double, 4> lam{};  // Bell-basis order Phi+, Phi-, Psi+, Psi-
};

// Minimize the measure over Bell-diagonal states on the constraint plane
// A*T33 + B*T11 = S with free T22.
BellDiagOpt bell_diag_minimum(double S, double alpha, double theta, MeasureKind measure) {
  const double A = 2.0 * alpha * std::cos(theta);
  const double B = 2.0 * std::sin(theta);
  const bool pivot_t33 = std::abs(B) >= std::abs(A);  // solve for the larger coefficient

  BellDiagOpt best;
  const auto probe = [&](double free_corr, double w) {
    double t33, t11;
    if (pivot_t33) {
      t33 = free_corr;
      t11 = (S - A * t33) / B;
    } else {
      t11 = free_corr;
      t33 = (S - B * t11) / A;
    }
    if (std::abs(t11) > 1.0 + 1e-12 || std::abs(t33) > 1.0 + 1e-12 || std::abs(w) > 1.0 + 1e-12)
      return;
    std::array<double, 4> lam{(1.0 + t11 - w + t33) / 4.0, (1.0 - t11 + w + t33) / 4.0,
                              (1.0 + t11 + w - t33) / 4.0, (1.0 - t11 - w - t33) / 4.0};
    for (auto& l : lam) {
      if (l < -1e-12) return;
      l = std::max(0.0, l);
    }
    const double v = bell_diag_measure(measure, lam);
    if (v < best.value) best = {v, lam};
  };

  const int n = 200;
  double cx = 0.0, cw = 0.0, window = 1.0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) probe(-1.0 + 2.0 * i / n, -1.0 + 2.0 * j / n);

  // The constraint plane cuts the probability simplex in a polygon whose
  // vertices sit on simplex edges. Near tangency (theta at the feasibility
  // boundary) the polygon is smaller than the grid pitch, so sample it
  // directly: vertices plus fine 1-D sweeps along each vertex pair.
  const auto probe_lam = [&](const std::array<double, 4>& lam) {
    const double v = bell_diag_measure(measure, lam);
    if (v < best.value) best = {v, lam};
  };
  const std::array<double, 4> coeff{A + B, A - B, B - A, -A - B};
  std::vector<std::array<double, 4>> verts;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j || std::abs(coeff[i] - coeff[j]) < 1e-15) continue;
      const double t = (S - coeff[j]) / (coeff[i] - coeff[j]);
      if (t < 0.0 || t > 1.0) continue;
      std::array<double, 4> lam{};
      lam[i] = t;
      lam[j] = 1.0 - t;
      verts.push_back(lam);
      probe_lam(lam);
    }
  for (std::size_t a = 0; a < verts.size(); ++a)
    for (std::size_t b = a + 1; b < verts.size(); ++b)
      for (int k = 1; k < 200; ++k) {
        const double t = k / 200.0;
        std::array<double, 4> lam;
        for (std::size_t q = 0; q < 4; ++q) lam[q] = (1.0 - t) * verts[a][q] + t * verts[b][q];
        probe_lam(lam);
      }
  if (best.value > 1e299) return best;

  // Zoom refinement around the incumbent.
  while (window > 1e-10) {
    double bx, bw;
    {
      const auto& l = best.lam;
      const double t11 = l[0] - l[1] + l[2] - l[3];
      const double t33 = l[0] + l[1] - l[2] - l[3];
      const double w = -l[0] + l[1] + l[2] - l[3];
      bx = pivot_t33 ? t33 : t11;
      bw = w;
    }
    cx = bx;
    cw = bw;
    for (int i = -10; i <= 10; ++i)
      for (int j = -10; j <= 10; ++j) probe(cx + window * i / 10.0, cw + window * j / 10.0);
    window *= 0.35;
  }
  return best;
}

// --- Penalty solver over rho = G G^dag / Tr ------------------------------

Mat4 matrix_log2(const Mat4& rho) {
  const auto es = hermitian_eigensystem(rho, 1e-8);
  Mat4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < 4; ++k)
        s += std::log2(std::max(es.values[k], 1e-18)) * es.vectors(i, k) *
             std::conj(es.vectors(j, k));
      out(i, j) = s;
    }
  return out;
}

Mat4 hermitian_part(const Mat4& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

// The concurrence surrogate also drives the EOF minimization, since EOF is
// monotone in concurrence.
namespace detail {

namespace {

MeasureGrad distillable_grad(const Mat4& rho) {
  const Mat2 rho_b = partial_trace_first(rho);
  auto xlog2x = [](double x) { return x > 1e-15 ? x * std::log2(x) : 0.0; };
  double value = 0.0;
  {
    const auto eb = hermitian_eigensystem(rho_b, 1e-8);
    for (double v : eb.values) value -= xlog2x(std::max(0.0, v));
    const auto ea = hermitian_eigensystem(rho, 1e-8);
    for (double v : ea.values) value += xlog2x(std::max(0.0, v));
  }
  Mat2 logb;
  {
    const auto eb = hermitian_eigensystem(rho_b, 1e-8);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < 2; ++k)
          s += std::log2(std::max(eb.values[k], 1e-18)) * eb.vectors(i, k) *
               std::conj(eb.vectors(j, k));
        logb(i, j) = s;
      }
  }
  const Mat4 w = matrix_log2(rho) - kron(Mat2::identity(), logb);
  return {value, w};
}

MeasureGrad concurrence_grad(const Mat4& rho) {
  const Mat4 yy = kron(pauli(2), pauli(2));
  const Mat4 rho_t = yy * rho.conjugate() * yy;

  const auto er = hermitian_eigensystem(rho, 1e-8);
  Mat4 root, root_inv;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      cplx s = 0.0, si = 0.0;
      for (std::size_t k = 0; k < 4; ++k) {
        const double ev = std::max(0.0, er.values[k]);
        const double r = std::sqrt(ev);
        const cplx proj = er.vectors(i, k) * std::conj(er.vectors(j, k));
        s += r * proj;
        if (r > 1e-9) si += (1.0 / r) * proj;
      }
      root(i, j) = s;
      root_inv(i, j) = si;
    }

  const Mat4 a = hermitian_part(root * rho_t * root);
  const auto ea = hermitian_eigensystem(a, 1e-8);

  double value = 0.0;
  Mat4 w;
  for (std::size_t k = 0; k < 4; ++k) {
    const double lam = std::sqrt(std::max(0.0, ea.values[k]));
    const double sign = (k == 0) ? 1.0 : -1.0;  // eigenvalues come sorted
    value += sign * lam;

    // Left/right eigenvectors of rho*rho_t from the Hermitian eigenproblem.
    std::array<cplx, 4> v{}, wl{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        v[i] += root(i, j) * ea.vectors(j, k);
        wl[i] += root_inv(i, j) * ea.vectors(j, k);
      }
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < 4; ++i) overlap += std::conj(wl[i]) * v[i];
    if (std::abs(overlap) < 1e-6) continue;  // near-singular rho; drop the term

    Mat4 p;  // v w^dag / (w^dag v)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) p(i, j) = v[i] * std::conj(wl[j]) / overlap;

    // d(lam_k^2) = Tr[(rho_t P + (Y P rho Y)^T) drho]
    const Mat4 grad_nu = rho_t * p + (yy * p * rho * yy).transpose();
    const double inv = sign / (2.0 * std::max(lam, 1e-8));
    w = w + inv * grad_nu;
  }
  return {value, hermitian_part(w)};
}

}  // namespace

MeasureGrad measure_grad(MeasureKind measure, const Mat4& rho) {
  if (measure == MeasureKind::OneWayDistillable) return distillable_grad(rho);
  return concurrence_grad(rho);
}

}  // namespace detail

namespace {

struct SolveCandidate {
  bool valid = false;
  double objective = 1e300;
  double residual = 1e300;
  Mat4 rho;
};

SolveCandidate run_restart(Mat4 g, const Mat4& s_op, double S, MeasureKind measure) {
  const auto normalize = [](const Mat4& gg) {
    Mat4 rho = gg * gg.adjoint();
    const double t = rho.trace().real();
    return std::pair<Mat4, double>{(1.0 / t) * rho, t};
  };

  std::array<double, 32> m{}, v{};
  double mu = 10.0, dual = 0.0, lr = 0.02;
  int step = 0;
  for (int stage = 0; stage < 6; ++stage) {
    for (int iter = 0; iter < 200; ++iter) {
      const auto [rho, t] = normalize(g);
      const auto mg = detail::measure_grad(measure, rho);
      const double r = (rho * s_op).trace().real() - S;
      const Mat4 w = mg.w + (dual + 2.0 * mu * r) * s_op;
      const Mat4 w_m = (1.0 / t) * (w - (w * rho).trace().real() * Mat4::identity());
      const Mat4 grad_c = 2.0 * (w_m * g);

      ++step;
      const double b1 = 0.9, b2 = 0.999;
      for (std::size_t i = 0; i < 16; ++i) {
        for (int part = 0; part < 2; ++part) {
          const std::size_t pi = 2 * i + part;
          const double gr = part == 0 ? grad_c.e[i].real() : grad_c.e[i].imag();
          m[pi] = b1 * m[pi] + (1.0 - b1) * gr;
          v[pi] = b2 * v[pi] + (1.0 - b2) * gr * gr;
          const double mh = m[pi] / (1.0 - std::pow(b1, step));
          const double vh = v[pi] / (1.0 - std::pow(b2, step));
          const double upd = lr * mh / (std::sqrt(vh) + 1e-12);
          if (part == 0)
            g.e[i] -= upd;
          else
            g.e[i] -= cplx(0.0, upd);
        }
      }
    }
    const auto [rho, t] = normalize(g);
    (void)t;
    const double r = (rho * s_op).trace().real() - S;
    dual += 2.0 * mu * r;
    mu = std::min(mu * 10.0, 1e6);
    lr *= 0.6;
  }

  const auto [rho, t] = normalize(g);
  (void)t;
  SolveCandidate out;
  out.rho = rho;
  out.residual = std::abs((rho * s_op).trace().real() - S);
  out.valid = out.residual <= 1e-7;
  if (out.valid) {
    try {
      out.objective = evaluate_measure(measure, DensityMatrix(rho));
    } catch (const Error&) {
      out.valid = false;
    }
  }
  return out;
}

}  // namespace

double theta_star_concurrence(double S, double alpha) {
  check_window(S, alpha);
  const double c2 = std::max(0.0, S * S / 4.0 - alpha * alpha);
  return std::atan(std::sqrt(c2) / alpha);
}

std::pair<double, double> feasible_theta_range(double S, double alpha) {
  check_window(S, alpha);
  static thread_local double checked_alpha = -1.0;
  if (checked_alpha != alpha) {
    assert_top_eigenvalue(alpha);
    checked_alpha = alpha;
  }
  const double r = 2.0 * std::sqrt(alpha * alpha + 1.0);
  const double phi = std::atan(1.0 / alpha);
  const double delta = std::acos(std::min(1.0, S / r));
  const double lo = std::max(0.0, phi - delta);
  const double hi = std::min(M_PI / 4.0, phi + delta);
  return {lo, hi};
}

InterplayPoint min_entanglement_at_theta(double S, double alpha, double theta,
                                         MeasureKind measure, int restarts,
                                         std::uint64_t seed) {
  check_window(S, alpha);
  if (!(theta >= 0.0 && theta <= M_PI / 4.0 + 1e-12))
    throw ParamOutOfRangeError("theta must lie in [0, pi/4]");
  if (S > top_eigenvalue_closed_form(alpha, theta) + 1e-12)
    throw InfeasibleThetaError("S exceeds the largest eigenvalue of the tilted operator");
  if (restarts < 1) throw ParamOutOfRangeError("restarts must be >= 1");

  const Mat4 s_op = tilted_operator(alpha, theta);

  std::vector<SolveCandidate> candidates;

  // Restart 0: analytic Bell-diagonal warm start (exactly feasible and, by
  // the twirling argument, globally optimal); kept raw and also polished.
  const auto warm = bell_diag_minimum(S, alpha, theta, measure);
  Mat4 g_warm;
  if (warm.value < 1e299) {
    const Mat4& basis = bell_basis();
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k)
        g_warm(i, k) = std::sqrt(std::max(0.0, warm.lam[k])) * basis(i, k);

    SolveCandidate raw;
    raw.rho = g_warm * g_warm.adjoint();
    raw.residual = std::abs((raw.rho * s_op).trace().real() - S);
    raw.valid = raw.residual <= 1e-7;
    if (raw.valid) raw.objective = evaluate_measure(measure, DensityMatrix(raw.rho));
    candidates.push_back(raw);
    candidates.push_back(run_restart(g_warm, s_op, S, measure));
  }

  Rng rng(seed);
  for (int r = 1; r < restarts; ++r) {
    Mat4 g;
    for (auto& x : g.e) x = cplx(rng.gaussian(), rng.gaussian());
    candidates.push_back(run_restart(g, s_op, S, measure));
  }

  const SolveCandidate* best = nullptr;
  for (const auto& c : candidates)
    if (c.valid && (!best || c.objective < best->objective)) best = &c;
  if (!best) throw SolverFailureError("no restart met the constraint residual");

  InterplayPoint out{theta, S, measure, 0.0, DensityMatrix(best->rho)};
  out.e_min = evaluate_measure(measure, out.witness);
  return out;
}

std::vector<InterplayScanRow> interplay_scan(const std::vector<double>& s_list, double alpha,
                                             int theta_steps, MeasureKind measure,
                                             int restarts, std::uint64_t seed) {
  if (theta_steps < 2) throw ParamOutOfRangeError("theta_steps must be >= 2");
  assert_top_eigenvalue(alpha);

  std::vector<InterplayScanRow> rows;
  for (double s : s_list) {
    const auto [lo, hi] = feasible_theta_range(s, alpha);
    InterplayScanRow row;
    row.S = s;
    double best_theta = lo, best_e = 1e300;
    for (int i = 0; i < theta_steps; ++i) {
      const double theta =
          theta_steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (theta_steps - 1);
      auto pt = min_entanglement_at_theta(s, alpha, theta, measure, restarts, seed);
      if (pt.e_min < best_e) {
        best_e = pt.e_min;
        best_theta = theta;
      }
      row.points.push_back(std::move(pt));
    }

    // Golden-section polish of the minimizing theta on the Bell-diagonal
    // evaluator (exact by the twirling reduction).
    {
      const double span = (hi - lo) / std::max(1, theta_steps - 1);
      double a = std::max(lo, best_theta - span), b = std::min(hi, best_theta + span);
      const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
      auto eval = [&](double th) { return bell_diag_minimum(s, alpha, th, measure).value; };
      double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
      double f1 = eval(x1), f2 = eval(x2);
      while (b - a > 1e-5) {
        if (f1 <= f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - gr * (b - a);
          f1 = eval(x1);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + gr * (b - a);
          f2 = eval(x2);
        }
      }
      const double th = 0.5 * (a + b);
      const double fe = eval(th);
      if (fe < best_e) {
        best_e = fe;
        best_theta = th;
      }
    }
    row.best_theta = best_theta;
    row.best_e = best_e;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace bellest
