#include "bellest/estimation.hpp"

#include <algorithm>
#include <cmath>

namespace bellest {

namespace {

void check_window(double S, double alpha) {
  if (!(alpha >= 1.0)) throw AlphaOutOfRangeError("tilt parameter alpha must be >= 1");
  if (S > 2.0 * std::sqrt(alpha * alpha + 1.0) + 1e-9)
    throw SuperQuantumError("Bell value exceeds the quantum bound");
}

double clamp_to_quantum(double S, double alpha) {
  return std::min(S, 2.0 * std::sqrt(alpha * alpha + 1.0));
}

// Eliminated variables of the 2-D reduction: given (l2, l3), the extremal
// eigenvalues are fixed by the violation constraint ("+" radical for l1).
struct Eliminated {
  double l1, l4;
  bool feasible;
};

Eliminated eliminate(double S, double alpha, double l2, double l3) {
  const double a2 = alpha * alpha;
  const double rad = S * S * (a2 + 1.0) / 16.0 - a2 * (l2 - l3) * (l2 - l3);
  if (rad < 0.0) return {0.0, 0.0, false};
  const double root = std::sqrt(rad) / (a2 + 1.0);
  const double l1 = 0.5 - (a2 * l2 + l3) / (a2 + 1.0) + root;
  double l4 = 0.5 - (l2 + a2 * l3) / (a2 + 1.0) - root;
  const double eps = 1e-12;
  if (l4 < -eps || l1 < l2 - eps || l3 < l4 - eps) return {0.0, 0.0, false};
  l4 = std::max(0.0, l4);
  return {l1, l4, true};
}

double spectrum_objective(double l1, double l2, double l3, double l4) {
  auto xlog2x = [](double x) { return x > 1e-15 ? x * std::log2(x) : 0.0; };
  return 1.0 + xlog2x(l1) + xlog2x(l2) + xlog2x(l3) + xlog2x(l4);
}

}  // namespace

BoundResult concurrence_bound(double S, double alpha, AssumptionLevel level) {
  check_window(S, alpha);
  if (S <= 2.0 * alpha) return {0.0, std::nullopt, std::nullopt};
  S = clamp_to_quantum(S, alpha);
  if (level == AssumptionLevel::DeviceIndependent) {
    const double value = (S - 2.0 * alpha) / (2.0 * std::sqrt(1.0 + alpha * alpha) - 2.0 * alpha);
    return {value, std::nullopt, std::nullopt};
  }
  const double c = std::sqrt(S * S / 4.0 - alpha * alpha);
  BoundResult out;
  out.value = c;
  out.extremal_spectrum = BellSpectrum({0.5 + 0.5 * c, 0.5 - 0.5 * c, 0.0, 0.0});
  out.extremal_theta = std::atan(c / alpha);
  return out;
}

BoundResult eof_bound(double S, double alpha, AssumptionLevel level) {
  check_window(S, alpha);
  if (S <= 2.0 * alpha) return {0.0, std::nullopt, std::nullopt};
  S = clamp_to_quantum(S, alpha);
  if (level == AssumptionLevel::DeviceIndependent) {
    const double value = (S - 2.0 * alpha) / (2.0 * std::sqrt(1.0 + alpha * alpha) - 2.0 * alpha);
    return {value, std::nullopt, std::nullopt};
  }
  const double c = std::sqrt(S * S / 4.0 - alpha * alpha);
  BoundResult out;
  out.value = binary_entropy(0.5 + 0.5 * std::sqrt(std::max(0.0, 1.0 - c * c)));
  out.extremal_spectrum = BellSpectrum({0.5 + 0.5 * c, 0.5 - 0.5 * c, 0.0, 0.0});
  out.extremal_theta = std::atan(c / alpha);
  return out;
}

BoundResult distillable_bound(double S, double alpha) {
  check_window(S, alpha);
  // Trivial bound: a two-qubit state can have coherent information as low
  // as -1 (maximally mixed), so no violation certifies no more than that.
  if (S <= 2.0 * alpha) return {-1.0, std::nullopt, std::nullopt};
  S = clamp_to_quantum(S, alpha);

  double best = 1e300, best_l2 = 0.0, best_l3 = 0.0;
  const auto value_at = [&](double l2, double l3) {
    if (l3 < 0.0 || l3 > l2 || l2 > 0.5) return 1e300;
    const auto el = eliminate(S, alpha, l2, l3);
    if (!el.feasible) return 1e300;
    return spectrum_objective(el.l1, l2, l3, el.l4);
  };
  const auto probe = [&](double l2, double l3) {
    const double v = value_at(l2, l3);
    if (v < best) {
      best = v;
      best_l2 = l2;
      best_l3 = l3;
    }
  };
  const auto polish = [&](double l2, double l3) {
    double v = value_at(l2, l3);
    if (v > 1e299) return;
    double window = 0.5 / 200.0;
    while (window > 1e-8) {
      double nl2 = l2, nl3 = l3, nv = v;
      for (int i = -10; i <= 10; ++i)
        for (int j = -10; j <= 10; ++j) {
          const double c2 = l2 + window * i / 10.0, c3 = l3 + window * j / 10.0;
          const double cv = value_at(c2, c3);
          if (cv < nv) {
            nv = cv;
            nl2 = c2;
            nl3 = c3;
          }
        }
      l2 = nl2;
      l3 = nl3;
      v = nv;
      window *= 0.35;
    }
    if (v < best) {
      best = v;
      best_l2 = l2;
      best_l3 = l3;
    }
  };

  // Coarse triangular grid, keeping several well-separated incumbents so a
  // local polish cannot get trapped in the wrong basin.
  const int n = 200;
  struct Cell {
    double v = 1e300, l2 = 0.0, l3 = 0.0;
  };
  Cell cells[4][4];
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double l2 = 0.5 * i / n, l3 = 0.5 * j / n;
      const double v = value_at(l2, l3);
      Cell& cell = cells[(4 * i) / (n + 1)][(4 * j) / (n + 1)];
      if (v < cell.v) cell = {v, l2, l3};
    }
  for (const auto& row : cells)
    for (const auto& cell : row)
      if (cell.v < 1e299) probe(cell.l2, cell.l3);
  // Near the quantum bound the feasible set shrinks below the grid pitch;
  // seed it with two spectra known to sit on the constraint for any S:
  // the rank-2 extremal family and the Werner line.
  const double c = std::sqrt(std::max(0.0, S * S / 4.0 - alpha * alpha));
  const double p = 1.0 - S / (2.0 * std::sqrt(alpha * alpha + 1.0));
  probe(0.5 - 0.5 * c, 0.0);
  probe(0.25 * p, 0.25 * p);

  // The minimizer can also live in a thin feasible sliver along an active
  // ordering constraint (l4 = 0 or l3 = l4), narrower than any 2-D grid.
  // Both constraint functions are monotone in l3, so trace the boundary
  // curves by bisection over a dense l2 sweep.
  const double a2 = alpha * alpha;
  const auto l4_of = [&](double l2, double l3) {
    const double rad = S * S * (a2 + 1.0) / 16.0 - a2 * (l2 - l3) * (l2 - l3);
    if (rad < 0.0) return 1e300;
    return 0.5 - (l2 + a2 * l3) / (a2 + 1.0) - std::sqrt(rad) / (a2 + 1.0);
  };
  double bnd_best = 1e300, bnd_l2 = 0.0, bnd_l3 = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double l2 = 0.5 * i / 400.0;
    for (int which = 0; which < 2; ++which) {
      // which 0: root of l4(l3); which 1: root of l3 - l4(l3). Both are
      // monotone decreasing / increasing in l3 respectively.
      const auto f = [&](double l3) {
        const double l4 = l4_of(l2, l3);
        if (l4 > 1e299) return l4;
        return which == 0 ? l4 : l3 - l4;
      };
      double a = 0.0, b = l2;
      double fa = f(a), fb = f(b);
      if (fa > 1e299 || fb > 1e299 || fa * fb > 0.0) continue;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if ((fm <= 0.0) == (fa <= 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      const double l3 = 0.5 * (a + b);
      probe(l2, l3);
      const double v = value_at(l2, l3);
      if (v < bnd_best) {
        bnd_best = v;
        bnd_l2 = l2;
        bnd_l3 = l3;
      }
    }
  }
  if (best > 1e299) throw SolverFailureError("empty feasible region for the distillable bound");

  for (const auto& row : cells)
    for (const auto& cell : row)
      if (cell.v < 1e299) polish(cell.l2, cell.l3);
  polish(0.5 - 0.5 * c, 0.0);
  polish(0.25 * p, 0.25 * p);
  if (bnd_best < 1e299) polish(bnd_l2, bnd_l3);

  const auto el = eliminate(S, alpha, best_l2, best_l3);
  std::array<double, 4> lam{el.l1, best_l2, best_l3, el.l4};
  const double sum = lam[0] + lam[1] + lam[2] + lam[3];
  for (auto& x : lam) x /= sum;
  BoundResult out;
  out.value = best;
  out.extremal_spectrum = BellSpectrum(lam);
  return out;
}

double distillable_bound_gridscan(double S, double alpha, double step) {
  check_window(S, alpha);
  if (S <= 2.0 * alpha) throw NoViolationError("no violation");
  S = clamp_to_quantum(S, alpha);
  double best = 1e300, best_l2 = 0.0;
  const auto eval = [&](double l2, double l3) {
    if (l3 < 0.0 || l3 > l2 || l2 > 0.5) return;
    const auto el = eliminate(S, alpha, l2, l3);
    if (!el.feasible) return;
    const double v = spectrum_objective(el.l1, l2, l3, el.l4);
    if (v < best) {
      best = v;
      best_l2 = l2;
    }
  };
  const double a2 = alpha * alpha;
  const auto l4_of = [&](double l2, double l3) {
    const double rad = S * S * (a2 + 1.0) / 16.0 - a2 * (l2 - l3) * (l2 - l3);
    if (rad < 0.0) return 1e300;
    return 0.5 - (l2 + a2 * l3) / (a2 + 1.0) - std::sqrt(rad) / (a2 + 1.0);
  };
  // For each l2 the feasible l3-set is bounded by the roots of l4 = 0
  // (decreasing in l3) and l3 - l4 = 0 (increasing); it can be far
  // narrower than the grid pitch, so bracket it by bisection and sweep
  // the bracket densely alongside the uniform l3 grid.
  const auto scan_l2 = [&](double l2) {
    if (l2 < 0.0 || l2 > 0.5) return;
    const int m = static_cast<int>(l2 / step);
    for (int j = 0; j <= m; ++j) eval(l2, j * step);
    double roots[2];
    int found = 0;
    for (int which = 0; which < 2; ++which) {
      const auto f = [&](double l3) {
        const double l4 = l4_of(l2, l3);
        if (l4 > 1e299) return l4;
        return which == 0 ? l4 : l3 - l4;
      };
      double a = 0.0, b = l2;
      double fa = f(a), fb = f(b);
      if (fa > 1e299 || fb > 1e299 || fa * fb > 0.0) continue;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (a + b);
        if ((f(mid) <= 0.0) == (fa <= 0.0)) {
          a = mid;
          fa = f(a);
        } else {
          b = mid;
        }
      }
      roots[found++] = 0.5 * (a + b);
    }
    if (found == 2) {
      const double lo = std::min(roots[0], roots[1]), hi = std::max(roots[0], roots[1]);
      for (int k = 0; k <= 64; ++k) eval(l2, lo + (hi - lo) * k / 64.0);
    } else {
      for (int k = 0; k < found; ++k) eval(l2, roots[k]);
    }
  };

  const int n = static_cast<int>(0.5 / step) + 1;
  for (int i = 0; i <= n; ++i) scan_l2(i * step);
  // Two uniform refinement passes of the l2 sweep around the incumbent.
  double window = step;
  for (int pass = 0; pass < 2; ++pass) {
    const double center = best_l2;
    for (int k = -100; k <= 100; ++k) scan_l2(center + window * k / 100.0);
    window /= 100.0;
  }
  return best;
}

SampledCurve convex_closure(const SampledCurve& curve) {
  const std::size_t n = curve.s.size();
  if (n != curve.e.size()) throw ParamOutOfRangeError("curve arrays differ in length");
  for (std::size_t i = 1; i < n; ++i)
    if (!(curve.s[i] > curve.s[i - 1])) throw ParamOutOfRangeError("S-grid must be increasing");
  if (n < 3) return curve;

  // Lower hull of the sample points (monotone chain), then interpolate back
  // onto the original grid.
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2], b = hull.back();
      const double cross = (curve.s[b] - curve.s[a]) * (curve.e[i] - curve.e[a]) -
                           (curve.e[b] - curve.e[a]) * (curve.s[i] - curve.s[a]);
      if (cross <= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }

  SampledCurve out;
  out.s = curve.s;
  out.e.resize(n);
  std::size_t seg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (seg + 1 < hull.size() && curve.s[hull[seg + 1]] < curve.s[i]) ++seg;
    const std::size_t a = hull[seg], b = hull[std::min(seg + 1, hull.size() - 1)];
    if (a == b) {
      out.e[i] = curve.e[a];
    } else {
      const double t = (curve.s[i] - curve.s[a]) / (curve.s[b] - curve.s[a]);
      out.e[i] = curve.e[a] + t * (curve.e[b] - curve.e[a]);
    }
  }
  return out;
}

DistillableCurve distillable_di_curve(const std::vector<double>& s_grid, double alpha) {
  DistillableCurve out;
  out.curve.s = s_grid;
  out.curve.e.reserve(s_grid.size());
  for (double s : s_grid) out.curve.e.push_back(distillable_bound(s, alpha).value);

  bool convex = true;
  for (std::size_t i = 2; i < out.curve.e.size(); ++i) {
    const double d2 = out.curve.e[i] - 2.0 * out.curve.e[i - 1] + out.curve.e[i - 2];
    if (d2 < -1e-6) {
      convex = false;
      break;
    }
  }
  if (!convex) {
    out.curve = convex_closure(out.curve);
    out.closure_applied = true;
  }
  return out;
}

}  // namespace bellest
