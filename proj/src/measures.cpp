#include "bellest/measures.hpp"

#include <algorithm>
#include <cmath>

namespace bellest {

namespace {
constexpr double kEntropyCutoff = 1e-14;  // eigenvalues below are exact zeros

double xlog2x(double x) {
  if (x < kEntropyCutoff) return 0.0;
  return x * std::log2(x);
}

Mat4 spin_flip_conjugate(const DensityMatrix& rho) {
  const Mat4 yy = kron(pauli(2), pauli(2));
  return yy * rho.m.conjugate() * yy;
}
}  // namespace

const char* measure_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Concurrence:
      return "concurrence";
    case MeasureKind::EntanglementOfFormation:
      return "eof";
    case MeasureKind::OneWayDistillable:
      return "distillable";
  }
  return "?";
}

double binary_entropy(double p) {
  if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) throw DomainError("binary_entropy argument outside [0, 1]");
  p = std::clamp(p, 0.0, 1.0);
  return -xlog2x(p) - xlog2x(1.0 - p);
}

std::array<double, 4> wootters_eigenvalues(const DensityMatrix& rho) {
  const Mat4 root = hermitian_sqrt(rho.m);
  const Mat4 a = root * spin_flip_conjugate(rho) * root;
  const auto es = hermitian_eigensystem(a, 1e-8);
  std::array<double, 4> lam;
  for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::max(0.0, es.values[i]));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return lam;
}

double concurrence(const DensityMatrix& rho) {
  const auto lam = wootters_eigenvalues(rho);
  return std::clamp(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0);
}

double entanglement_of_formation(const DensityMatrix& rho) {
  const double c = concurrence(rho);
  return binary_entropy(0.5 + 0.5 * std::sqrt(std::max(0.0, 1.0 - c * c)));
}

template <std::size_t N>
double von_neumann_entropy(const Mat<N>& rho) {
  const auto es = hermitian_eigensystem(rho, 1e-8);
  double h = 0.0;
  for (double v : es.values) h -= xlog2x(std::max(0.0, v));
  return h;
}

template double von_neumann_entropy(const Mat2&);
template double von_neumann_entropy(const Mat4&);

double one_way_distillable(const DensityMatrix& rho) {
  return von_neumann_entropy(partial_trace_first(rho.m)) - von_neumann_entropy(rho.m);
}

double evaluate_measure(MeasureKind kind, const DensityMatrix& rho) {
  switch (kind) {
    case MeasureKind::Concurrence:
      return concurrence(rho);
    case MeasureKind::EntanglementOfFormation:
      return entanglement_of_formation(rho);
    case MeasureKind::OneWayDistillable:
      return one_way_distillable(rho);
  }
  throw ParamOutOfRangeError("unknown measure");
}

}  // namespace bellest
