#include "bellest/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bellest {

Mat2 pauli(int index) {
  Mat2 m;
  switch (index) {
    case 1:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 2:
      m(0, 1) = cplx(0.0, -1.0);
      m(1, 0) = cplx(0.0, 1.0);
      break;
    case 3:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw ParamOutOfRangeError("pauli index must be 1, 2 or 3");
  }
  return m;
}

Mat2 planar_observable(double theta) {
  if (!std::isfinite(theta)) throw ParamOutOfRangeError("planar angle must be finite");
  const double c = std::cos(theta), s = std::sin(theta);
  Mat2 m;
  m(0, 0) = c;
  m(1, 1) = -c;
  m(0, 1) = s;
  m(1, 0) = s;
  return m;
}

double planar_angle(const Mat2& obs) {
  const double z = 0.5 * (obs(0, 0) - obs(1, 1)).real();
  const double x = 0.5 * (obs(0, 1) + obs(1, 0)).real();
  return std::atan2(x, z);
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

template <std::size_t N>
EigenSystem<N> hermitian_eigensystem(const Mat<N>& m, double tol) {
  const double scale = std::max(1.0, m.max_abs());
  if (m.hermiticity_defect() > tol * scale)
    throw NonHermitianError("matrix is not Hermitian within tolerance");

  // Work on the Hermitian average so round-off asymmetry cannot accumulate.
  Mat<N> a;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

  Mat<N> v = Mat<N>::identity();

  auto off_norm = [&a]() {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
  };

  const double target = 1e-13 * scale;
  for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const cplx apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Complex Jacobi rotation zeroing a(p,q).
        const double absq = std::abs(apq);
        const cplx phase = apq / absq;
        const double tau = (aqq - app) / (2.0 * absq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const cplx s = t * c * phase;

        for (std::size_t k = 0; k < N; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp - std::conj(s) * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = std::conj(s) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp - std::conj(s) * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&a](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  EigenSystem<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

template EigenSystem<2> hermitian_eigensystem(const Mat2&, double);
template EigenSystem<3> hermitian_eigensystem(const Mat<3>&, double);
template EigenSystem<4> hermitian_eigensystem(const Mat4&, double);

BellSpectrum::BellSpectrum(const std::array<double, 4>& l) : lambda(l) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (!(lambda[i] >= -1e-12)) throw InvalidSpectrumError("negative Bell eigenvalue");
    if (i > 0 && lambda[i] > lambda[i - 1] + 1e-12)
      throw InvalidSpectrumError("Bell spectrum must be sorted descending");
    sum += lambda[i];
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvalidSpectrumError("Bell spectrum must sum to 1");
}

DensityMatrix::DensityMatrix(const Mat4& mat) : m(mat) {
  if (std::abs(m.trace() - 1.0) > 1e-10) throw ParamOutOfRangeError("density matrix trace != 1");
  if (m.hermiticity_defect() > 1e-10) throw NonHermitianError("density matrix not Hermitian");
  const auto es = hermitian_eigensystem(m);
  if (es.values[3] < -1e-10) throw ParamOutOfRangeError("density matrix not positive semidefinite");
}

const Mat4& bell_basis() {
  static const Mat4 b = [] {
    Mat4 m;
    const double s = 1.0 / std::sqrt(2.0);
    // columns: Phi+, Phi-, Psi+, Psi-
    m(0, 0) = s;
    m(3, 0) = s;
    m(0, 1) = s;
    m(3, 1) = -s;
    m(1, 2) = s;
    m(2, 2) = s;
    m(1, 3) = s;
    m(2, 3) = -s;
    return m;
  }();
  return b;
}

DensityMatrix bell_diagonal_state(const BellSpectrum& spec) {
  const Mat4& b = bell_basis();
  Mat4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < 4; ++k) s += spec[k] * b(i, k) * std::conj(b(j, k));
      m(i, j) = s;
    }
  return DensityMatrix(m);
}

CorrelationMatrix correlation_matrix(const DensityMatrix& rho) {
  CorrelationMatrix t;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const Mat4 op = kron(pauli(i), pauli(j));
      t(i - 1, j - 1) = (rho.m * op).trace().real();
    }
  return t;
}

std::array<double, 4> bell_basis_populations(const DensityMatrix& rho) {
  const Mat4& b = bell_basis();
  std::array<double, 4> p{};
  for (std::size_t k = 0; k < 4; ++k) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) s += std::conj(b(i, k)) * rho(i, j) * b(j, k);
    p[k] = s.real();
  }
  return p;
}

Mat4 hermitian_sqrt(const Mat4& m) {
  const auto es = hermitian_eigensystem(m);
  Mat4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < 4; ++k) {
        const double root = std::sqrt(std::max(0.0, es.values[k]));
        s += root * es.vectors(i, k) * std::conj(es.vectors(j, k));
      }
      out(i, j) = s;
    }
  return out;
}

Mat2 partial_trace_first(const Mat4& rho) {
  Mat2 b;
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l)
      b(k, l) = rho(0 * 2 + k, 0 * 2 + l) + rho(1 * 2 + k, 1 * 2 + l);
  return b;
}

}  // namespace bellest
