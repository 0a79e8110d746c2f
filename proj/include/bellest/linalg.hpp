#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include "bellest/errors.hpp"

namespace bellest {

using cplx = std::complex<double>;

// Dense row-major complex matrix of fixed dimension N (N = 2 or 4 here).
template <std::size_t N>
struct Mat {
  std::array<cplx, N * N> e{};

  cplx& operator()(std::size_t i, std::size_t j) { return e[i * N + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return e[i * N + j]; }

  static Mat identity() {
    Mat m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static Mat zero() { return Mat{}; }

  Mat adjoint() const {
    Mat m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  Mat conjugate() const {
    Mat m;
    for (std::size_t i = 0; i < N * N; ++i) m.e[i] = std::conj(e[i]);
    return m;
  }

  Mat transpose() const {
    Mat m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = (*this)(j, i);
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  double hermiticity_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : e) m = std::max(m, std::abs(x));
    return m;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    Mat m;
    for (std::size_t i = 0; i < N * N; ++i) m.e[i] = a.e[i] + b.e[i];
    return m;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    Mat m;
    for (std::size_t i = 0; i < N * N; ++i) m.e[i] = a.e[i] - b.e[i];
    return m;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    Mat m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        for (std::size_t j = 0; j < N; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }
  friend Mat operator*(cplx s, const Mat& a) {
    Mat m;
    for (std::size_t i = 0; i < N * N; ++i) m.e[i] = s * a.e[i];
    return m;
  }
  friend Mat operator*(double s, const Mat& a) { return cplx(s, 0.0) * a; }
};

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;

/// Pauli matrix by index: 1 -> sigma_x, 2 -> sigma_y, 3 -> sigma_z.
Mat2 pauli(int index);

/// Planar qubit observable cos(theta) sigma_z + sin(theta) sigma_x.
Mat2 planar_observable(double theta);

/// Angle of a planar observable, recovered from its sigma_z / sigma_x parts.
double planar_angle(const Mat2& obs);

/// Kronecker product, index order A (x) B.
Mat4 kron(const Mat2& a, const Mat2& b);

template <std::size_t N>
struct EigenSystem {
  std::array<double, N> values;  // descending
  Mat<N> vectors;                // column k is the eigenvector of values[k]
};

/// Eigendecomposition of a Hermitian matrix via cyclic Jacobi rotations.
/// Iterates until the off-diagonal norm drops below 1e-13 (relative).
/// Throws NonHermitianError when the input symmetry defect exceeds tol.
template <std::size_t N>
EigenSystem<N> hermitian_eigensystem(const Mat<N>& m, double tol = 1e-10);

extern template EigenSystem<2> hermitian_eigensystem(const Mat2&, double);
extern template EigenSystem<3> hermitian_eigensystem(const Mat<3>&, double);
extern template EigenSystem<4> hermitian_eigensystem(const Mat4&, double);

// Sorted Bell-basis spectrum of a Bell-diagonal state,
// lambda_1 >= lambda_2 >= lambda_3 >= lambda_4 >= 0, sum 1.
struct BellSpectrum {
  std::array<double, 4> lambda;

  explicit BellSpectrum(const std::array<double, 4>& l);
  double operator[](std::size_t i) const { return lambda[i]; }
};

// Two-qubit density matrix; validated on construction:
// unit trace (1e-10), Hermitian (1e-10), eigenvalues >= -1e-10.
struct DensityMatrix {
  Mat4 m;

  explicit DensityMatrix(const Mat4& mat);
  const cplx& operator()(std::size_t i, std::size_t j) const { return m(i, j); }
};

struct CorrelationMatrix {
  std::array<double, 9> t{};

  double& operator()(std::size_t i, std::size_t j) { return t[i * 3 + j]; }
  double operator()(std::size_t i, std::size_t j) const { return t[i * 3 + j]; }
};

/// Unitary whose columns are the Bell states in the order
/// (Phi+, Phi-, Psi+, Psi-), expressed in the computational basis.
const Mat4& bell_basis();

/// rho = sum_i lambda_i |b_i><b_i| over the (Phi+, Phi-, Psi+, Psi-) basis.
DensityMatrix bell_diagonal_state(const BellSpectrum& spec);

/// T_ij = Tr[rho (sigma_i (x) sigma_j)], i, j in {1, 2, 3}.
CorrelationMatrix correlation_matrix(const DensityMatrix& rho);

/// Diagonal entries of rho in the Bell basis (unsorted, basis order).
std::array<double, 4> bell_basis_populations(const DensityMatrix& rho);

/// Principal square root of a positive-semidefinite Hermitian matrix.
Mat4 hermitian_sqrt(const Mat4& m);

/// Partial trace over Alice's qubit; returns rho_B.
Mat2 partial_trace_first(const Mat4& rho);

}  // namespace bellest
