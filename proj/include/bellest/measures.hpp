#pragma once

#include "bellest/linalg.hpp"

namespace bellest {

enum class MeasureKind { Concurrence, EntanglementOfFormation, OneWayDistillable };

const char* measure_name(MeasureKind kind);

/// Binary entropy in bits, h(0) = h(1) = 0 by continuity.
double binary_entropy(double p);

/// Wootters concurrence of a two-qubit state, in [0, 1].
double concurrence(const DensityMatrix& rho);

/// Entanglement of formation h((1 + sqrt(1 - C^2)) / 2), in ebits.
double entanglement_of_formation(const DensityMatrix& rho);

/// One-way distillable entanglement -H(A|B) = H(rho_B) - H(rho_AB), in ebits.
/// May be negative.
double one_way_distillable(const DensityMatrix& rho);

double evaluate_measure(MeasureKind kind, const DensityMatrix& rho);

/// Decreasingly ordered square roots of the eigenvalues of
/// rho (sy x sy) rho* (sy x sy), computed through the Hermitian-equivalent
/// sqrt(rho) rho~ sqrt(rho) form.
std::array<double, 4> wootters_eigenvalues(const DensityMatrix& rho);

/// Von Neumann entropy in bits of a Hermitian PSD matrix with unit trace.
template <std::size_t N>
double von_neumann_entropy(const Mat<N>& rho);

}  // namespace bellest
