#include <doctest.h>

#include <cmath>

#include "bellest/measures.hpp"
#include "bellest/random.hpp"
#include "bellest/scenarios.hpp"

using namespace bellest;

namespace {

DensityMatrix conjugate_local(const DensityMatrix& rho, const Mat2& ua, const Mat2& ub) {
  const Mat4 u = kron(ua, ub);
  return DensityMatrix(u * rho.m * u.adjoint());
}

}  // namespace

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.25) ==
        doctest::Approx(2.0 - 0.75 * std::log2(3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(binary_entropy(1.2), DomainError);
  CHECK_THROWS_AS(binary_entropy(-0.1), DomainError);
}

TEST_CASE("concurrence on fixed states") {
  CHECK(concurrence(bell_diagonal_state(BellSpectrum({1.0, 0.0, 0.0, 0.0}))) ==
        doctest::Approx(1.0).epsilon(1e-10));
  Mat4 product;
  product(0, 0) = 1.0;
  CHECK(concurrence(DensityMatrix(product)) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(concurrence(scenario_state(ScenarioState::werner(0.4))) ==
        doctest::Approx(0.4).epsilon(1e-9));
  CHECK(concurrence(scenario_state(ScenarioState::werner(0.5))) ==
        doctest::Approx(0.25).epsilon(1e-9));
  // Separable beyond p = 2/3
  CHECK(concurrence(scenario_state(ScenarioState::werner(0.7))) == doctest::Approx(0.0));
}

TEST_CASE("entanglement of formation") {
  CHECK(entanglement_of_formation(bell_diagonal_state(BellSpectrum({1.0, 0.0, 0.0, 0.0}))) ==
        doctest::Approx(1.0).epsilon(1e-10));
  Mat4 product;
  product(0, 0) = 1.0;
  CHECK(entanglement_of_formation(DensityMatrix(product)) == doctest::Approx(0.0));
  // Bell-diagonal (0.8, 0.2, 0, 0) has concurrence 0.6, so EOF = h(0.9).
  CHECK(entanglement_of_formation(bell_diagonal_state(BellSpectrum({0.8, 0.2, 0.0, 0.0}))) ==
        doctest::Approx(binary_entropy(0.9)).epsilon(1e-9));
  CHECK(binary_entropy(0.9) == doctest::Approx(0.4690).epsilon(1e-4));
}

TEST_CASE("one-way distillable entanglement") {
  CHECK(one_way_distillable(bell_diagonal_state(BellSpectrum({1.0, 0.0, 0.0, 0.0}))) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(one_way_distillable(bell_diagonal_state(BellSpectrum({0.25, 0.25, 0.25, 0.25}))) ==
        doctest::Approx(-1.0).epsilon(1e-10));
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto spec = random_bell_spectrum(rng);
    double h = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      if (spec[i] > 1e-15) h -= spec[i] * std::log2(spec[i]);
    CHECK(one_way_distillable(bell_diagonal_state(spec)) ==
          doctest::Approx(1.0 - h).epsilon(1e-9));
  }
}

TEST_CASE("concurrence bounded and eof monotone") {
  Rng rng(29);
  for (int trial = 0; trial < 1000; ++trial) {
    const double c = concurrence(random_density_matrix(rng));
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double c = i / 100.0;
    const double e = binary_entropy(0.5 + 0.5 * std::sqrt(1.0 - c * c));
    CHECK(e >= prev - 1e-12);
    prev = e;
  }
}

TEST_CASE("distillable never exceeds formation") {
  Rng rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto rho = random_density_matrix(rng);
    CHECK(one_way_distillable(rho) <= entanglement_of_formation(rho) + 1e-9);
  }
}

TEST_CASE("local unitary invariance") {
  Rng rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = random_density_matrix(rng);
    const auto rotated = conjugate_local(rho, random_unitary2(rng), random_unitary2(rng));
    CHECK(std::abs(concurrence(rho) - concurrence(rotated)) < 1e-9);
    CHECK(std::abs(entanglement_of_formation(rho) - entanglement_of_formation(rotated)) < 1e-9);
    CHECK(std::abs(one_way_distillable(rho) - one_way_distillable(rotated)) < 1e-9);
  }
}

TEST_CASE("wootters eigenvalues are real and nonnegative") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto lam = wootters_eigenvalues(random_density_matrix(rng));
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(lam[i] >= 0.0);
      if (i > 0) CHECK(lam[i] <= lam[i - 1] + 1e-12);
    }
  }
}
