#include <doctest.h>

#include <cmath>
#include <complex>

#include "bellest/linalg.hpp"
#include "bellest/random.hpp"

using namespace bellest;

namespace {

Mat4 random_hermitian(Rng& rng, double scale = 1.0) {
  Mat4 m;
  for (std::size_t i = 0; i < 4; ++i) {
    m(i, i) = scale * rng.gaussian();
    for (std::size_t j = i + 1; j < 4; ++j) {
      const cplx z = scale * cplx(rng.gaussian(), rng.gaussian());
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

// Characteristic polynomial coefficients via Faddeev-LeVerrier, then
// Durand-Kerner roots: an eigenvalue oracle fully independent of Jacobi.
std::array<double, 4> char_poly_roots(const Mat4& m) {
  // p(x) = x^4 + c3 x^3 + c2 x^2 + c1 x + c0
  std::array<cplx, 4> c;
  Mat4 mk = m;
  cplx ck = -mk.trace();
  c[3] = ck;
  for (int k = 2; k >= 0; --k) {
    Mat4 shifted = mk;
    for (std::size_t i = 0; i < 4; ++i) shifted(i, i) += ck;
    mk = m * shifted;
    ck = -mk.trace() / static_cast<double>(4 - k);
    c[static_cast<std::size_t>(k)] = ck;
  }

  auto poly = [&](cplx x) { return (((x + c[3]) * x + c[2]) * x + c[1]) * x + c[0]; };
  std::array<cplx, 4> r{cplx(0.4, 0.9), cplx(-0.91, 0.4), cplx(0.35, -0.82), cplx(-0.5, -0.6)};
  const double scale = std::max(1.0, m.max_abs() * 4.0);
  for (auto& x : r) x *= scale;
  for (int iter = 0; iter < 500; ++iter) {
    double move = 0.0;
    for (int i = 0; i < 4; ++i) {
      cplx denom = 1.0;
      for (int j = 0; j < 4; ++j)
        if (j != i) denom *= r[i] - r[j];
      const cplx step = poly(r[i]) / denom;
      r[i] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-14 * scale) break;
  }
  std::array<double, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = r[i].real();
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double residual(const Mat4& m, const EigenSystem<4>& es, std::size_t k) {
  double r = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    cplx mv = 0.0;
    for (std::size_t j = 0; j < 4; ++j) mv += m(i, j) * es.vectors(j, k);
    r = std::max(r, std::abs(mv - es.values[k] * es.vectors(i, k)));
  }
  return r;
}

}  // namespace

TEST_CASE("pauli matrices") {
  CHECK(pauli(3)(0, 0) == cplx(1.0));
  CHECK(pauli(3)(1, 1) == cplx(-1.0));
  CHECK(pauli(1)(0, 1) == cplx(1.0));
  CHECK(pauli(1)(0, 0) == cplx(0.0));
  const Mat2 yy = pauli(2) * pauli(2);
  CHECK(std::abs(yy(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(yy(0, 1)) < 1e-15);
  CHECK_THROWS_AS(pauli(0), ParamOutOfRangeError);
}

TEST_CASE("planar observables") {
  CHECK((planar_observable(0.0) - pauli(3)).max_abs() < 1e-15);
  CHECK((planar_observable(M_PI / 2.0) - pauli(1)).max_abs() < 1e-15);
  const auto es = hermitian_eigensystem(planar_observable(M_PI / 4.0), 1e-10);
  CHECK(es.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(es.values[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(planar_angle(planar_observable(0.7)) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("kron basics") {
  CHECK((kron(Mat2::identity(), Mat2::identity()) - Mat4::identity()).max_abs() < 1e-15);
  const Mat4 zz = kron(pauli(3), pauli(3));
  CHECK(zz(0, 0) == cplx(1.0));
  CHECK(zz(1, 1) == cplx(-1.0));
  CHECK(zz(2, 2) == cplx(-1.0));
  CHECK(zz(3, 3) == cplx(1.0));
  CHECK(std::abs(kron(pauli(1), pauli(3)).trace()) < 1e-15);
}

TEST_CASE("eigensystem on fixed matrices") {
  Mat4 d;
  d(0, 0) = 4.0;
  d(1, 1) = 3.0;
  d(2, 2) = 2.0;
  d(3, 3) = 1.0;
  const auto es = hermitian_eigensystem(d);
  CHECK(es.values[0] == doctest::Approx(4.0));
  CHECK(es.values[3] == doctest::Approx(1.0));

  const auto zz = hermitian_eigensystem(kron(pauli(3), pauli(3)));
  CHECK(zz.values[0] == doctest::Approx(1.0));
  CHECK(zz.values[1] == doctest::Approx(1.0));
  CHECK(zz.values[2] == doctest::Approx(-1.0));
  CHECK(zz.values[3] == doctest::Approx(-1.0));
}

TEST_CASE("eigensystem vs characteristic-polynomial oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Mat4 m = random_hermitian(rng);
    const auto es = hermitian_eigensystem(m);
    const auto roots = char_poly_roots(m);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(std::abs(es.values[k] - roots[k]) < 1e-9);
      CHECK(residual(m, es, k) < 1e-10);
    }
  }
}

TEST_CASE("eigensystem rejects non-Hermitian input") {
  Mat4 m = Mat4::identity();
  m(0, 1) = 1.0;  // no conjugate partner
  CHECK_THROWS_AS(hermitian_eigensystem(m), NonHermitianError);
}

TEST_CASE("bell_diagonal_state fixed spectra") {
  const auto phi_plus = bell_diagonal_state(BellSpectrum({1.0, 0.0, 0.0, 0.0}));
  CHECK(phi_plus(0, 0).real() == doctest::Approx(0.5));
  CHECK(phi_plus(0, 3).real() == doctest::Approx(0.5));
  CHECK(std::abs(phi_plus(1, 1)) < 1e-15);

  const auto mixed = bell_diagonal_state(BellSpectrum({0.25, 0.25, 0.25, 0.25}));
  CHECK((mixed.m - 0.25 * Mat4::identity()).max_abs() < 1e-14);

  const auto half = bell_diagonal_state(BellSpectrum({0.5, 0.5, 0.0, 0.0}));
  CHECK(half(0, 0).real() == doctest::Approx(0.5));
  CHECK(half(3, 3).real() == doctest::Approx(0.5));
  CHECK(std::abs(half(0, 3)) < 1e-14);
  CHECK(std::abs(half(1, 1)) < 1e-14);
}

TEST_CASE("bell spectrum round trip") {
  Rng rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto spec = random_bell_spectrum(rng);
    const auto pops = bell_basis_populations(bell_diagonal_state(spec));
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(pops[i] - spec[i]) < 1e-12);
  }
}

TEST_CASE("correlation matrix") {
  const auto mixed = bell_diagonal_state(BellSpectrum({0.25, 0.25, 0.25, 0.25}));
  auto t = correlation_matrix(mixed);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(t(i, j)) < 1e-14);

  const auto phi_plus = bell_diagonal_state(BellSpectrum({1.0, 0.0, 0.0, 0.0}));
  t = correlation_matrix(phi_plus);
  CHECK(t(0, 0) == doctest::Approx(1.0));
  CHECK(t(1, 1) == doctest::Approx(-1.0));
  CHECK(t(2, 2) == doctest::Approx(1.0));
  CHECK(std::abs(t(0, 1)) < 1e-12);

  // Bell-diagonal states give diagonal T with the signed eigenvalue sums.
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto spec = random_bell_spectrum(rng);
    t = correlation_matrix(bell_diagonal_state(spec));
    CHECK(t(0, 0) == doctest::Approx(spec[0] - spec[1] + spec[2] - spec[3]).epsilon(1e-10));
    CHECK(t(1, 1) == doctest::Approx(-spec[0] + spec[1] + spec[2] - spec[3]).epsilon(1e-10));
    CHECK(t(2, 2) == doctest::Approx(spec[0] + spec[1] - spec[2] - spec[3]).epsilon(1e-10));
    CHECK(std::abs(t(0, 1)) < 1e-10);
    CHECK(std::abs(t(1, 2)) < 1e-10);
  }
}

TEST_CASE("correlation entries bounded on random states") {
  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto rho = random_density_matrix(rng);
    const auto t = correlation_matrix(rho);
    for (double x : t.t) {
      CHECK(x >= -1.0 - 1e-9);
      CHECK(x <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("density matrix validation") {
  CHECK_THROWS(DensityMatrix(Mat4::identity()));  // trace 4
  Mat4 bad = 0.25 * Mat4::identity();
  bad(0, 1) = cplx(0.0, 0.3);  // breaks Hermiticity
  CHECK_THROWS_AS((void)DensityMatrix(bad), NonHermitianError);
  Mat4 neg = Mat4::zero();
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS(DensityMatrix(neg));
}

TEST_CASE("bell spectrum validation") {
  CHECK_THROWS_AS(BellSpectrum({0.2, 0.5, 0.2, 0.1}), InvalidSpectrumError);
  CHECK_THROWS_AS(BellSpectrum({0.9, 0.2, 0.0, 0.0}), InvalidSpectrumError);
  CHECK_THROWS_AS(BellSpectrum({0.7, 0.5, -0.1, -0.1}), InvalidSpectrumError);
}

TEST_CASE("hermitian_sqrt squares back") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = random_density_matrix(rng);
    const Mat4 root = hermitian_sqrt(rho.m);
    CHECK((root * root - rho.m).max_abs() < 1e-10);
  }
}

TEST_CASE("partial trace") {
  const auto phi_plus = bell_diagonal_state(BellSpectrum({1.0, 0.0, 0.0, 0.0}));
  const Mat2 b = partial_trace_first(phi_plus.m);
  CHECK(b(0, 0).real() == doctest::Approx(0.5));
  CHECK(b(1, 1).real() == doctest::Approx(0.5));
  CHECK(std::abs(b(0, 1)) < 1e-14);
}
