#include "bellest/random.hpp"

#include <algorithm>
#include <cmath>

namespace bellest {

std::uint64_t Rng::next_word() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_word() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::gaussian() {
  // Box-Muller, one value per call; u strictly positive
  double u = 0.0;
  while (u <= 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

DensityMatrix random_density_matrix(Rng& rng, int rank) {
  rank = std::clamp(rank, 1, 4);
  Mat4 g;
  for (std::size_t i = 0; i < 4; ++i)
    for (int k = 0; k < rank; ++k)
      g(i, static_cast<std::size_t>(k)) = cplx(rng.gaussian(), rng.gaussian());
  Mat4 m = g * g.adjoint();
  const double t = m.trace().real();
  return DensityMatrix((1.0 / t) * m);
}

DensityMatrix random_pure_state(Rng& rng) { return random_density_matrix(rng, 1); }

BellSpectrum random_bell_spectrum(Rng& rng) {
  std::array<double, 4> l{};
  double sum = 0.0;
  for (auto& x : l) {
    x = -std::log(std::max(1e-300, 1.0 - rng.uniform()));
    sum += x;
  }
  for (auto& x : l) x /= sum;
  std::sort(l.begin(), l.end(), std::greater<>());
  return BellSpectrum(l);
}

Mat2 random_unitary2(Rng& rng) {
  // Gram-Schmidt on a 2x2 Ginibre matrix
  cplx a(rng.gaussian(), rng.gaussian()), b(rng.gaussian(), rng.gaussian());
  cplx c(rng.gaussian(), rng.gaussian()), d(rng.gaussian(), rng.gaussian());
  const double n1 = std::sqrt(std::norm(a) + std::norm(c));
  a /= n1;
  c /= n1;
  const cplx proj = std::conj(a) * b + std::conj(c) * d;
  b -= proj * a;
  d -= proj * c;
  const double n2 = std::sqrt(std::norm(b) + std::norm(d));
  Mat2 u;
  u(0, 0) = a;
  u(1, 0) = c;
  u(0, 1) = b / n2;
  u(1, 1) = d / n2;
  return u;
}

}  // namespace bellest
