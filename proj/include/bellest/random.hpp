#pragma once

#include <cstdint>

#include "bellest/linalg.hpp"

namespace bellest {

// Deterministic random source: splitmix64 plus a hand-rolled Box-Muller so
// the stream does not depend on the standard library's distribution details.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ull + 1ull) {}

  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  double gaussian();

 private:
  std::uint64_t next_word();
  std::uint64_t state_;
};

/// Mixed state G G^dag / Tr(G G^dag) with G a 4 x rank complex Gaussian matrix.
DensityMatrix random_density_matrix(Rng& rng, int rank = 4);

/// Haar-random two-qubit pure state.
DensityMatrix random_pure_state(Rng& rng);

/// Random Bell-diagonal state (flat Dirichlet spectrum, sorted).
BellSpectrum random_bell_spectrum(Rng& rng);

/// Haar-random single-qubit unitary.
Mat2 random_unitary2(Rng& rng);

}  // namespace bellest
