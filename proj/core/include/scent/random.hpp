// Deterministic random generation. All stochastic code in the library
// draws from this generator so that a 64-bit seed pins every result
// bit-for-bit, independent of the standard library's distributions.

#pragma once

#include <cstdint>

#include "scent/types.hpp"

namespace scent {

/// splitmix64 stream; the usual choice for seeding and sub-stream derivation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller.
  double normal();

  Complex normal_complex();  // independent N(0,1) real and imaginary parts

  /// Integer in [0, n).
  int below(int n);

  /// Deterministic sub-stream for restart/branch `index`.
  Rng spawn(std::uint64_t index) const;

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-distributed unitary: complex Ginibre matrix, QR, phases fixed so
/// the R diagonal is positive.
ComplexMatrix random_unitary(int dim, Rng& rng);

/// G G^dag / tr, full rank with probability one.
ComplexMatrix random_density_matrix(int dim, Rng& rng);

/// Unit vector with i.i.d. complex normal components.
ComplexVector random_pure_state(int dim, Rng& rng);

/// Point on the probability simplex (normalized squares of normals).
RealVector random_simplex(int dim, Rng& rng);

}  // namespace scent
