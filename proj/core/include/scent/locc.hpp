// Two-party LOCC protocol that perfectly discriminates mutually
// orthogonal Schmidt correlated pure states |e_i> = sum_j u_ij |jj>.
//
// Protocol: Alice measures her half in the conjugate Fourier basis and
// sends the outcome l to Bob; Bob's conditional states {sum_j u_ij w^{jl}|j>}
// are orthonormal for every l, so a projective measurement identifies the
// hidden index with certainty. One round, two classical messages.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scent/types.hpp"

namespace scent {

/// A set of d orthogonal SC pure states given by the rows of a unitary:
/// |e_i> = sum_j u(i,j) |jj>.
class DiscriminationBasis {
 public:
  explicit DiscriminationBasis(ComplexMatrix u);

  int dim() const { return static_cast<int>(u_.rows()); }
  const ComplexMatrix& u() const { return u_; }

  /// |e_i> as a vector on C^d (x) C^d.
  ComplexVector state(int i) const;

 private:
  ComplexMatrix u_;
};

/// One protocol branch, fully recorded.
struct Transcript {
  int hidden_index = 0;
  int alice_outcome = 0;
  int bob_outcome = 0;
  double probability = 0.0;  // weight of this branch in the success average
  int residual_schmidt_rank = 0;  // of the post-measurement joint state
  std::vector<std::pair<std::string, std::string>> messages;
  bool success = false;
};

struct DiscriminationResult {
  double success_probability = 0.0;
  std::vector<Transcript> transcripts;
};

/// F(l, j) = w^{jl} / sqrt(d) with w = exp(2 pi i / d). Unitary; row l is
/// the bra Alice's outcome-l projector applies to her half.
ComplexMatrix fourier_basis(int d);

/// Bob's d conditional states after Alice reports outcome l: unit vectors
/// sum_j u(i,j) w^{jl} |j>, pairwise orthogonal.
std::vector<ComplexVector> conditional_bob_states(
    const DiscriminationBasis& basis, int l);

/// Probability that Alice sees outcome l when the hidden state is |e_i>.
/// Uniformly 1/d: the Fourier rotation changes phases, never magnitudes.
double alice_branch_probability(const DiscriminationBasis& basis, int i,
                                int l);

/// Enumerates every (hidden index, Alice outcome) branch with exact Born
/// probabilities. Bob reports the index of his measurement outcome.
DiscriminationResult discriminate_exhaustive(const DiscriminationBasis& basis);

/// Monte-Carlo run of the same protocol: `trials` independent rounds with
/// the hidden index drawn uniformly. Deterministic for a fixed seed.
DiscriminationResult discriminate_sampled(const DiscriminationBasis& basis,
                                          std::uint64_t seed, int trials);

/// Line-oriented record per transcript:
/// branch=<n> hidden=<i> alice=<l> guess=<k> prob=<p> residual_rank=<r> success=<0|1>
std::string format_transcripts(const std::vector<Transcript>& transcripts);

}  // namespace scent
