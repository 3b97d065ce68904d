// Four-party family whose distillable entanglement is known exactly.
//
// The family mixes N signal/payload pairs with uniform weight:
//   rho = (1/N) sum_i |e_i>_{A1 B1}<e_i| (x) |phi_i>_{A2 B2}<phi_i|
// where |e_i> = sum_j u_ij |jj> are the orthogonal flag states of a
// DiscriminationBasis and every payload |phi_i> = sum_k sqrt(lambda_k)
// e^{i theta_k^i} |kk> carries the same Schmidt spectrum lambda.
//
// Lower bound: run the flag discrimination protocol (perfect), then hold a
// known pure state with entanglement H(lambda). Upper bound: the state is
// Schmidt correlated across A1A2 : B1B2, so its relative entropy of
// entanglement has a closed form — which is again H(lambda). The two meet,
// certifying the distillable entanglement exactly.

#pragma once

#include "scent/locc.hpp"
#include "scent/states.hpp"
#include "scent/types.hpp"

namespace scent {

class DistillationFamily {
 public:
  /// basis: N x N unitary of flag states; lambda: payload Schmidt spectrum
  /// (nonnegative, sums to one within 1e-10); theta: N x payload_dim phase
  /// grid, row i giving the phases of |phi_i>.
  DistillationFamily(DiscriminationBasis basis, RealVector lambda,
                     RealMatrix theta);

  int count() const { return basis_.dim(); }
  int payload_dim() const { return static_cast<int>(lambda_.size()); }
  const DiscriminationBasis& basis() const { return basis_; }
  const RealVector& payload_coeffs() const { return lambda_; }
  const RealMatrix& payload_phases() const { return theta_; }

  /// |phi_i> on C^d (x) C^d.
  BipartitePureState payload_state(int i) const;

 private:
  DiscriminationBasis basis_;
  RealVector lambda_;
  RealMatrix theta_;
};

/// The (N d)^2-dimensional mixed state with the A1A2 : B1B2 bipartition.
/// Components are built in pairwise (A1 B1)(A2 B2) order and reordered by
/// an explicit factor permutation so the A : B cut is a plain Kronecker
/// split (A-side flat index a1 * d + a2).
DensityMatrix build_family_state(const DistillationFamily& f);

/// Runs the flag discrimination exhaustively; if every branch identifies
/// the hidden index with certainty, the parties are left holding a known
/// payload, so the average payload entanglement is distillable.
/// Throws ProtocolImperfectError if any branch misidentifies.
double distill_lower_bound(const DistillationFamily& f);

/// Closed-form relative entropy of entanglement of the built state across
/// A1A2 : B1B2 — an upper bound on its distillable entanglement.
/// Throws NotSchmidtCorrelatedError if the state fails SC detection
/// (impossible for a valid family; signals an implementation bug).
double ree_upper_bound(const DistillationFamily& f);

/// Computes both bounds; when they agree within tol.bounds_match returns
/// the certified common value (the lower bound's figure). Throws
/// BoundsGapError carrying both values otherwise.
double distillable_entanglement(const DistillationFamily& f);

/// The N=2, d=2 family mixing two copies of one Bell state with two copies
/// of another. Valid only for Bell pairs sharing a Schmidt basis: indices
/// {0,1} (the |00>/|11> pair) or {2,3} (the |01>/|10> pair, represented
/// after the |0><->|1| relabeling of Bob's basis that aligns it with the
/// |mm> convention). Mixed pairs throw NotSchmidtCorrelatedPairError.
DistillationFamily bell_pair_family(int i, int j);

}  // namespace scent
