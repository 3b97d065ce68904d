#include "scent/distill.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "scent/qmath.hpp"
#include "scent/ree.hpp"

namespace scent {

DistillationFamily::DistillationFamily(DiscriminationBasis basis,
                                       RealVector lambda, RealMatrix theta)
    : basis_(std::move(basis)),
      lambda_(std::move(lambda)),
      theta_(std::move(theta)) {
  if (lambda_.size() < 1)
    throw InvalidStateError("payload spectrum must be nonempty");
  for (int k = 0; k < lambda_.size(); ++k)
    if (lambda_(k) < -1e-12)
      throw InvalidStateError("payload coefficient " + std::to_string(k) +
                              " is negative");
  if (std::abs(lambda_.sum() - 1.0) > 1e-10)
    throw InvalidStateError("payload coefficients sum to " +
                            std::to_string(lambda_.sum()));
  if (theta_.rows() != basis_.dim() || theta_.cols() != lambda_.size())
    throw DimensionMismatchError(
        "phase grid must be count x payload_dim, got " +
        std::to_string(theta_.rows()) + " x " + std::to_string(theta_.cols()));
}

BipartitePureState DistillationFamily::payload_state(int i) const {
  if (i < 0 || i >= count())
    throw IndexOutOfRangeError("payload index " + std::to_string(i));
  const int d = payload_dim();
  ComplexVector psi = ComplexVector::Zero(d * d);
  for (int k = 0; k < d; ++k) {
    const double amp = std::sqrt(std::max(0.0, lambda_(k)));
    psi(k * d + k) =
        amp * Complex(std::cos(theta_(i, k)), std::sin(theta_(i, k)));
  }
  return BipartitePureState(std::move(psi), d, d);
}

DensityMatrix build_family_state(const DistillationFamily& f) {
  const int n = f.count();
  const int d = f.payload_dim();
  const int total = n * n * d * d;

  ComplexMatrix pairwise = ComplexMatrix::Zero(total, total);
  for (int i = 0; i < n; ++i) {
    const ComplexVector flag = f.basis().state(i);          // on A1 (x) B1
    const ComplexVector payload = f.payload_state(i).amplitudes();  // A2 (x) B2
    ComplexVector joint(total);
    for (int p = 0; p < flag.size(); ++p)
      for (int q = 0; q < payload.size(); ++q)
        joint(p * payload.size() + q) = flag(p) * payload(q);
    pairwise += (1.0 / n) * (joint * joint.adjoint());
  }

  // Reorder factors (A1, B1, A2, B2) -> (A1, A2, B1, B2).
  const ComplexMatrix grouped =
      permute_systems(pairwise, {n, n, d, d}, {0, 2, 1, 3});
  return DensityMatrix(grouped, n * d, n * d);
}

double distill_lower_bound(const DistillationFamily& f) {
  const DiscriminationResult run = discriminate_exhaustive(f.basis());
  if (run.success_probability < 1.0 - tol.protocol_perfect)
    throw ProtocolImperfectError(
        "flag discrimination succeeds with probability " +
        std::to_string(run.success_probability));
  for (const Transcript& t : run.transcripts)
    if (!t.success)
      throw ProtocolImperfectError(
          "branch hidden=" + std::to_string(t.hidden_index) +
          " alice=" + std::to_string(t.alice_outcome) + " guessed " +
          std::to_string(t.bob_outcome));

  double bound = 0.0;
  for (int i = 0; i < f.count(); ++i)
    bound += pure_ree(f.payload_state(i)) / f.count();
  return bound;
}

double ree_upper_bound(const DistillationFamily& f) {
  const DensityMatrix rho = build_family_state(f);
  const ScDetection det = detect_schmidt_correlated(rho);
  if (!det.ok())
    throw NotSchmidtCorrelatedError(
        "family state has off-subspace weight " +
        std::to_string(det.off_subspace_weight));
  return ree_sc(*det.state);
}

double distillable_entanglement(const DistillationFamily& f) {
  const double lower = distill_lower_bound(f);
  const double upper = ree_upper_bound(f);
  if (std::abs(lower - upper) > tol.bounds_match)
    throw BoundsGapError(lower, upper);
  return lower;
}

DistillationFamily bell_pair_family(int i, int j) {
  if (i < 0 || i > 3 || j < 0 || j > 3)
    throw IndexOutOfRangeError("Bell index must be in 0..3");
  if (i == j)
    throw NotSchmidtCorrelatedPairError("the two Bell states must differ");
  const bool phi_pair = i < 2 && j < 2;
  const bool psi_pair = i >= 2 && j >= 2;
  if (!phi_pair && !psi_pair)
    throw NotSchmidtCorrelatedPairError(
        "Bell states " + std::to_string(i) + " and " + std::to_string(j) +
        " do not share a Schmidt basis");

  // In the shared basis, the +-type state has phases (0, 0) and the --type
  // state has phases (0, pi); for the |01>/|10> pair this is the picture
  // after relabeling Bob's basis.
  const auto phases = [](int idx) {
    return idx % 2 == 0 ? std::pair{0.0, 0.0} : std::pair{0.0, std::numbers::pi};
  };
  RealMatrix theta(2, 2);
  theta(0, 0) = phases(i).first;
  theta(0, 1) = phases(i).second;
  theta(1, 0) = phases(j).first;
  theta(1, 1) = phases(j).second;
  RealVector lambda(2);
  lambda << 0.5, 0.5;
  return DistillationFamily(DiscriminationBasis(fourier_basis(2)),
                            std::move(lambda), std::move(theta));
}

}  // namespace scent
