// Density-matrix and Schmidt-correlated-state domain types.
//
// Basis convention: computational product basis ordered lexicographically,
// |mn> at flat index m * dim_b + n, so |mm> sits at m * d + m. All modules
// share this convention.

#pragma once

#include <optional>
#include <utility>

#include "scent/qmath.hpp"
#include "scent/types.hpp"

namespace scent {

/// Trace-one PSD Hermitian matrix, optionally tagged with a bipartition.
/// Validated on construction (tolerances from the central record).
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);
  DensityMatrix(ComplexMatrix m, int dim_a, int dim_b);

  const ComplexMatrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  bool has_dims() const { return dims_.has_value(); }
  int dim_a() const { return dims_->first; }
  int dim_b() const { return dims_->second; }

 private:
  ComplexMatrix matrix_;
  std::optional<std::pair<int, int>> dims_;
};

/// Coefficient matrix A = (a_mn) of rho = sum_mn a_mn |mm><nn|.
/// A must itself be a valid density matrix; positivity forces
/// |a_mn| <= sqrt(a_mm a_nn), which is checked with a small slack.
/// Zero diagonal entries are accepted; their rows and columns are then
/// zero and downstream code treats those indices as absent.
class SchmidtCorrelatedState {
 public:
  explicit SchmidtCorrelatedState(ComplexMatrix coeffs);

  const ComplexMatrix& coeffs() const { return coeffs_; }
  int local_dim() const { return static_cast<int>(coeffs_.rows()); }
  RealVector diagonal() const { return coeffs_.diagonal().real(); }

 private:
  ComplexMatrix coeffs_;
};

/// Unit vector on C^{dim_a} (x) C^{dim_b}, flat index a * dim_b + b.
class BipartitePureState {
 public:
  BipartitePureState(ComplexVector amplitudes, int dim_a, int dim_b);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  DensityMatrix projector() const;

 private:
  ComplexVector amplitudes_;
  int dim_a_;
  int dim_b_;
};

/// The d^2 x d^2 state sum_mn a_mn |mm><nn| with the (d, d) bipartition.
DensityMatrix embed(const SchmidtCorrelatedState& sc);

struct ScDetection {
  std::optional<SchmidtCorrelatedState> state;
  double off_subspace_weight = 0.0;
  bool ok() const { return state.has_value(); }
};

/// Inverse of embed. Succeeds iff the rho-weight outside span{|mm>} is
/// at most tol.sc_off_subspace; the weight is reported either way.
/// Requires a square bipartition (explicit dims, or a perfect-square total).
ScDetection detect_schmidt_correlated(const DensityMatrix& rho);

/// The diagonal separable state sum_m a_mm |mm><mm|.
DensityMatrix sigma_star(const SchmidtCorrelatedState& sc);

/// The four Bell states in fixed order:
/// 0: (|00>+|11>)/sqrt2   1: (|00>-|11>)/sqrt2
/// 2: (|01>+|10>)/sqrt2   3: (|01>-|10>)/sqrt2
BipartitePureState bell_state(int i);

/// Coefficient matrix with random PSD structure (a valid SC state).
SchmidtCorrelatedState random_sc_state(int local_dim, class Rng& rng);

}  // namespace scent
