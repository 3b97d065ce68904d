#include "scent/states.hpp"

#include <cmath>
#include <string>

#include "scent/random.hpp"

namespace scent {

namespace {

void validate_density(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw InvalidStateError(std::string(what) + " must be square");
  const double dev = (m - m.adjoint()).norm();
  if (dev > tol.hermiticity)
    throw InvalidStateError(std::string(what) +
                            " is not Hermitian, deviation " +
                            std::to_string(dev));
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol.trace_one)
    throw InvalidStateError(std::string(what) + " has trace " +
                            std::to_string(tr));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < tol.eigenvalue_floor)
    throw InvalidStateError(std::string(what) + " has eigenvalue " +
                            std::to_string(min_eig));
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
  validate_density(matrix_, "density matrix");
}

DensityMatrix::DensityMatrix(ComplexMatrix m, int dim_a, int dim_b)
    : matrix_(std::move(m)), dims_(std::make_pair(dim_a, dim_b)) {
  validate_density(matrix_, "density matrix");
  if (static_cast<Eigen::Index>(dim_a) * dim_b != matrix_.rows())
    throw BadFactorizationError("bipartition " + std::to_string(dim_a) + "x" +
                                std::to_string(dim_b) +
                                " does not match dimension " +
                                std::to_string(matrix_.rows()));
}

SchmidtCorrelatedState::SchmidtCorrelatedState(ComplexMatrix coeffs)
    : coeffs_(std::move(coeffs)) {
  validate_density(coeffs_, "coefficient matrix");
  const int d = static_cast<int>(coeffs_.rows());
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const double bound = std::sqrt(coeffs_(m, m).real() *
                                     coeffs_(n, n).real()) +
                           tol.sc_positivity_slack;
      if (std::abs(coeffs_(m, n)) > bound)
        throw InvalidStateError("coefficient (" + std::to_string(m) + "," +
                                std::to_string(n) +
                                ") exceeds the positivity bound");
    }
  }
}

BipartitePureState::BipartitePureState(ComplexVector amplitudes, int dim_a,
                                       int dim_b)
    : amplitudes_(std::move(amplitudes)), dim_a_(dim_a), dim_b_(dim_b) {
  if (static_cast<Eigen::Index>(dim_a) * dim_b != amplitudes_.size())
    throw BadFactorizationError("amplitude length does not match dims");
  if (std::abs(amplitudes_.norm() - 1.0) > tol.unit_norm)
    throw NotNormalizedError("state norm is " +
                             std::to_string(amplitudes_.norm()));
}

DensityMatrix BipartitePureState::projector() const {
  ComplexMatrix p = amplitudes_ * amplitudes_.adjoint();
  return DensityMatrix(std::move(p), dim_a_, dim_b_);
}

DensityMatrix embed(const SchmidtCorrelatedState& sc) {
  const int d = sc.local_dim();
  ComplexMatrix rho = ComplexMatrix::Zero(d * d, d * d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n)
      rho(m * d + m, n * d + n) = sc.coeffs()(m, n);
  return DensityMatrix(std::move(rho), d, d);
}

ScDetection detect_schmidt_correlated(const DensityMatrix& rho) {
  int d = 0;
  if (rho.has_dims()) {
    if (rho.dim_a() != rho.dim_b())
      throw DimensionMismatchError("detection needs a square bipartition");
    d = rho.dim_a();
  } else {
    d = static_cast<int>(std::lround(std::sqrt(rho.dim())));
    if (d * d != rho.dim())
      throw DimensionMismatchError(
          "dimension " + std::to_string(rho.dim()) +
          " is not a perfect square and no bipartition was given");
  }

  double diag_weight = 0.0;
  for (int m = 0; m < d; ++m) diag_weight += rho.matrix()(m * d + m, m * d + m).real();

  ScDetection out;
  out.off_subspace_weight = std::max(0.0, 1.0 - diag_weight);
  if (out.off_subspace_weight > tol.sc_off_subspace) return out;

  ComplexMatrix coeffs(d, d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n)
      coeffs(m, n) = rho.matrix()(m * d + m, n * d + n);
  out.state = SchmidtCorrelatedState(std::move(coeffs));
  return out;
}

DensityMatrix sigma_star(const SchmidtCorrelatedState& sc) {
  const int d = sc.local_dim();
  ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
  for (int m = 0; m < d; ++m)
    s(m * d + m, m * d + m) = sc.coeffs()(m, m).real();
  return DensityMatrix(std::move(s), d, d);
}

BipartitePureState bell_state(int i) {
  if (i < 0 || i > 3)
    throw IndexOutOfRangeError("Bell index " + std::to_string(i));
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector v = ComplexVector::Zero(4);
  switch (i) {
    case 0: v(0) = r; v(3) = r; break;   // (|00> + |11>)/sqrt2
    case 1: v(0) = r; v(3) = -r; break;  // (|00> - |11>)/sqrt2
    case 2: v(1) = r; v(2) = r; break;   // (|01> + |10>)/sqrt2
    default: v(1) = r; v(2) = -r; break; // (|01> - |10>)/sqrt2
  }
  return BipartitePureState(std::move(v), 2, 2);
}

SchmidtCorrelatedState random_sc_state(int local_dim, Rng& rng) {
  return SchmidtCorrelatedState(random_density_matrix(local_dim, rng));
}

}  // namespace scent
