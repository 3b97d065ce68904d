#include "scent/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace scent {

namespace {

void require_square(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatchError("matrix must be square, got " +
                                 std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()));
}

void require_state(const ComplexMatrix& rho) {
  require_square(rho);
  const double herm_dev = (rho - rho.adjoint()).norm();
  if (herm_dev > tol.hermiticity)
    throw InvalidStateError("state is not Hermitian, deviation " +
                            std::to_string(herm_dev));
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > tol.trace_one)
    throw InvalidStateError("state trace is " + std::to_string(tr));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho,
                                                  Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < tol.eigenvalue_floor)
    throw InvalidStateError("state has eigenvalue " +
                            std::to_string(es.eigenvalues().minCoeff()));
}

}  // namespace

HermitianEigensystem eig_hermitian(const ComplexMatrix& m) {
  require_square(m);
  const double dev = (m - m.adjoint()).norm();
  if (dev > tol.hermiticity) throw NonHermitianError(dev);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  const int n = static_cast<int>(m.rows());
  HermitianEigensystem out;
  out.eigenvalues = RealVector(n);
  out.eigenvectors = ComplexMatrix(n, n);
  // Eigen sorts ascending; flip to descending.
  for (int i = 0; i < n; ++i) {
    out.eigenvalues(i) = es.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

double shannon_entropy(const RealVector& p) {
  double h = 0.0;
  for (int i = 0; i < p.size(); ++i) h -= xlog2x(p(i));
  return h;
}

double entropy(const ComplexMatrix& rho) {
  require_state(rho);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    h -= xlog2x(es.eigenvalues()(i));
  return h;
}

double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw DimensionMismatchError("relative entropy needs equal dimensions");
  require_state(rho);
  require_state(sigma);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> er(rho);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sigma);

  // tr rho log2 rho from rho's own spectrum.
  double tr_rho_log_rho = 0.0;
  for (int i = 0; i < er.eigenvalues().size(); ++i)
    tr_rho_log_rho += xlog2x(er.eigenvalues()(i));

  // tr rho log2 sigma on sigma's support; accumulate the leaked weight.
  double tr_rho_log_sigma = 0.0;
  double leak = 0.0;
  for (int j = 0; j < es.eigenvalues().size(); ++j) {
    const double mu = es.eigenvalues()(j);
    const ComplexVector v = es.eigenvectors().col(j);
    const double w = std::max(0.0, (v.adjoint() * rho * v)(0).real());
    if (mu > tol.support_cutoff) {
      tr_rho_log_sigma += w * std::log2(mu);
    } else {
      leak += w;
    }
  }
  if (leak > tol.support_leak)
    return std::numeric_limits<double>::infinity();
  return tr_rho_log_rho - tr_rho_log_sigma;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, int dim_a, int dim_b,
                            Subsystem keep) {
  require_square(rho);
  if (static_cast<Eigen::Index>(dim_a) * dim_b != rho.rows())
    throw BadFactorizationError(
        "dimension " + std::to_string(rho.rows()) + " does not factor as " +
        std::to_string(dim_a) + "*" + std::to_string(dim_b));
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (int a = 0; a < dim_a; ++a)
      for (int a2 = 0; a2 < dim_a; ++a2)
        for (int b = 0; b < dim_b; ++b)
          out(a, a2) += rho(a * dim_b + b, a2 * dim_b + b);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (int b = 0; b < dim_b; ++b)
    for (int b2 = 0; b2 < dim_b; ++b2)
      for (int a = 0; a < dim_a; ++a)
        out(b, b2) += rho(a * dim_b + b, a * dim_b + b2);
  return out;
}

SchmidtDecomposition schmidt_decompose(const ComplexVector& psi, int dim_a,
                                       int dim_b) {
  if (static_cast<Eigen::Index>(dim_a) * dim_b != psi.size())
    throw BadFactorizationError("state length " + std::to_string(psi.size()) +
                                " does not factor as " + std::to_string(dim_a) +
                                "*" + std::to_string(dim_b));
  if (std::abs(psi.norm() - 1.0) > tol.unit_norm)
    throw NotNormalizedError("state norm is " + std::to_string(psi.norm()));

  ComplexMatrix coeff(dim_a, dim_b);
  for (int a = 0; a < dim_a; ++a)
    for (int b = 0; b < dim_b; ++b) coeff(a, b) = psi(a * dim_b + b);

  Eigen::JacobiSVD<ComplexMatrix> svd(
      coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.coefficients = svd.singularValues();  // descending
  out.basis_a = svd.matrixU();
  out.basis_b = svd.matrixV().conjugate();  // psi = sum c_k u_k (x) conj(v_k)
  return out;
}

ComplexMatrix permute_systems(const ComplexMatrix& m,
                              const std::vector<int>& dims,
                              const std::vector<int>& perm) {
  require_square(m);
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(perm.size()) != n)
    throw DimensionMismatchError("permutation size does not match factors");
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  if (total != m.rows())
    throw BadFactorizationError("factor dimensions do not multiply to " +
                                std::to_string(m.rows()));

  // old_index(multi) uses dims order; new_index uses dims[perm[0..]] order.
  std::vector<int> new_dims(n);
  for (int i = 0; i < n; ++i) new_dims[i] = dims[perm[i]];

  const auto remap = [&](Eigen::Index old_flat) {
    std::vector<int> digits(n);
    Eigen::Index rem = old_flat;
    for (int i = n - 1; i >= 0; --i) {
      digits[i] = static_cast<int>(rem % dims[i]);
      rem /= dims[i];
    }
    Eigen::Index out = 0;
    for (int i = 0; i < n; ++i) out = out * new_dims[i] + digits[perm[i]];
    return out;
  };

  std::vector<Eigen::Index> map(total);
  for (Eigen::Index i = 0; i < total; ++i) map[i] = remap(i);

  ComplexMatrix out(total, total);
  for (Eigen::Index r = 0; r < total; ++r)
    for (Eigen::Index c = 0; c < total; ++c) out(map[r], map[c]) = m(r, c);
  return out;
}

}  // namespace scent
