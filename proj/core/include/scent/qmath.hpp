// Dense complex Hermitian linear-algebra and entropy kernels.
//
// Conventions used everywhere downstream:
//   - logarithms are base 2; entropies and relative entropies are in bits
//   - eigenvalues at or below tol.support_cutoff count as zero support
//   - Kronecker index order: (A (x) B) row index = a_row * dim(B) + b_row

#pragma once

#include <vector>

#include "scent/errors.hpp"
#include "scent/types.hpp"

namespace scent {

/// Eigenvalues sorted descending, eigenvectors as matching columns.
/// V diag(lambda) V^dag reconstructs the input and V^dag V = I, both
/// within tol.hermiticity in Frobenius norm.
struct HermitianEigensystem {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Throws NonHermitianError (with the deviation norm) if
/// ||M - M^dag||_F > tol.hermiticity.
HermitianEigensystem eig_hermitian(const ComplexMatrix& m);

/// von Neumann entropy S(rho) = -tr rho log2 rho, in bits.
/// Throws InvalidStateError unless rho is Hermitian, trace one within
/// tol.trace_one, and has min eigenvalue >= tol.eigenvalue_floor.
double entropy(const ComplexMatrix& rho);

/// S(rho||sigma) = tr rho (log2 rho - log2 sigma), in bits, evaluated on
/// the support of sigma. Returns +infinity when more than tol.support_leak
/// of rho's weight lies outside that support.
double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Kronecker product.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { A, B };

/// Partial trace of a state on C^{dim_a} (x) C^{dim_b}, keeping `keep`.
/// Throws BadFactorizationError when dim_a * dim_b != rho.rows().
ComplexMatrix partial_trace(const ComplexMatrix& rho, int dim_a, int dim_b,
                            Subsystem keep);

struct SchmidtDecomposition {
  RealVector coefficients;  // descending, nonnegative, sum of squares = 1
  ComplexMatrix basis_a;    // columns |a_k>
  ComplexMatrix basis_b;    // columns |b_k>
};

/// psi = sum_k c_k |a_k>|b_k| with flat index a * dim_b + b.
/// Throws NotNormalizedError unless ||psi|| = 1 within tol.unit_norm.
SchmidtDecomposition schmidt_decompose(const ComplexVector& psi, int dim_a,
                                       int dim_b);

/// Reorders the tensor factors of a square operator on
/// C^{dims[0]} (x) ... (x) C^{dims.back()}. perm[i] names which original
/// factor lands at slot i of the output.
ComplexMatrix permute_systems(const ComplexMatrix& m,
                              const std::vector<int>& dims,
                              const std::vector<int>& perm);

/// Shannon entropy of a nonnegative vector (need not be normalized), bits.
double shannon_entropy(const RealVector& p);

}  // namespace scent
