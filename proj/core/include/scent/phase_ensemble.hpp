// Realizes a density matrix as an ensemble of fixed-amplitude phase
// states: rho_mn = sqrt(a_mm a_nn) sum_k p_k exp(i(theta_m^k - theta_n^k)).
//
// The solver is a multi-start Levenberg-Marquardt least-squares fit over
// the phases (first active row gauged to zero) and softmax-reparameterized
// weights. A non-convergent solve reports its best residual; it is
// evidence of non-convergence, not of impossibility.

#pragma once

#include <cstdint>

#include "scent/states.hpp"
#include "scent/types.hpp"

namespace scent {

struct PhaseEnsemble {
  int dim = 0;            // d
  RealVector weights;     // K entries, nonnegative, sum 1
  RealMatrix phases;      // K x d, radians
  RealVector amplitudes;  // sqrt(a_mm), d entries

  int count() const { return static_cast<int>(weights.size()); }
};

/// Member |phi_k> = sum_m amplitudes_m e^{i theta_m^k} |m>.
ComplexVector member_state(const PhaseEnsemble& e, int k);

/// Same member read over the pair basis |mm>, as a d (x) d pure state.
BipartitePureState member_state_bipartite(const PhaseEnsemble& e, int k);

/// sum_k p_k |phi_k><phi_k|. The diagonal equals amplitudes^2 exactly,
/// independent of the phases.
ComplexMatrix reconstruct(const PhaseEnsemble& e);

/// Frobenius distance ||reconstruct(e) - rho||_F.
double residual(const PhaseEnsemble& e, const ComplexMatrix& rho);

/// Normalized coefficients c_mn = a_mn / sqrt(a_mm a_nn); Hermitian PSD
/// with unit diagonal. Throws ZeroDiagonalError (listing the indices)
/// when some a_mm is at or below the support cutoff.
struct CorrelationMatrix {
  ComplexMatrix entries;
  int dim() const { return static_cast<int>(entries.rows()); }
};
CorrelationMatrix correlation_matrix(const ComplexMatrix& rho);

struct PhaseSolveOptions {
  int count = 0;             // K; 0 selects the default 2d
  std::uint64_t seed = 0;
  double tol = 1e-8;         // target Frobenius residual
  int max_iters = 200;       // LM iterations per restart
  int restarts = 32;
};

struct PhaseSolveResult {
  PhaseEnsemble ensemble;  // best found
  double residual = 0.0;
  int restarts_used = 0;
  bool converged = false;  // residual <= tol
};

/// Deterministic given (rho, options). Indices with zero diagonal weight
/// are carried through with zero amplitude and zero phases. When the
/// correlation matrix is rank one the exact single-member ensemble is
/// returned directly, whatever count was requested; otherwise count must
/// be at least d + 1 over the active indices.
PhaseSolveResult solve_phase_ensemble(const ComplexMatrix& rho,
                                      const PhaseSolveOptions& opts = {});

/// Solves on the coefficient matrix; the resulting ensemble realizes the
/// embedded state over |mm>, every member sharing Schmidt coefficients
/// sqrt(a_mm).
PhaseSolveResult realize_schmidt_correlated(const SchmidtCorrelatedState& sc,
                                            const PhaseSolveOptions& opts = {});

}  // namespace scent
