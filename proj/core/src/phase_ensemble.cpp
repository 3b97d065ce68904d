#include "scent/phase_ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "scent/random.hpp"

namespace scent {

namespace {

void require_density(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols())
    throw InvalidStateError("state must be square");
  const double dev = (rho - rho.adjoint()).norm();
  if (dev > tol.hermiticity)
    throw InvalidStateError("state is not Hermitian, deviation " +
                            std::to_string(dev));
  if (std::abs(rho.trace().real() - 1.0) > tol.trace_one)
    throw InvalidStateError("state trace is " +
                            std::to_string(rho.trace().real()));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < tol.eigenvalue_floor)
    throw InvalidStateError("state has eigenvalue " +
                            std::to_string(es.eigenvalues().minCoeff()));
}

RealVector softmax(const RealVector& w) {
  RealVector p = (w.array() - w.maxCoeff()).exp();
  return p / p.sum();
}

std::vector<int> active_indices(const ComplexMatrix& rho) {
  std::vector<int> act;
  for (int m = 0; m < rho.rows(); ++m)
    if (rho(m, m).real() > tol.support_cutoff) act.push_back(m);
  return act;
}

/// Least-squares state for one restart: phases over the active indices
/// (row 0 gauged to zero) plus softmax weight logits.
struct LmProblem {
  const ComplexMatrix& target;     // reduced coefficient matrix
  const RealVector& amp;           // reduced amplitudes
  int dr;                          // active dimension
  int count;                       // K

  int n_params() const { return count * (dr - 1) + count; }
  int n_residuals() const { return dr * (dr - 1); }

  int theta_index(int k, int m) const { return k * (dr - 1) + (m - 1); }
  int weight_index(int k) const { return count * (dr - 1) + k; }

  RealMatrix phases_of(const RealVector& x) const {
    RealMatrix th = RealMatrix::Zero(count, dr);
    for (int k = 0; k < count; ++k)
      for (int m = 1; m < dr; ++m) th(k, m) = x(theta_index(k, m));
    return th;
  }

  RealVector weights_of(const RealVector& x) const {
    return softmax(x.tail(count));
  }

  void evaluate(const RealVector& x, RealVector& r, RealMatrix* jac) const {
    const RealMatrix th = phases_of(x);
    const RealVector p = weights_of(x);

    ComplexMatrix unit(count, dr);  // e^{i theta_m^k}
    for (int k = 0; k < count; ++k)
      for (int m = 0; m < dr; ++m)
        unit(k, m) = Complex(std::cos(th(k, m)), std::sin(th(k, m)));

    const double rt2 = std::sqrt(2.0);
    int row = 0;
    for (int m = 0; m < dr; ++m) {
      for (int n = m + 1; n < dr; ++n) {
        Complex mix = 0.0;
        for (int k = 0; k < count; ++k)
          mix += p(k) * unit(k, m) * std::conj(unit(k, n));
        const double scale = amp(m) * amp(n);
        const Complex resid = scale * mix - target(m, n);
        r(row) = rt2 * resid.real();
        r(row + 1) = rt2 * resid.imag();

        if (jac) {
          for (int k = 0; k < count; ++k) {
            const Complex term = unit(k, m) * std::conj(unit(k, n));
            const Complex dtheta = Complex(0.0, 1.0) * p(k) * term * scale;
            if (m >= 1) {
              (*jac)(row, theta_index(k, m)) = rt2 * dtheta.real();
              (*jac)(row + 1, theta_index(k, m)) = rt2 * dtheta.imag();
            }
            if (n >= 1) {
              (*jac)(row, theta_index(k, n)) = -rt2 * dtheta.real();
              (*jac)(row + 1, theta_index(k, n)) = -rt2 * dtheta.imag();
            }
            const Complex dw = p(k) * (term - mix) * scale;
            (*jac)(row, weight_index(k)) = rt2 * dw.real();
            (*jac)(row + 1, weight_index(k)) = rt2 * dw.imag();
          }
        }
        row += 2;
      }
    }
  }
};

/// One Levenberg-Marquardt run; returns the final cost ||r||^2.
double lm_minimize(const LmProblem& prob, RealVector& x, double target_cost,
                   int max_iters) {
  const int nr = prob.n_residuals();
  const int np = prob.n_params();
  RealVector r(nr), r_try(nr);
  RealMatrix jac = RealMatrix::Zero(nr, np);

  prob.evaluate(x, r, &jac);
  double cost = r.squaredNorm();
  double lambda = 1e-3;

  for (int iter = 0; iter < max_iters && cost > target_cost; ++iter) {
    const RealMatrix h = jac.transpose() * jac;
    const RealVector g = jac.transpose() * r;

    bool stepped = false;
    for (int bump = 0; bump < 12; ++bump) {
      RealMatrix damped = h;
      damped.diagonal().array() += lambda;
      const RealVector delta = damped.ldlt().solve(-g);
      const RealVector x_try = x + delta;
      prob.evaluate(x_try, r_try, nullptr);
      const double cost_try = r_try.squaredNorm();
      if (cost_try < cost) {
        x = x_try;
        cost = cost_try;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 4.0;
      if (lambda > 1e14) break;
    }
    if (!stepped) break;
    jac.setZero();
    prob.evaluate(x, r, &jac);
  }
  return cost;
}

PhaseEnsemble assemble(int full_dim, const std::vector<int>& act,
                       const RealVector& amp_full, const RealVector& weights,
                       const RealMatrix& reduced_phases) {
  PhaseEnsemble e;
  e.dim = full_dim;
  e.weights = weights;
  e.amplitudes = amp_full;
  e.phases = RealMatrix::Zero(weights.size(), full_dim);
  for (int k = 0; k < weights.size(); ++k)
    for (int j = 0; j < static_cast<int>(act.size()); ++j)
      e.phases(k, act[j]) = reduced_phases(k, j);
  return e;
}

}  // namespace

ComplexVector member_state(const PhaseEnsemble& e, int k) {
  if (k < 0 || k >= e.count())
    throw IndexOutOfRangeError("ensemble member " + std::to_string(k));
  ComplexVector v(e.dim);
  for (int m = 0; m < e.dim; ++m)
    v(m) = e.amplitudes(m) *
           Complex(std::cos(e.phases(k, m)), std::sin(e.phases(k, m)));
  return v;
}

BipartitePureState member_state_bipartite(const PhaseEnsemble& e, int k) {
  const ComplexVector v = member_state(e, k);
  ComplexVector psi = ComplexVector::Zero(e.dim * e.dim);
  for (int m = 0; m < e.dim; ++m) psi(m * e.dim + m) = v(m);
  return BipartitePureState(std::move(psi), e.dim, e.dim);
}

ComplexMatrix reconstruct(const PhaseEnsemble& e) {
  ComplexMatrix out(e.dim, e.dim);
  for (int m = 0; m < e.dim; ++m) {
    out(m, m) = e.amplitudes(m) * e.amplitudes(m);
    for (int n = m + 1; n < e.dim; ++n) {
      Complex mix = 0.0;
      for (int k = 0; k < e.count(); ++k) {
        const double delta = e.phases(k, m) - e.phases(k, n);
        mix += e.weights(k) * Complex(std::cos(delta), std::sin(delta));
      }
      out(m, n) = e.amplitudes(m) * e.amplitudes(n) * mix;
      out(n, m) = std::conj(out(m, n));
    }
  }
  return out;
}

double residual(const PhaseEnsemble& e, const ComplexMatrix& rho) {
  if (rho.rows() != e.dim || rho.cols() != e.dim)
    throw DimensionMismatchError("ensemble dimension " +
                                 std::to_string(e.dim) +
                                 " does not match state dimension " +
                                 std::to_string(rho.rows()));
  return (reconstruct(e) - rho).norm();
}

CorrelationMatrix correlation_matrix(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols())
    throw InvalidStateError("state must be square");
  if ((rho - rho.adjoint()).norm() > tol.hermiticity)
    throw InvalidStateError("state is not Hermitian");
  std::vector<int> zeros;
  for (int m = 0; m < rho.rows(); ++m)
    if (rho(m, m).real() <= tol.support_cutoff) zeros.push_back(m);
  if (!zeros.empty()) throw ZeroDiagonalError(zeros);

  const int d = static_cast<int>(rho.rows());
  CorrelationMatrix c;
  c.entries = ComplexMatrix(d, d);
  for (int m = 0; m < d; ++m) {
    c.entries(m, m) = 1.0;
    for (int n = m + 1; n < d; ++n) {
      const double s = std::sqrt(rho(m, m).real() * rho(n, n).real());
      c.entries(m, n) = rho(m, n) / s;
      c.entries(n, m) = std::conj(c.entries(m, n));
    }
  }
  return c;
}

PhaseSolveResult solve_phase_ensemble(const ComplexMatrix& rho,
                                      const PhaseSolveOptions& opts) {
  require_density(rho);
  const int d = static_cast<int>(rho.rows());
  const std::vector<int> act = active_indices(rho);
  const int dr = static_cast<int>(act.size());

  RealVector amp_full = RealVector::Zero(d);
  for (int m = 0; m < d; ++m)
    amp_full(m) = std::sqrt(std::max(0.0, rho(m, m).real()));

  ComplexMatrix reduced(dr, dr);
  RealVector amp(dr);
  for (int i = 0; i < dr; ++i) {
    amp(i) = amp_full(act[i]);
    for (int j = 0; j < dr; ++j) reduced(i, j) = rho(act[i], act[j]);
  }

  PhaseSolveResult result;

  // Rank-one correlation: the exact single-member solution.
  {
    ComplexMatrix corr(dr, dr);
    for (int i = 0; i < dr; ++i)
      for (int j = 0; j < dr; ++j)
        corr(i, j) = reduced(i, j) / (amp(i) * amp(j));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(corr);
    const bool rank_one =
        dr == 1 || es.eigenvalues()(dr - 2) < 1e-12 * std::max(1.0, es.eigenvalues()(dr - 1));
    if (rank_one) {
      const ComplexVector u = es.eigenvectors().col(dr - 1);
      RealMatrix th(1, dr);
      const double base = std::arg(u(0));
      for (int i = 0; i < dr; ++i) th(0, i) = std::arg(u(i)) - base;
      RealVector w1(1);
      w1(0) = 1.0;
      PhaseEnsemble cand = assemble(d, act, amp_full, w1, th);
      const double res = residual(cand, rho);
      if (res <= opts.tol) {
        result.ensemble = std::move(cand);
        result.residual = res;
        result.converged = true;
        return result;
      }
    }
  }

  const int count = opts.count > 0 ? opts.count : 2 * dr;
  if (count < dr + 1)
    throw Error("ensemble size " + std::to_string(count) +
                " is below the required " + std::to_string(dr + 1));

  const LmProblem prob{reduced, amp, dr, count};
  const double target_cost = std::pow(0.3 * opts.tol, 2);

  Rng root(opts.seed);
  double best_cost = std::numeric_limits<double>::infinity();
  RealVector best_x;
  for (int restart = 0; restart < opts.restarts; ++restart) {
    Rng sub = root.spawn(static_cast<std::uint64_t>(restart));
    RealVector x(prob.n_params());
    for (int k = 0; k < count; ++k)
      for (int m = 1; m < dr; ++m)
        x(prob.theta_index(k, m)) = sub.uniform(-std::numbers::pi,
                                                std::numbers::pi);
    for (int k = 0; k < count; ++k)
      x(prob.weight_index(k)) = 0.3 * sub.normal();

    const double cost = lm_minimize(prob, x, target_cost, opts.max_iters);
    result.restarts_used = restart + 1;
    if (cost < best_cost) {
      best_cost = cost;
      best_x = x;
    }
    if (best_cost <= target_cost) break;
  }

  result.ensemble = assemble(d, act, amp_full, prob.weights_of(best_x),
                             prob.phases_of(best_x));
  result.residual = residual(result.ensemble, rho);
  result.converged = result.residual <= opts.tol;
  return result;
}

PhaseSolveResult realize_schmidt_correlated(const SchmidtCorrelatedState& sc,
                                            const PhaseSolveOptions& opts) {
  return solve_phase_ensemble(sc.coeffs(), opts);
}

}  // namespace scent
