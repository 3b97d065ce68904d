#include "scent/ree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "scent/qmath.hpp"
#include "scent/random.hpp"

namespace scent {

double ree_sc(const SchmidtCorrelatedState& sc) {
  const double h = shannon_entropy(sc.diagonal());
  const double s = entropy(sc.coeffs());
  return std::max(0.0, h - s);
}

double pure_ree(const BipartitePureState& psi) {
  const SchmidtDecomposition sd =
      schmidt_decompose(psi.amplitudes(), psi.dim_a(), psi.dim_b());
  const RealVector p = sd.coefficients.array().square();
  return shannon_entropy(p);
}

MixtureDecomposition ree_mixture_decomposition(
    const std::vector<std::pair<double, SchmidtCorrelatedState>>& mixture) {
  if (mixture.empty())
    throw InvalidStateError("mixture must have at least one component");
  double weight_sum = 0.0;
  const int d = mixture.front().second.local_dim();
  const RealVector ref_diag = mixture.front().second.diagonal();
  for (const auto& [p, sc] : mixture) {
    if (p < -1e-12)
      throw InvalidStateError("mixture weight " + std::to_string(p) +
                              " is negative");
    weight_sum += p;
    if (sc.local_dim() != d)
      throw DimensionMismatchError("mixture components differ in dimension");
    const double dev = (sc.diagonal() - ref_diag).cwiseAbs().maxCoeff();
    if (dev > tol.diagonal_match)
      throw DiagonalMismatchError(
          "mixture components differ on the diagonal by " +
          std::to_string(dev));
  }
  if (std::abs(weight_sum - 1.0) > tol.trace_one)
    throw InvalidStateError("mixture weights sum to " +
                            std::to_string(weight_sum));

  ComplexMatrix mixed_coeffs = ComplexMatrix::Zero(d, d);
  for (const auto& [p, sc] : mixture) mixed_coeffs += p * sc.coeffs();
  const SchmidtCorrelatedState mixed(std::move(mixed_coeffs));
  const ComplexMatrix rho = embed(mixed).matrix();
  const ComplexMatrix sigma = sigma_star(mixed).matrix();

  MixtureDecomposition out;
  for (const auto& [p, sc] : mixture) {
    if (p <= 0.0) continue;
    const ComplexMatrix rho_i = embed(sc).matrix();
    out.avg_entanglement += p * relative_entropy(rho_i, sigma);
    out.lost_classical_info += p * relative_entropy(rho_i, rho);
  }
  out.lost_classical_info = std::max(0.0, out.lost_classical_info);
  out.total = ree_sc(mixed);
  return out;
}

AdditivityReport additivity_check(const SchmidtCorrelatedState& sc1,
                                  const SchmidtCorrelatedState& sc2) {
  const SchmidtCorrelatedState joint(tensor(sc1.coeffs(), sc2.coeffs()));
  AdditivityReport r;
  r.lhs = ree_sc(joint);
  r.rhs = ree_sc(sc1) + ree_sc(sc2);
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

ComplexMatrix SeparableApproximation::sigma() const {
  const int total = dim_a * dim_b;
  ComplexMatrix out = ComplexMatrix::Zero(total, total);
  for (int j = 0; j < term_count(); ++j) {
    ComplexVector psi(total);
    for (int a = 0; a < dim_a; ++a)
      for (int b = 0; b < dim_b; ++b)
        psi(a * dim_b + b) = states_a[j](a) * states_b[j](b);
    out += weights(j) * (psi * psi.adjoint());
  }
  return out;
}

namespace {

constexpr double kBarrier = 1e-6;  // mixed-in weight of the maximally mixed state

/// Flat-parameter descent problem: M product terms, each a raw complex
/// local vector per side (normalized on use) plus a softmax weight logit.
struct OracleProblem {
  const ComplexMatrix& rho;
  int dim_a;
  int dim_b;
  int terms;

  int dim() const { return dim_a * dim_b; }
  int a_offset(int j) const { return j * 2 * dim_a; }
  int b_offset(int j) const { return terms * 2 * dim_a + j * 2 * dim_b; }
  int w_offset(int j) const { return terms * 2 * (dim_a + dim_b) + j; }
  int n_params() const { return terms * (2 * (dim_a + dim_b) + 1); }

  struct Unpacked {
    std::vector<ComplexVector> alpha, beta;  // unit local states
    std::vector<double> norm_a, norm_b;      // pre-normalization lengths
    RealVector q;                            // simplex weights
    std::vector<ComplexVector> psi;          // alpha (x) beta
  };

  static ComplexVector read_complex(const RealVector& x, int off, int n) {
    ComplexVector v(n);
    for (int k = 0; k < n; ++k) v(k) = Complex(x(off + 2 * k), x(off + 2 * k + 1));
    return v;
  }

  Unpacked unpack(const RealVector& x) const {
    Unpacked u;
    u.alpha.resize(terms);
    u.beta.resize(terms);
    u.norm_a.resize(terms);
    u.norm_b.resize(terms);
    u.psi.resize(terms);
    RealVector logits(terms);
    for (int j = 0; j < terms; ++j) {
      ComplexVector a = read_complex(x, a_offset(j), dim_a);
      ComplexVector b = read_complex(x, b_offset(j), dim_b);
      u.norm_a[j] = std::max(a.norm(), 1e-12);
      u.norm_b[j] = std::max(b.norm(), 1e-12);
      u.alpha[j] = a / u.norm_a[j];
      u.beta[j] = b / u.norm_b[j];
      ComplexVector psi(dim());
      for (int p = 0; p < dim_a; ++p)
        for (int r = 0; r < dim_b; ++r)
          psi(p * dim_b + r) = u.alpha[j](p) * u.beta[j](r);
      u.psi[j] = std::move(psi);
      logits(j) = x(w_offset(j));
    }
    RealVector e = (logits.array() - logits.maxCoeff()).exp();
    u.q = e / e.sum();
    return u;
  }

  ComplexMatrix sigma_raw(const Unpacked& u) const {
    ComplexMatrix s = ComplexMatrix::Zero(dim(), dim());
    for (int j = 0; j < terms; ++j)
      s += u.q(j) * (u.psi[j] * u.psi[j].adjoint());
    return s;
  }

  /// Barriered objective S(rho || (1-eps) sigma_raw + eps I/D) in bits,
  /// with the analytic gradient written into grad when non-null.
  double evaluate(const RealVector& x, double neg_entropy_rho,
                  RealVector* grad) const {
    const Unpacked u = unpack(x);
    const int n = dim();
    ComplexMatrix sig = (1.0 - kBarrier) * sigma_raw(u);
    sig.diagonal().array() += kBarrier / n;

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sig);
    const RealVector mu = es.eigenvalues();
    const ComplexMatrix& v = es.eigenvectors();

    double cross = 0.0;
    for (int i = 0; i < n; ++i) {
      const double w = std::max(0.0, (v.col(i).adjoint() * rho * v.col(i))(0).real());
      cross += w * std::log2(mu(i));
    }
    const double value = neg_entropy_rho - cross;
    if (!grad) return value;

    // Derivative of tr(rho log2 sigma) in sigma: W below satisfies
    // d tr(rho log2 sigma) = tr(W d sigma).
    RealMatrix kmat(n, n);
    for (int i = 0; i < n; ++i) {
      kmat(i, i) = 1.0 / mu(i);
      for (int j = i + 1; j < n; ++j) {
        const double diff = mu(i) - mu(j);
        const double k = std::abs(diff) > 1e-12 * std::max(mu(i), mu(j))
                             ? (std::log(mu(i)) - std::log(mu(j))) / diff
                             : 2.0 / (mu(i) + mu(j));
        kmat(i, j) = k;
        kmat(j, i) = k;
      }
    }
    const ComplexMatrix b = v.adjoint() * rho * v;
    const ComplexMatrix w_op =
        v * (kmat.cast<Complex>().cwiseProduct(b)) * v.adjoint() / kLn2;

    grad->setZero();
    const double outer = -(1.0 - kBarrier);
    RealVector s(terms);
    for (int j = 0; j < terms; ++j)
      s(j) = (u.psi[j].adjoint() * w_op * u.psi[j])(0).real();
    const double s_bar = u.q.dot(s);
    for (int j = 0; j < terms; ++j)
      (*grad)(w_offset(j)) = outer * u.q(j) * (s(j) - s_bar);

    for (int j = 0; j < terms; ++j) {
      const ComplexVector g = w_op * u.psi[j];
      Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                     Eigen::RowMajor>>
          g_mat(g.data(), dim_a, dim_b);

      const ComplexVector c_a = g_mat.conjugate() * u.beta[j];
      const double t_a = (c_a.transpose() * u.alpha[j])(0).real();
      const ComplexVector grad_a =
          outer * u.q(j) * (2.0 / u.norm_a[j]) *
          (c_a.conjugate() - t_a * u.alpha[j]);
      for (int k = 0; k < dim_a; ++k) {
        (*grad)(a_offset(j) + 2 * k) += grad_a(k).real();
        (*grad)(a_offset(j) + 2 * k + 1) += grad_a(k).imag();
      }

      const ComplexVector c_b = g_mat.adjoint() * u.alpha[j];
      const double t_b = (c_b.transpose() * u.beta[j])(0).real();
      const ComplexVector grad_b =
          outer * u.q(j) * (2.0 / u.norm_b[j]) *
          (c_b.conjugate() - t_b * u.beta[j]);
      for (int k = 0; k < dim_b; ++k) {
        (*grad)(b_offset(j) + 2 * k) += grad_b(k).real();
        (*grad)(b_offset(j) + 2 * k + 1) += grad_b(k).imag();
      }
    }
    return value;
  }
};

RealVector pinching_start(const OracleProblem& prob, const ComplexMatrix& rho,
                          Rng& rng) {
  RealVector x(prob.n_params());
  for (int i = 0; i < x.size(); ++i) x(i) = rng.normal();
  const int n = prob.dim();
  for (int idx = 0; idx < std::min(n, prob.terms); ++idx) {
    const int a = idx / prob.dim_b;
    const int b = idx % prob.dim_b;
    for (int k = 0; k < prob.dim_a; ++k) {
      x(prob.a_offset(idx) + 2 * k) = k == a ? 1.0 : 0.0;
      x(prob.a_offset(idx) + 2 * k + 1) = 0.0;
    }
    for (int k = 0; k < prob.dim_b; ++k) {
      x(prob.b_offset(idx) + 2 * k) = k == b ? 1.0 : 0.0;
      x(prob.b_offset(idx) + 2 * k + 1) = 0.0;
    }
    x(prob.w_offset(idx)) = std::log(std::max(rho(idx, idx).real(), 1e-12));
  }
  for (int j = n; j < prob.terms; ++j) x(prob.w_offset(j)) = -25.0;
  return x;
}

RealVector random_start(const OracleProblem& prob, Rng& rng) {
  RealVector x(prob.n_params());
  for (int i = 0; i < x.size(); ++i) x(i) = rng.normal();
  for (int j = 0; j < prob.terms; ++j) x(prob.w_offset(j)) = 0.3 * rng.normal();
  return x;
}

/// Adam descent returning the best value seen; x is left at the best point.
double adam_minimize(const OracleProblem& prob, RealVector& x,
                     double neg_entropy_rho, int iters) {
  RealVector m = RealVector::Zero(x.size());
  RealVector v = RealVector::Zero(x.size());
  RealVector grad(x.size());
  RealVector best_x = x;
  double best = prob.evaluate(x, neg_entropy_rho, nullptr);

  const double lr0 = 0.05;
  const double lr_end = 2e-3;
  for (int t = 1; t <= iters; ++t) {
    const double value = prob.evaluate(x, neg_entropy_rho, &grad);
    if (value < best) {
      best = value;
      best_x = x;
    }
    const double lr = lr0 * std::pow(lr_end / lr0,
                                     static_cast<double>(t) / iters);
    m = 0.9 * m + 0.1 * grad;
    v = 0.999 * v.array() + 0.001 * grad.array().square();
    const double bc1 = 1.0 - std::pow(0.9, t);
    const double bc2 = 1.0 - std::pow(0.999, t);
    x.array() -= lr * (m.array() / bc1) /
                 ((v.array() / bc2).sqrt() + 1e-8);
  }
  const double final_value = prob.evaluate(x, neg_entropy_rho, nullptr);
  if (final_value < best) {
    best = final_value;
    best_x = x;
  }
  x = best_x;
  return best;
}

}  // namespace

SeparableApproximation ree_oracle(const ComplexMatrix& rho, int dim_a,
                                  int dim_b, const ReeOracleOptions& opts) {
  if (dim_a * dim_b != rho.rows())
    throw DimensionMismatchError("state dimension " +
                                 std::to_string(rho.rows()) +
                                 " does not factor as " +
                                 std::to_string(dim_a) + " x " +
                                 std::to_string(dim_b));
  const DensityMatrix checked(rho, dim_a, dim_b);  // validates the input
  const int n = dim_a * dim_b;
  const int terms = opts.term_count > 0 ? opts.term_count : n * n;

  double neg_entropy_rho = 0.0;
  {
    const HermitianEigensystem es = eig_hermitian(rho);
    for (int i = 0; i < n; ++i)
      if (es.eigenvalues(i) > tol.support_cutoff)
        neg_entropy_rho += es.eigenvalues(i) * std::log2(es.eigenvalues(i));
  }

  const OracleProblem prob{rho, dim_a, dim_b, terms};
  Rng root(opts.seed);
  double best_value = std::numeric_limits<double>::infinity();
  RealVector best_x;
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    Rng sub = root.spawn(static_cast<std::uint64_t>(r));
    RealVector x = r == 0 ? pinching_start(prob, rho, sub)
                          : random_start(prob, sub);
    const double value = adam_minimize(prob, x, neg_entropy_rho, opts.iters);
    if (value < best_value) {
      best_value = value;
      best_x = std::move(x);
    }
  }

  const OracleProblem::Unpacked u = prob.unpack(best_x);
  const ComplexMatrix raw = prob.sigma_raw(u);
  ComplexMatrix barriered = (1.0 - kBarrier) * raw;
  barriered.diagonal().array() += kBarrier / n;
  const double value_raw = relative_entropy(rho, raw);
  const double value_barriered = relative_entropy(rho, barriered);

  SeparableApproximation out;
  out.dim_a = dim_a;
  out.dim_b = dim_b;
  if (value_raw <= value_barriered) {
    out.weights = u.q;
    out.states_a = u.alpha;
    out.states_b = u.beta;
    out.value = std::max(0.0, value_raw);
  } else {
    // Keep the barrier term explicit: the maximally mixed state is itself
    // a uniform mixture of computational product states.
    out.weights = RealVector(terms + n);
    out.weights.head(terms) = (1.0 - kBarrier) * u.q;
    out.states_a = u.alpha;
    out.states_b = u.beta;
    for (int idx = 0; idx < n; ++idx) {
      out.weights(terms + idx) = kBarrier / n;
      ComplexVector ea = ComplexVector::Zero(dim_a);
      ComplexVector eb = ComplexVector::Zero(dim_b);
      ea(idx / dim_b) = 1.0;
      eb(idx % dim_b) = 1.0;
      out.states_a.push_back(std::move(ea));
      out.states_b.push_back(std::move(eb));
    }
    out.value = std::max(0.0, value_barriered);
  }
  return out;
}

namespace detail {

int oracle_parameter_count(int dim_a, int dim_b, int terms) {
  return terms * (2 * (dim_a + dim_b) + 1);
}

OracleObjective oracle_objective(const ComplexMatrix& rho, int dim_a,
                                 int dim_b, int terms,
                                 const RealVector& params) {
  if (dim_a * dim_b != rho.rows())
    throw DimensionMismatchError("state dimension " +
                                 std::to_string(rho.rows()) +
                                 " does not factor as " +
                                 std::to_string(dim_a) + " x " +
                                 std::to_string(dim_b));
  const OracleProblem prob{rho, dim_a, dim_b, terms};
  if (params.size() != prob.n_params())
    throw DimensionMismatchError("parameter vector has length " +
                                 std::to_string(params.size()) +
                                 ", expected " +
                                 std::to_string(prob.n_params()));
  double neg_entropy_rho = 0.0;
  const HermitianEigensystem es = eig_hermitian(rho);
  for (int i = 0; i < es.eigenvalues.size(); ++i)
    if (es.eigenvalues(i) > tol.support_cutoff)
      neg_entropy_rho += es.eigenvalues(i) * std::log2(es.eigenvalues(i));
  OracleObjective out;
  out.gradient = RealVector(prob.n_params());
  out.value = prob.evaluate(params, neg_entropy_rho, &out.gradient);
  return out;
}

}  // namespace detail

}  // namespace scent
