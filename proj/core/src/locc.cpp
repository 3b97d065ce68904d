#include "scent/locc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "scent/errors.hpp"
#include "scent/qmath.hpp"
#include "scent/random.hpp"

namespace scent {

namespace {

Complex unit_phase(double angle) {
  return Complex(std::cos(angle), std::sin(angle));
}

/// Post-measurement joint state: Alice's collapsed vector (the ket dual to
/// the outcome-l bra, i.e. entries conj(F(l, j))) times Bob's conditional
/// state. Returned already normalized.
ComplexVector collapsed_joint(const ComplexMatrix& fourier,
                              const ComplexVector& bob, int l) {
  const int d = static_cast<int>(fourier.rows());
  ComplexVector joint(d * d);
  for (int m = 0; m < d; ++m)
    for (int j = 0; j < d; ++j)
      joint(m * d + j) = std::conj(fourier(l, m)) * bob(j);
  return joint / joint.norm();
}

int schmidt_rank(const ComplexVector& joint, int d) {
  const SchmidtDecomposition sd = schmidt_decompose(joint, d, d);
  int rank = 0;
  for (int k = 0; k < sd.coefficients.size(); ++k)
    if (sd.coefficients(k) > 1e-8) ++rank;
  return rank;
}

Transcript make_transcript(int hidden, int alice, int guess,
                           double probability, int rank) {
  Transcript t;
  t.hidden_index = hidden;
  t.alice_outcome = alice;
  t.bob_outcome = guess;
  t.probability = probability;
  t.residual_schmidt_rank = rank;
  t.messages = {{"alice", "outcome " + std::to_string(alice)},
                {"bob", "guess " + std::to_string(guess)}};
  t.success = guess == hidden;
  return t;
}

}  // namespace

DiscriminationBasis::DiscriminationBasis(ComplexMatrix u) : u_(std::move(u)) {
  if (u_.rows() != u_.cols() || u_.rows() < 1)
    throw DimensionMismatchError("basis matrix must be square and nonempty");
  const double dev =
      (u_.adjoint() * u_ - ComplexMatrix::Identity(u_.rows(), u_.cols()))
          .norm();
  if (dev > tol.unitarity)
    throw InvalidStateError("basis matrix is not unitary, deviation " +
                            std::to_string(dev));
}

ComplexVector DiscriminationBasis::state(int i) const {
  if (i < 0 || i >= dim())
    throw IndexOutOfRangeError("state index " + std::to_string(i));
  ComplexVector e = ComplexVector::Zero(dim() * dim());
  for (int j = 0; j < dim(); ++j) e(j * dim() + j) = u_(i, j);
  return e;
}

ComplexMatrix fourier_basis(int d) {
  if (d < 1) throw DimensionMismatchError("dimension must be positive");
  ComplexMatrix f(d, d);
  const double step = 2.0 * std::numbers::pi / d;
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int l = 0; l < d; ++l)
    for (int j = 0; j < d; ++j) f(l, j) = scale * unit_phase(step * j * l);
  return f;
}

std::vector<ComplexVector> conditional_bob_states(
    const DiscriminationBasis& basis, int l) {
  const int d = basis.dim();
  if (l < 0 || l >= d)
    throw IndexOutOfRangeError("outcome index " + std::to_string(l));
  const double step = 2.0 * std::numbers::pi / d;
  std::vector<ComplexVector> states;
  states.reserve(d);
  for (int i = 0; i < d; ++i) {
    ComplexVector b(d);
    for (int j = 0; j < d; ++j) b(j) = basis.u()(i, j) * unit_phase(step * j * l);
    states.push_back(b / b.norm());
  }
  return states;
}

double alice_branch_probability(const DiscriminationBasis& basis, int i,
                                int l) {
  const int d = basis.dim();
  if (i < 0 || i >= d)
    throw IndexOutOfRangeError("state index " + std::to_string(i));
  if (l < 0 || l >= d)
    throw IndexOutOfRangeError("outcome index " + std::to_string(l));
  const ComplexMatrix f = fourier_basis(d);
  double p = 0.0;
  for (int j = 0; j < d; ++j) p += std::norm(f(l, j) * basis.u()(i, j));
  return p;
}

DiscriminationResult discriminate_exhaustive(
    const DiscriminationBasis& basis) {
  const int d = basis.dim();
  const ComplexMatrix f = fourier_basis(d);
  const double prior = 1.0 / d;

  DiscriminationResult out;
  out.transcripts.reserve(static_cast<std::size_t>(d) * d);
  for (int hidden = 0; hidden < d; ++hidden) {
    for (int l = 0; l < d; ++l) {
      ComplexVector unnorm(d);
      for (int j = 0; j < d; ++j) unnorm(j) = f(l, j) * basis.u()(hidden, j);
      const double p_l = unnorm.squaredNorm();
      const ComplexVector bob = unnorm / unnorm.norm();

      const std::vector<ComplexVector> bob_basis =
          conditional_bob_states(basis, l);
      int guess = 0;
      double best = -1.0;
      for (int k = 0; k < d; ++k) {
        const double born = std::norm(bob_basis[k].dot(bob));
        if (born > best) {
          best = born;
          guess = k;
        }
        if (k == hidden) out.success_probability += prior * p_l * born;
      }

      const int rank = schmidt_rank(collapsed_joint(f, bob, l), d);
      out.transcripts.push_back(
          make_transcript(hidden, l, guess, prior * p_l, rank));
    }
  }
  return out;
}

DiscriminationResult discriminate_sampled(const DiscriminationBasis& basis,
                                          std::uint64_t seed, int trials) {
  if (trials < 1) throw Error("trial count must be positive");
  const int d = basis.dim();
  const ComplexMatrix f = fourier_basis(d);
  Rng rng(seed);

  DiscriminationResult out;
  out.transcripts.reserve(static_cast<std::size_t>(trials));
  int successes = 0;
  for (int t = 0; t < trials; ++t) {
    const int hidden = rng.below(d);

    RealVector alice_p(d);
    for (int l = 0; l < d; ++l)
      alice_p(l) = alice_branch_probability(basis, hidden, l);
    double roll = rng.uniform() * alice_p.sum();
    int l = 0;
    while (l + 1 < d && roll >= alice_p(l)) roll -= alice_p(l), ++l;

    ComplexVector unnorm(d);
    for (int j = 0; j < d; ++j) unnorm(j) = f(l, j) * basis.u()(hidden, j);
    const ComplexVector bob = unnorm / unnorm.norm();
    const std::vector<ComplexVector> bob_basis =
        conditional_bob_states(basis, l);
    RealVector born(d);
    for (int k = 0; k < d; ++k) born(k) = std::norm(bob_basis[k].dot(bob));
    roll = rng.uniform() * born.sum();
    int guess = 0;
    while (guess + 1 < d && roll >= born(guess)) roll -= born(guess), ++guess;

    const int rank = schmidt_rank(collapsed_joint(f, bob, l), d);
    out.transcripts.push_back(
        make_transcript(hidden, l, guess, 1.0 / trials, rank));
    if (guess == hidden) ++successes;
  }
  out.success_probability = static_cast<double>(successes) / trials;
  return out;
}

std::string format_transcripts(const std::vector<Transcript>& transcripts) {
  std::string out;
  char buf[64];
  for (std::size_t n = 0; n < transcripts.size(); ++n) {
    const Transcript& t = transcripts[n];
    std::snprintf(buf, sizeof buf, "%.17g", t.probability);
    out += "branch=" + std::to_string(n) +
           " hidden=" + std::to_string(t.hidden_index) +
           " alice=" + std::to_string(t.alice_outcome) +
           " guess=" + std::to_string(t.bob_outcome) + " prob=" + buf +
           " residual_rank=" + std::to_string(t.residual_schmidt_rank) +
           " success=" + (t.success ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace scent
