#include "scent/random.hpp"

#include <cmath>
#include <numbers>

namespace scent {

std::uint64_t Rng::next_u64() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; reject u1 == 0 so the log stays finite.
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

Complex Rng::normal_complex() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

int Rng::below(int n) {
  return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
}

Rng Rng::spawn(std::uint64_t index) const {
  // Mix the sub-stream index into a fresh state; the parent is untouched.
  Rng sub(state_ ^ (0xa0761d6478bd642full + index * 0xe7037ed1a0b428dbull));
  sub.next_u64();
  return sub;
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = rng.normal_complex();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge: make each R diagonal entry positive real.
  for (int c = 0; c < dim; ++c) {
    const Complex d = rmat(c, c);
    const double a = std::abs(d);
    if (a > 0.0) q.col(c) *= d / a;
  }
  return q;
}

ComplexMatrix random_density_matrix(int dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = rng.normal_complex();
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Symmetrize away the last rounding bits.
  return 0.5 * (rho + rho.adjoint().eval());
}

ComplexVector random_pure_state(int dim, Rng& rng) {
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.normal_complex();
  return v / v.norm();
}

RealVector random_simplex(int dim, Rng& rng) {
  RealVector p(dim);
  for (int i = 0; i < dim; ++i) {
    const double x = rng.normal();
    p(i) = x * x;
  }
  return p / p.sum();
}

}  // namespace scent
