// Shared matrix aliases and the central tolerance record.

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace scent {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// All numeric tolerances used across the library. Logarithms are base 2
/// everywhere; entropies and relative entropies are reported in bits.
struct Tolerances {
  double hermiticity = 1e-10;       // ||M - M^dag||_F for Hermiticity checks
  double trace_one = 1e-8;          // |tr rho - 1|
  double eigenvalue_floor = -1e-8;  // smallest admissible state eigenvalue
  double support_cutoff = 1e-12;    // eigenvalues at or below count as zero
  double support_leak = 1e-9;       // rho-weight allowed outside sigma support
  double unit_norm = 1e-10;         // | ||psi|| - 1 |
  double unitarity = 1e-10;         // ||U^dag U - I||_F
  double sc_off_subspace = 1e-9;    // weight outside span{|mm>} for detection
  double sc_positivity_slack = 1e-10;  // |a_mn| <= sqrt(a_mm a_nn) + slack
  double diagonal_match = 1e-9;     // shared-diagonal check for mixtures
  double protocol_perfect = 1e-12;  // allowed shortfall from certain success
  double bounds_match = 1e-9;       // distillation lower vs upper bound
};

inline constexpr Tolerances tol{};

inline constexpr double kLn2 = 0.69314718055994530942;

/// x log2 x with the 0 log 0 := 0 convention; values at or below the
/// support cutoff contribute nothing.
inline double xlog2x(double x) {
  return x > tol.support_cutoff ? x * std::log2(x) : 0.0;
}

}  // namespace scent
