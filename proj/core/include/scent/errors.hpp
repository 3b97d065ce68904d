#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace scent {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input matrix failed the Hermiticity check; carries ||M - M^dag||_F.
struct NonHermitianError : Error {
  explicit NonHermitianError(double deviation_norm)
      : Error("matrix is not Hermitian, deviation norm " +
              std::to_string(deviation_norm)),
        deviation(deviation_norm) {}
  double deviation;
};

struct InvalidStateError : Error {
  using Error::Error;
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

struct BadFactorizationError : Error {
  using Error::Error;
};

struct NotNormalizedError : Error {
  using Error::Error;
};

struct IndexOutOfRangeError : Error {
  using Error::Error;
};

/// Correlation matrix requested for a state with (numerically) zero
/// diagonal entries; carries the offending indices.
struct ZeroDiagonalError : Error {
  explicit ZeroDiagonalError(std::vector<int> bad_indices)
      : Error("zero diagonal entries block the correlation matrix"),
        indices(std::move(bad_indices)) {}
  std::vector<int> indices;
};

struct DiagonalMismatchError : Error {
  using Error::Error;
};

struct ProtocolImperfectError : Error {
  using Error::Error;
};

/// Distillation bounds disagreed beyond tolerance; carries both values.
struct BoundsGapError : Error {
  BoundsGapError(double lower_bits, double upper_bits)
      : Error("distillation bounds disagree: lower " +
              std::to_string(lower_bits) + ", upper " +
              std::to_string(upper_bits)),
        lower(lower_bits),
        upper(upper_bits) {}
  double lower;
  double upper;
};

/// A state expected to be Schmidt correlated carries weight outside
/// the span of the |mm> basis vectors.
struct NotSchmidtCorrelatedError : Error {
  using Error::Error;
};

/// The two requested Bell states do not share a Schmidt basis.
struct NotSchmidtCorrelatedPairError : Error {
  using Error::Error;
};

/// Malformed input document (file-level diagnostics in the message).
struct ParseError : Error {
  using Error::Error;
};

}  // namespace scent
