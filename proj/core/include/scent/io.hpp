// File formats and machine-readable reports.
//
// All documents are UTF-8 JSON. Complex matrices travel as separate "re"
// and "im" row-major grids (arrays of row arrays; a flat row-major array
// is also accepted on input). Every floating-point value is emitted with
// 17 significant digits, so writing and re-reading is lossless and the
// byte stream is deterministic.
//
//   matrix file:  {"dim_rows", "dim_cols", "re", "im"}
//   SC file:      the same plus {"local_dim"} (square coefficient matrix)
//   family file:  {"N", "payload_dim", "u_re", "u_im", "lambda", "theta"}
//
// Non-finite values are emitted as the strings "inf", "-inf", "nan".

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "scent/distill.hpp"
#include "scent/states.hpp"
#include "scent/types.hpp"

namespace scent {

struct LoadedState {
  ComplexMatrix matrix;
  std::optional<int> local_dim;  // set when the file declares an SC state

  bool is_sc_file() const { return local_dim.has_value(); }
};

/// Parses a matrix or SC state document. Throws ParseError with a
/// field-level diagnostic on any malformed content.
LoadedState load_state_file(const std::string& path);

/// Parses a family document. Throws ParseError on malformed content and
/// propagates validation errors from the family constructor.
DistillationFamily load_family_file(const std::string& path);

void save_matrix_file(const std::string& path, const ComplexMatrix& m);
void save_sc_file(const std::string& path, const SchmidtCorrelatedState& sc);
void save_family_file(const std::string& path, const DistillationFamily& f);

using ReportValue = std::variant<std::int64_t, double, bool, std::string,
                                 std::vector<double>,
                                 std::vector<std::vector<double>>>;

/// A computed quantity plus its units tag ("bits", "probability", "norm",
/// "count", ...).
struct ReportEntry {
  ReportValue value;
  std::string units;
};

/// One command's machine-readable output. Field order is preserved, so a
/// report built the same way serializes to identical bytes.
struct Report {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, ReportValue>> inputs;
  std::vector<std::pair<std::string, ReportEntry>> results;
  std::vector<std::pair<std::string, ReportValue>> diagnostics;

  void input(std::string key, ReportValue v);
  void result(std::string key, ReportValue v, std::string units);
  void diagnostic(std::string key, ReportValue v);
};

/// Deterministic single-document serialization of a report.
std::string to_json(const Report& report);

/// One floating-point value with 17 significant digits (non-finite values
/// as quoted strings); shared by every emitter in the library.
std::string format_double(double x);

}  // namespace scent
