#include "scent/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace scent {

namespace {

using nlohmann::json;

json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(path + ": document must be an object");
  return doc;
}

const json& require_field(const json& doc, const std::string& name,
                          const std::string& path) {
  auto it = doc.find(name);
  if (it == doc.end())
    throw ParseError(path + ": missing field \"" + name + "\"");
  return *it;
}

int require_positive_int(const json& doc, const std::string& name,
                         const std::string& path) {
  const json& v = require_field(doc, name, path);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
    throw ParseError(path + ": field \"" + name +
                     "\" must be a positive integer");
  return static_cast<int>(v.get<std::int64_t>());
}

/// A grid is an array of row arrays, or a flat row-major array of numbers.
RealMatrix parse_grid(const json& v, int rows, int cols,
                      const std::string& name, const std::string& path) {
  if (!v.is_array())
    throw ParseError(path + ": field \"" + name + "\" must be an array");
  RealMatrix out(rows, cols);
  const bool nested = !v.empty() && v.front().is_array();
  if (nested) {
    if (static_cast<int>(v.size()) != rows)
      throw ParseError(path + ": field \"" + name + "\" has " +
                       std::to_string(v.size()) + " rows, expected " +
                       std::to_string(rows));
    for (int r = 0; r < rows; ++r) {
      const json& row = v[r];
      if (!row.is_array() || static_cast<int>(row.size()) != cols)
        throw ParseError(path + ": field \"" + name + "\" row " +
                         std::to_string(r) + " must have " +
                         std::to_string(cols) + " entries");
      for (int c = 0; c < cols; ++c) {
        if (!row[c].is_number())
          throw ParseError(path + ": field \"" + name + "\" entry (" +
                           std::to_string(r) + "," + std::to_string(c) +
                           ") must be a number");
        out(r, c) = row[c].get<double>();
      }
    }
    return out;
  }
  if (static_cast<int>(v.size()) != rows * cols)
    throw ParseError(path + ": field \"" + name + "\" has " +
                     std::to_string(v.size()) + " entries, expected " +
                     std::to_string(rows * cols));
  for (int idx = 0; idx < rows * cols; ++idx) {
    if (!v[idx].is_number())
      throw ParseError(path + ": field \"" + name + "\" entry " +
                       std::to_string(idx) + " must be a number");
    out(idx / cols, idx % cols) = v[idx].get<double>();
  }
  return out;
}

ComplexMatrix parse_complex_grid(const json& doc, const std::string& re_name,
                                 const std::string& im_name, int rows,
                                 int cols, const std::string& path) {
  const RealMatrix re =
      parse_grid(require_field(doc, re_name, path), rows, cols, re_name, path);
  const RealMatrix im =
      parse_grid(require_field(doc, im_name, path), rows, cols, im_name, path);
  ComplexMatrix out(rows, cols);
  out.real() = re;
  out.imag() = im;
  return out;
}

RealVector parse_real_array(const json& v, int n, const std::string& name,
                            const std::string& path) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    throw ParseError(path + ": field \"" + name + "\" must be an array of " +
                     std::to_string(n) + " numbers");
  RealVector out(n);
  for (int k = 0; k < n; ++k) {
    if (!v[k].is_number())
      throw ParseError(path + ": field \"" + name + "\" entry " +
                       std::to_string(k) + " must be a number");
    out(k) = v[k].get<double>();
  }
  return out;
}

// ---- deterministic emission --------------------------------------------

void emit_grid(std::string& out, const RealMatrix& m) {
  out += '[';
  for (int r = 0; r < m.rows(); ++r) {
    if (r) out += ',';
    out += '[';
    for (int c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += format_double(m(r, c));
    }
    out += ']';
  }
  out += ']';
}

void emit_string(std::string& out, const std::string& s) {
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void emit_value(std::string& out, const ReportValue& v) {
  switch (v.index()) {
    case 0:
      out += std::to_string(std::get<std::int64_t>(v));
      break;
    case 1:
      out += format_double(std::get<double>(v));
      break;
    case 2:
      out += std::get<bool>(v) ? "true" : "false";
      break;
    case 3:
      emit_string(out, std::get<std::string>(v));
      break;
    case 4: {
      const auto& vec = std::get<std::vector<double>>(v);
      out += '[';
      for (std::size_t k = 0; k < vec.size(); ++k) {
        if (k) out += ',';
        out += format_double(vec[k]);
      }
      out += ']';
      break;
    }
    case 5: {
      const auto& grid = std::get<std::vector<std::vector<double>>>(v);
      out += '[';
      for (std::size_t r = 0; r < grid.size(); ++r) {
        if (r) out += ',';
        out += '[';
        for (std::size_t c = 0; c < grid[r].size(); ++c) {
          if (c) out += ',';
          out += format_double(grid[r][c]);
        }
        out += ']';
      }
      out += ']';
      break;
    }
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << content;
}

std::string matrix_document(const ComplexMatrix& m,
                            std::optional<int> local_dim) {
  std::string out = "{\"dim_rows\":" + std::to_string(m.rows()) +
                    ",\"dim_cols\":" + std::to_string(m.cols());
  if (local_dim) out += ",\"local_dim\":" + std::to_string(*local_dim);
  out += ",\"re\":";
  emit_grid(out, m.real());
  out += ",\"im\":";
  emit_grid(out, m.imag());
  out += "}\n";
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

LoadedState load_state_file(const std::string& path) {
  const json doc = read_document(path);
  const int rows = require_positive_int(doc, "dim_rows", path);
  const int cols = require_positive_int(doc, "dim_cols", path);

  LoadedState out;
  out.matrix = parse_complex_grid(doc, "re", "im", rows, cols, path);
  if (doc.contains("local_dim")) {
    const int d = require_positive_int(doc, "local_dim", path);
    if (rows != d || cols != d)
      throw ParseError(path + ": field \"local_dim\" is " + std::to_string(d) +
                       " but the grid is " + std::to_string(rows) + " x " +
                       std::to_string(cols));
    out.local_dim = d;
  }
  return out;
}

DistillationFamily load_family_file(const std::string& path) {
  const json doc = read_document(path);
  const int n = require_positive_int(doc, "N", path);
  const int d = require_positive_int(doc, "payload_dim", path);
  const ComplexMatrix u = parse_complex_grid(doc, "u_re", "u_im", n, n, path);
  const RealVector lambda =
      parse_real_array(require_field(doc, "lambda", path), d, "lambda", path);
  const RealMatrix theta =
      parse_grid(require_field(doc, "theta", path), n, d, "theta", path);
  return DistillationFamily(DiscriminationBasis(u), lambda, theta);
}

void save_matrix_file(const std::string& path, const ComplexMatrix& m) {
  write_file(path, matrix_document(m, std::nullopt));
}

void save_sc_file(const std::string& path, const SchmidtCorrelatedState& sc) {
  write_file(path, matrix_document(sc.coeffs(), sc.local_dim()));
}

void save_family_file(const std::string& path, const DistillationFamily& f) {
  std::string out = "{\"N\":" + std::to_string(f.count()) +
                    ",\"payload_dim\":" + std::to_string(f.payload_dim());
  out += ",\"u_re\":";
  emit_grid(out, f.basis().u().real());
  out += ",\"u_im\":";
  emit_grid(out, f.basis().u().imag());
  out += ",\"lambda\":[";
  for (int k = 0; k < f.payload_dim(); ++k) {
    if (k) out += ',';
    out += format_double(f.payload_coeffs()(k));
  }
  out += "],\"theta\":";
  emit_grid(out, f.payload_phases());
  out += "}\n";
  write_file(path, out);
}

void Report::input(std::string key, ReportValue v) {
  inputs.emplace_back(std::move(key), std::move(v));
}

void Report::result(std::string key, ReportValue v, std::string units) {
  results.emplace_back(std::move(key),
                       ReportEntry{std::move(v), std::move(units)});
}

void Report::diagnostic(std::string key, ReportValue v) {
  diagnostics.emplace_back(std::move(key), std::move(v));
}

std::string to_json(const Report& report) {
  std::string out = "{\"command\":";
  emit_string(out, report.command);
  out += ",\"seed\":" + std::to_string(report.seed);
  out += ",\"inputs\":{";
  for (std::size_t k = 0; k < report.inputs.size(); ++k) {
    if (k) out += ',';
    emit_string(out, report.inputs[k].first);
    out += ':';
    emit_value(out, report.inputs[k].second);
  }
  out += "},\"results\":{";
  for (std::size_t k = 0; k < report.results.size(); ++k) {
    if (k) out += ',';
    emit_string(out, report.results[k].first);
    out += ":{\"value\":";
    emit_value(out, report.results[k].second.value);
    out += ",\"units\":";
    emit_string(out, report.results[k].second.units);
    out += '}';
  }
  out += "},\"diagnostics\":{";
  for (std::size_t k = 0; k < report.diagnostics.size(); ++k) {
    if (k) out += ',';
    emit_string(out, report.diagnostics[k].first);
    out += ':';
    emit_value(out, report.diagnostics[k].second);
  }
  out += "}}\n";
  return out;
}

}  // namespace scent
