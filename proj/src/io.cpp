#include "etf/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>

#include "etf/errors.hpp"

namespace etf {

namespace {

// -0 prints as "0" so that a dumped report reparses to the same bytes.
std::string format_double(double d) {
  if (d == 0.0) return "0";
  if (!std::isfinite(d)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  return buf;
}

void append_escaped(const std::string& s, std::string& out) {
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

bool all_scalar(const Json& arr) {
  for (const auto& el : arr)
    if (!is_scalar(el)) return false;
  return true;
}

void append_indent(std::string& out, int indent) {
  out.append(static_cast<size_t>(indent), ' ');
}

// Objects iterate in key order, so the output is canonical. Arrays of
// scalars stay on one line; nested structures get two-space indentation.
void dump_value(const Json& j, std::string& out, int indent) {
  switch (j.type()) {
    case Json::value_t::null:
      out += "null";
      break;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    case Json::value_t::string:
      append_escaped(j.get<std::string>(), out);
      break;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      if (all_scalar(j)) {
        out += '[';
        bool first = true;
        for (const auto& el : j) {
          if (!first) out += ", ";
          first = false;
          dump_value(el, out, indent);
        }
        out += ']';
        break;
      }
      out += "[\n";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ",\n";
        first = false;
        append_indent(out, indent + 2);
        dump_value(el, out, indent + 2);
      }
      out += '\n';
      append_indent(out, indent);
      out += ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        append_indent(out, indent + 2);
        append_escaped(it.key(), out);
        out += ": ";
        dump_value(it.value(), out, indent + 2);
      }
      out += '\n';
      append_indent(out, indent);
      out += '}';
      break;
    }
    default:
      out += "null";
  }
}

const Json& require_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int require_int(const Json& j, const char* key, long long lo, long long hi) {
  const Json& v = require_field(j, key);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw ParseError(std::string("field '") + key + "' must be an integer");
  const long long x = v.get<long long>();
  if (x < lo || x > hi)
    throw ParseError(std::string("field '") + key + "' out of range [" +
                     std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x);
}

Complex parse_cell(const Json& cell, int i, int j) {
  const std::string at = " at entry (" + std::to_string(i) + ", " + std::to_string(j) + ")";
  if (!cell.is_array() || cell.size() != 2)
    throw ParseError("expected a [re, im] pair" + at);
  if (!cell[0].is_number() || !cell[1].is_number())
    throw ParseError("expected numeric [re, im] pair" + at);
  return Complex(cell[0].get<double>(), cell[1].get<double>());
}

Json cell_json(const Complex& z) {
  Json cell = Json::array();
  cell.push_back(z.real());
  cell.push_back(z.imag());
  return cell;
}

Json parse_root(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  if (!j.is_object()) throw ParseError("top-level value must be an object");
  return j;
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_value(j, out, 0);
  return out;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw BadConfig("cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out.good()) throw BadConfig("failed writing '" + path + "'");
}

Matrix parse_matrix_json(const std::string& text) {
  const Json j = parse_root(text);
  const Json& format = require_field(j, "format");
  if (!format.is_string()) throw ParseError("field 'format' must be a string");
  const int n = require_int(j, "n", 1, 64);
  const std::string kind = format.get<std::string>();

  if (kind == "dense") {
    const Json& entries = require_field(j, "entries");
    if (!entries.is_array() || static_cast<int>(entries.size()) != n)
      throw ParseError("'entries' must be an array of " + std::to_string(n) + " rows");
    Matrix M(n, n);
    for (int i = 0; i < n; ++i) {
      const Json& row = entries[i];
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw ParseError("row " + std::to_string(i) + " must have " + std::to_string(n) +
                         " entries");
      for (int c = 0; c < n; ++c) M(i, c) = parse_cell(row[c], i, c);
    }
    return M;
  }

  if (kind == "rou") {
    const int order = require_int(j, "order", 1, 1000000);
    const Json& exponents = require_field(j, "exponents");
    if (!exponents.is_array() || static_cast<int>(exponents.size()) != n)
      throw ParseError("'exponents' must be an array of " + std::to_string(n) + " rows");
    RootOfUnityGrid grid;
    grid.n = n;
    grid.order = order;
    grid.exponents.assign(static_cast<size_t>(n),
                          std::vector<std::optional<int>>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) {
      const Json& row = exponents[i];
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw ParseError("row " + std::to_string(i) + " must have " + std::to_string(n) +
                         " entries");
      for (int c = 0; c < n; ++c) {
        const Json& cell = row[c];
        const std::string at =
            " at entry (" + std::to_string(i) + ", " + std::to_string(c) + ")";
        if (i == c) {
          if (!cell.is_null()) throw ParseError("diagonal entries must be null" + at);
          continue;
        }
        if (cell.is_null()) throw ParseError("only diagonal entries may be null" + at);
        if (!cell.is_number_integer() && !cell.is_number_unsigned())
          throw ParseError("exponent must be an integer" + at);
        grid.exponents[static_cast<size_t>(i)][static_cast<size_t>(c)] = cell.get<int>();
      }
    }
    return matrix_from_grid(grid);
  }

  throw ParseError("unknown format '" + kind + "'");
}

Matrix read_matrix_file(const std::string& path) { return parse_matrix_json(read_file(path)); }

std::string matrix_file_dense(const Matrix& Q) {
  Json j;
  j["format"] = "dense";
  j["n"] = static_cast<int>(Q.rows());
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < Q.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < Q.cols(); ++c) row.push_back(cell_json(Q(i, c)));
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return dump_json(j) + "\n";
}

std::string matrix_file_rou(const RootOfUnityGrid& grid) {
  Json j;
  j["format"] = "rou";
  j["n"] = grid.n;
  j["order"] = grid.order;
  Json exponents = Json::array();
  for (int i = 0; i < grid.n; ++i) {
    Json row = Json::array();
    for (int c = 0; c < grid.n; ++c) {
      const std::optional<int>& e = grid.exponents[static_cast<size_t>(i)][static_cast<size_t>(c)];
      if (e)
        row.push_back(*e);
      else
        row.push_back(nullptr);
    }
    exponents.push_back(std::move(row));
  }
  j["exponents"] = std::move(exponents);
  return dump_json(j) + "\n";
}

AnalysisOperator parse_frame_json(const std::string& text) {
  const Json j = parse_root(text);
  const Json& format = require_field(j, "format");
  if (!format.is_string() || format.get<std::string>() != "frame")
    throw ParseError("field 'format' must be \"frame\"");
  const int n = require_int(j, "n", 1, 64);
  const int k = require_int(j, "k", 1, 64);
  const Json& entries = require_field(j, "entries");
  if (!entries.is_array() || static_cast<int>(entries.size()) != n)
    throw ParseError("'entries' must be an array of " + std::to_string(n) + " rows");
  Matrix M(n, k);
  for (int i = 0; i < n; ++i) {
    const Json& row = entries[i];
    if (!row.is_array() || static_cast<int>(row.size()) != k)
      throw ParseError("row " + std::to_string(i) + " must have " + std::to_string(k) +
                       " entries");
    for (int c = 0; c < k; ++c) M(i, c) = parse_cell(row[c], i, c);
  }
  return AnalysisOperator::validate(std::move(M));
}

AnalysisOperator read_frame_file(const std::string& path) {
  return parse_frame_json(read_file(path));
}

std::string frame_file(const AnalysisOperator& V) {
  Json j;
  j["format"] = "frame";
  j["n"] = V.n;
  j["k"] = V.k;
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < V.entries.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < V.entries.cols(); ++c) row.push_back(cell_json(V.entries(i, c)));
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return dump_json(j) + "\n";
}

Json to_json(const EtfParameters& p) {
  Json j;
  j["n"] = p.n;
  j["k"] = p.k;
  j["mu"] = p.mu;
  j["lambda1"] = p.lambda1;
  j["lambda2"] = p.lambda2;
  j["c"] = p.c;
  return j;
}

Json to_json(const ErasureReport& r) {
  Json j;
  j["m"] = r.m;
  j["e_max"] = r.e_max;
  j["e_min"] = r.e_min;
  j["argmax_subset"] = r.argmax_subset;
  j["argmin_subset"] = r.argmin_subset;
  j["bound"] = r.bound ? Json(*r.bound) : Json(nullptr);
  j["saturated"] = r.saturated;
  j["uniform"] = r.uniform;
  return j;
}

Json to_json(const SimulationResult& r) {
  Json j;
  j["empirical_max_error"] = r.empirical_max_error;
  j["empirical_mean_error"] = r.empirical_mean_error;
  j["analytic_e_max"] = r.analytic_e_max;
  j["trials_run"] = r.trials_run;
  j["worst_pattern"] = r.worst_pattern;
  return j;
}

Json to_json(const EtfVerification& v) {
  Json j;
  j["seidel_valid"] = true;
  j["is_etf"] = v.is_etf;
  j["params"] = v.params ? to_json(*v.params) : Json(nullptr);
  j["residual"] = v.residual;
  return j;
}

Json make_report(const std::string& command, const std::string& input_digest, Json payload) {
  Json j;
  j["command"] = command;
  j["input_digest"] = input_digest;
  j["payload"] = std::move(payload);
  j["tool_version"] = kToolVersion;
  return j;
}

}  // namespace etf
