#pragma once

#include <string>

#include "json.hpp"

#include "etf/channel.hpp"
#include "etf/erasure.hpp"
#include "etf/etf.hpp"
#include "etf/seidel.hpp"
#include "etf/types.hpp"

namespace etf {

using Json = nlohmann::json;

// Deterministic text form: sorted keys, two-space indent, floating-point
// values printed with 17 significant digits so doubles round-trip exactly.
std::string dump_json(const Json& j);

// 64-bit FNV-1a, 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

std::string read_file(const std::string& path);  // ParseError when unreadable
void write_file(const std::string& path, const std::string& content);

// Matrix files:
//   {"n":N, "format":"dense", "entries":[[[re,im],...],...]}   diagonal [0,0]
//   {"n":N, "format":"rou", "order":R, "exponents":[[e|null,...],...]}
//     entry (i,j) = exp(2*pi*i*e/order); null only on the diagonal.
// Structural problems raise ParseError; entry-level violations surface later
// through SeidelMatrix::validate.
Matrix parse_matrix_json(const std::string& text);
Matrix read_matrix_file(const std::string& path);
std::string matrix_file_dense(const Matrix& Q);
std::string matrix_file_rou(const RootOfUnityGrid& grid);

// Frame files: {"format":"frame", "n":N, "k":K, "entries":[[[re,im] x K] x N]},
// validated against the analysis-operator invariants on read.
AnalysisOperator parse_frame_json(const std::string& text);
AnalysisOperator read_frame_file(const std::string& path);
std::string frame_file(const AnalysisOperator& V);

Json to_json(const EtfParameters& p);
Json to_json(const ErasureReport& r);
Json to_json(const SimulationResult& r);
Json to_json(const EtfVerification& v);

// Envelope: {command, input_digest, payload, tool_version}.
Json make_report(const std::string& command, const std::string& input_digest, Json payload);

}  // namespace etf
