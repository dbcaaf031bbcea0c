/** \file
 * Gate-file serialization and report payloads.
 *
 * Gate file: UTF-8 JSON {"dims":[...], "matrix":[[[re,im],...],...]} with a
 * row-major square matrix. When "dims" is omitted the size must be a power
 * of two and an all-qubit factorization is assumed.
 */

#pragma once

#include "gatesplit/approx.hpp"
#include "gatesplit/exact.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace gatesplit {

struct GateFile {
    std::vector<int> dims;
    CMat matrix;
};

/// Parses and validates a gate file (shape, finiteness, dims product); does
/// not check unitarity — see to_unitary.
GateFile parse_gate_file(const std::string& text);

std::string write_gate_file(const CMat& matrix, const std::vector<int>& dims);

UnitaryGate to_unitary(const GateFile& file, bool validate = true);

/// FNV-1a digest over dims and the raw entry bytes; stable across runs.
std::string matrix_digest(const GateFile& file);

nlohmann::json matrix_to_json(const CMat& m);
nlohmann::json gate_to_json(const UnitaryGate& g);
nlohmann::json to_json(const SeparationResult& r);
nlohmann::json to_json(const ApproxSeparationResult& r);

}  // namespace gatesplit
