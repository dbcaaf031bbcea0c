#include "gatesplit/io.hpp"

#include <bit>
#include <cstdint>
#include <sstream>

namespace gatesplit {

namespace {

using nlohmann::json;

std::vector<int> default_qubit_dims(Eigen::Index size) {
    std::vector<int> dims;
    Eigen::Index s = size;
    while (s > 1 && s % 2 == 0) {
        dims.push_back(2);
        s /= 2;
    }
    if (s != 1 || dims.empty()) {
        std::ostringstream os;
        os << "matrix size " << size << " is not a power of two; \"dims\" is required";
        throw ArgumentError(os.str());
    }
    return dims;
}

}  // namespace

GateFile parse_gate_file(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("matrix") || !doc["matrix"].is_array()) {
        throw ArgumentError("gate file must be an object with a \"matrix\" array");
    }
    const json& rows = doc["matrix"];
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    if (n == 0) {
        throw ArgumentError("matrix must be non-empty");
    }
    CMat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const json& row = rows[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            std::ostringstream os;
            os << "matrix is not square: row " << i + 1 << " has " << row.size() << " entries, expected " << n;
            throw ArgumentError(os.str());
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            const json& entry = row[static_cast<size_t>(j)];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
                throw ArgumentError("matrix entries must be [re, im] number pairs");
            }
            m(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    if (!m.allFinite()) {
        throw ArgumentError("matrix entries must be finite");
    }

    std::vector<int> dims;
    if (doc.contains("dims")) {
        if (!doc["dims"].is_array() || doc["dims"].empty()) {
            throw ArgumentError("\"dims\" must be a non-empty array of integers");
        }
        long long total = 1;
        for (const json& d : doc["dims"]) {
            if (!d.is_number_integer() || d.get<long long>() < 2) {
                throw ArgumentError("\"dims\" entries must be integers >= 2");
            }
            dims.push_back(d.get<int>());
            total *= dims.back();
            if (total > n) break;
        }
        if (total != n) {
            std::ostringstream os;
            os << "matrix size " << n << " != " << total << " (product of dims)";
            throw ArgumentError(os.str());
        }
    } else {
        dims = default_qubit_dims(n);
    }
    return GateFile{std::move(dims), std::move(m)};
}

std::string write_gate_file(const CMat& matrix, const std::vector<int>& dims) {
    json doc;
    doc["dims"] = dims;
    doc["matrix"] = matrix_to_json(matrix);
    return doc.dump();
}

UnitaryGate to_unitary(const GateFile& file, bool validate) {
    TensorSpace space(file.dims);
    if (validate) {
        return UnitaryGate(file.matrix, std::move(space));
    }
    return UnitaryGate::unvalidated(file.matrix, std::move(space));
}

std::string matrix_digest(const GateFile& file) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    auto mix = [&hash](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            hash ^= (v >> (8 * b)) & 0xff;
            hash *= 0x100000001b3ULL;
        }
    };
    for (int d : file.dims) {
        mix(static_cast<std::uint64_t>(d));
    }
    for (Eigen::Index i = 0; i < file.matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < file.matrix.cols(); ++j) {
            mix(std::bit_cast<std::uint64_t>(file.matrix(i, j).real()));
            mix(std::bit_cast<std::uint64_t>(file.matrix(i, j).imag()));
        }
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << hash;
    return os.str();
}

nlohmann::json matrix_to_json(const CMat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json gate_to_json(const UnitaryGate& g) {
    json doc;
    doc["dims"] = g.space().dims();
    doc["matrix"] = matrix_to_json(g.matrix());
    return doc;
}

nlohmann::json to_json(const SeparationResult& r) {
    json doc;
    doc["verdict"] = to_string(r.verdict);
    doc["method"] = to_string(r.method);
    if (!r.factors.empty()) {
        json factors = json::array();
        for (const UnitaryGate& f : r.factors) {
            factors.push_back(gate_to_json(f));
        }
        doc["factors"] = std::move(factors);
        doc["residual"] = r.residual;
    }
    if (r.global_phase) {
        doc["global_phase"] = json::array({r.global_phase->real(), r.global_phase->imag()});
    }
    if (!r.detail.empty()) {
        doc["detail"] = r.detail;
    }
    if (r.violating_cut) {
        doc["violating_cut"] = {{"left", r.violating_cut->left()}, {"right", r.violating_cut->right()}};
    }
    if (!r.schmidt_coefficients.empty()) {
        doc["schmidt_coefficients"] = r.schmidt_coefficients;
    }
    return doc;
}

nlohmann::json to_json(const ApproxSeparationResult& r) {
    json doc;
    json locals = json::array();
    for (const CMat& l : r.family.locals()) {
        locals.push_back(matrix_to_json(l));
    }
    doc["family"] = {{"locals", std::move(locals)}, {"offset", r.family.offset()}};
    json factors = json::array();
    for (const UnitaryGate& f : r.factors) {
        factors.push_back(gate_to_json(f));
    }
    doc["factors"] = std::move(factors);
    doc["global_phase"] = json::array({r.global_phase.real(), r.global_phase.imag()});
    doc["generator_gap"] = {{"operator", r.generator_gap_op}, {"frobenius", r.generator_gap_fro}};
    doc["bound"] = r.bound;
    doc["measured"] = {{"phase_free", r.measured_phase_free}, {"phase_optimized", r.measured}};
    if (r.certificate) {
        const ApproxCertificate& c = *r.certificate;
        doc["certificate"] = {
            {"epsilon", c.epsilon},
            {"t", c.t},
            {"threshold", c.threshold},
            {"residuals", c.residuals},
            {"pass", c.pass},
            {"eigenvalues", std::vector<double>(c.eigenvalues.data(), c.eigenvalues.data() + c.eigenvalues.size())},
            {"eigenbasis", matrix_to_json(c.basis)},
        };
    }
    return doc;
}

}  // namespace gatesplit
