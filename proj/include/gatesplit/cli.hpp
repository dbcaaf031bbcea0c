/** \file
 * Command implementations behind the gatesplit binary. Everything is
 * stream-based so tests can drive the full dispatch in-process.
 *
 * Exit codes: 0 separable / within epsilon, 2 input error, 3 not separable,
 * 4 epsilon not met.
 */

#pragma once

#include "gatesplit/io.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gatesplit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNotSeparable = 3;
inline constexpr int kExitEpsilonNotMet = 4;

struct CommandOptions {
    std::string input_name;  // echoed into the report
    double tol = kSchmidtTol;
    bool validate = true;
    double t = 1.0;
    std::optional<double> epsilon;
    NormKind norm = NormKind::Operator;
};

struct CommandOutcome {
    nlohmann::json report;
    int exit_code = kExitOk;
};

/// Schmidt-oracle decision; on all-qubit spaces also reports the
/// generator structure check.
CommandOutcome run_check(const std::string& gate_text, const CommandOptions& opts);

/// Full factor extraction (factors, global phase, residual in the report).
CommandOutcome run_separate(const std::string& gate_text, const CommandOptions& opts);

/// Approximate separation report; exit 4 when an epsilon is given and the
/// measured distance does not beat it.
CommandOutcome run_approx(const std::string& gate_text, const CommandOptions& opts);

/// Gate-file text for a corpus gate ("cnot", "cz", "swap", "iswap",
/// "toffoli") or a seeded random draw ("random-product", "random-unitary").
std::string corpus_gate_text(const std::string& name, std::optional<int> qubits,
                             std::optional<std::uint64_t> seed);

/// Full argv-level dispatch used by the binary; returns the process exit
/// code. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gatesplit
