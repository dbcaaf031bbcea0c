#include "gatesplit/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace gatesplit {

namespace {

using nlohmann::json;

class Stopwatch {
  public:
    double elapsed_ms() const {
        const auto now = std::chrono::steady_clock::now();
        return std::chrono::duration<double, std::milli>(now - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json report_skeleton(const char* command, const GateFile& file, const CommandOptions& opts) {
    json report;
    report["command"] = command;
    report["input"] = opts.input_name;
    report["digest"] = matrix_digest(file);
    report["dims"] = file.dims;
    report["tolerances"] = {
        {"tol", opts.tol},
        {"unitarity", kUnitaryTol},
        {"validate", opts.validate},
    };
    return report;
}

const char* norm_name(NormKind kind) {
    switch (kind) {
        case NormKind::Operator: return "op";
        case NormKind::Frobenius: return "fro";
        case NormKind::Trace: return "trace";
    }
    return "?";
}

}  // namespace

CommandOutcome run_check(const std::string& gate_text, const CommandOptions& opts) {
    const Stopwatch timer;
    const GateFile file = parse_gate_file(gate_text);
    const UnitaryGate gate = to_unitary(file, opts.validate);

    json report = report_skeleton("check", file, opts);
    const SeparationResult oracle = separate_unitary(gate, opts.tol);
    json result = to_json(oracle);
    result.erase("factors");  // `separate` carries the factors; keep check lean
    if (gate.space().all_qubits()) {
        const auto index = qubit_structure_check(generator_of(gate));
        result["structure_check"] = {
            {"applicable", true},
            {"single_site_index", index ? json(*index) : json(nullptr)},
        };
    } else {
        result["structure_check"] = {{"applicable", false}};
    }
    report["result"] = std::move(result);
    report["wall_time_ms"] = timer.elapsed_ms();
    const int code = oracle.verdict == Verdict::Separable ? kExitOk : kExitNotSeparable;
    return CommandOutcome{std::move(report), code};
}

CommandOutcome run_separate(const std::string& gate_text, const CommandOptions& opts) {
    const Stopwatch timer;
    const GateFile file = parse_gate_file(gate_text);
    const UnitaryGate gate = to_unitary(file, opts.validate);

    json report = report_skeleton("separate", file, opts);
    const SeparationResult result = separate_unitary(gate, opts.tol);
    report["result"] = to_json(result);
    report["wall_time_ms"] = timer.elapsed_ms();
    const int code = result.verdict == Verdict::Separable ? kExitOk : kExitNotSeparable;
    return CommandOutcome{std::move(report), code};
}

CommandOutcome run_approx(const std::string& gate_text, const CommandOptions& opts) {
    const Stopwatch timer;
    if (opts.epsilon && !(*opts.epsilon > 0.0)) {
        throw ArgumentError("approx: epsilon must be positive");
    }
    const GateFile file = parse_gate_file(gate_text);
    const UnitaryGate gate = to_unitary(file, opts.validate);

    json report = report_skeleton("approx", file, opts);
    report["tolerances"]["t"] = opts.t;
    report["tolerances"]["norm"] = norm_name(opts.norm);

    const ApproxSeparationResult result = approx_separate(gate, opts.t, opts.epsilon);
    json payload = to_json(result);
    if (opts.norm != NormKind::Operator) {
        payload["bound_in_norm"] = separation_bound(result.generator, result.family, opts.t, opts.norm);
    }
    report["result"] = std::move(payload);
    report["wall_time_ms"] = timer.elapsed_ms();

    int code = kExitOk;
    if (opts.epsilon && !(result.measured < *opts.epsilon)) {
        code = kExitEpsilonNotMet;
    }
    return CommandOutcome{std::move(report), code};
}

std::string corpus_gate_text(const std::string& name, std::optional<int> qubits,
                             std::optional<std::uint64_t> seed) {
    if (name == "cnot") return write_gate_file(gate_cnot(), {2, 2});
    if (name == "cz") return write_gate_file(gate_cz(), {2, 2});
    if (name == "swap") return write_gate_file(gate_swap(), {2, 2});
    if (name == "iswap") return write_gate_file(gate_iswap(), {2, 2});
    if (name == "toffoli") return write_gate_file(gate_toffoli(), {2, 2, 2});
    if (name == "random-product" || name == "random-unitary") {
        if (!qubits || !seed) {
            throw ArgumentError("gates: " + name + " requires a qubit count and a seed");
        }
        if (*qubits < 1 || (1LL << *qubits) > max_total_dim()) {
            throw ArgumentError("gates: qubit count out of range");
        }
        const std::vector<int> dims(static_cast<size_t>(*qubits), 2);
        const CMat m = name == "random-product" ? random_product_gate(*qubits, *seed)
                                                : random_unitary_gate(*qubits, *seed);
        return write_gate_file(m, dims);
    }
    throw ArgumentError("gates: unknown gate name \"" + name + "\"");
}

namespace {

std::string read_input(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw ArgumentError("cannot read input file: " + path);
    }
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact and approximate tensor-product separation of unitary gates"};
    app.require_subcommand(1);

    CommandOptions opts;
    std::string input;
    std::string norm_flag = "op";

    auto add_input_flags = [&](CLI::App* cmd) {
        cmd->add_option("input", input, "gate file path, or - for stdin")->required();
        cmd->add_option("--tol", opts.tol, "relative tolerance for rank/scalar tests")
            ->capture_default_str();
        cmd->add_flag("!--no-validate", opts.validate, "skip the unitarity check on input");
    };

    CLI::App* check = app.add_subcommand("check", "decide separability (exit 0 separable, 3 not)");
    add_input_flags(check);

    CLI::App* separate = app.add_subcommand("separate", "decide separability and extract local factors");
    add_input_flags(separate);

    CLI::App* approx = app.add_subcommand("approx", "approximate separation with certified bounds");
    add_input_flags(approx);
    double epsilon = 0.0;
    CLI::Option* eps_opt = approx->add_option("-e,--epsilon", epsilon, "target distance (exit 4 when missed)");
    approx->add_option("--t", opts.t, "time parameter with U = exp(itH)")->capture_default_str();
    approx->add_option("--norm", norm_flag, "norm for the reported bound")
        ->check(CLI::IsMember({"op", "fro", "trace"}))
        ->capture_default_str();

    CLI::App* gates = app.add_subcommand("gates", "emit a built-in or seeded random gate file");
    std::string gate_name;
    int gate_qubits = 0;
    std::uint64_t gate_seed = 0;
    gates->add_option("name", gate_name,
                      "cnot|cz|swap|iswap|toffoli|random-product|random-unitary")
        ->required();
    CLI::Option* qubits_opt = gates->add_option("qubits", gate_qubits, "qubit count (random gates)");
    CLI::Option* seed_opt = gates->add_option("seed", gate_seed, "64-bit seed (random gates)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    try {
        if (gates->parsed()) {
            std::optional<int> q;
            std::optional<std::uint64_t> s;
            if (qubits_opt->count() > 0) q = gate_qubits;
            if (seed_opt->count() > 0) s = gate_seed;
            out << corpus_gate_text(gate_name, q, s) << "\n";
            return kExitOk;
        }

        opts.input_name = input;
        if (eps_opt->count() > 0) opts.epsilon = epsilon;
        if (norm_flag == "fro") opts.norm = NormKind::Frobenius;
        if (norm_flag == "trace") opts.norm = NormKind::Trace;

        const std::string text = read_input(input, in);
        CommandOutcome outcome;
        if (check->parsed()) {
            outcome = run_check(text, opts);
        } else if (separate->parsed()) {
            outcome = run_separate(text, opts);
        } else {
            outcome = run_approx(text, opts);
        }
        out << outcome.report.dump(2) << "\n";
        return outcome.exit_code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInputError;
    }
}

}  // namespace gatesplit
