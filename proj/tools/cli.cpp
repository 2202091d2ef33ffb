#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fsa/cohomology.hpp"
#include "fsa/derivations.hpp"
#include "fsa/io.hpp"
#include "fsa/operators.hpp"
#include "fsa/verify.hpp"

namespace fsa::cli {

namespace {

struct Options {
    RunConfig config;
    std::string in;
    std::string format = "json";
    std::string replay;
    bool no_timing = false;
    bool right = false;
};

void add_config_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--alphabet", o.config.alphabet, "alphabet size m")->check(CLI::PositiveNumber);
    cmd->add_option("--max-len", o.config.max_len, "word length bound for exhaustive sweeps");
    cmd->add_option("--cutoff", o.config.cutoff, "truncation degree N");
    cmd->add_option("--seed", o.config.seed, "random seed");
    cmd->add_option("--tol", o.config.tol, "equality tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--trials", o.config.trials, "randomized trial count")->check(CLI::PositiveNumber);
    cmd->add_option("--witness-cutoff", o.config.witness_cutoff, "truncation for the Moebius witness");
    cmd->add_flag("--no-timing", o.no_timing, "omit timing fields");
    cmd->add_option("--replay", o.replay, "re-run the counterexamples in a report or payload file");
}

void add_io_flags(CLI::App* cmd, Options& o, bool needs_input) {
    auto* in = cmd->add_option("--in", o.in, "input JSON file");
    if (needs_input) in->required();
    cmd->add_option("--out", o.config.out, "output file (default stdout)");
    cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.config.out.empty()) {
        out << text;
    } else {
        write_text_file(o.config.out, text);
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void report_rows(const Report& r, std::ostream& os) {
    for (const Check& c : r.checks) {
        os << r.suite << ',' << c.name << ',' << (c.passed ? "pass" : "fail") << ',' << csv_field(c.detail) << '\n';
    }
    for (const Report& s : r.suites) report_rows(s, os);
}

std::string render_report(const Report& r, const Options& o) {
    if (o.format == "csv") {
        std::ostringstream os;
        os << "suite,check,status,detail\n";
        report_rows(r, os);
        return os.str();
    }
    return r.to_json(!o.no_timing).dump(2) + "\n";
}

void collect_counterexamples(const Json& report, std::vector<Json>& out) {
    if (report.contains("inputs") && report.contains("suite")) {
        out.push_back(report);
        return;
    }
    if (report.contains("checks")) {
        for (const Json& c : report.at("checks")) {
            if (c.contains("counterexample")) out.push_back(c.at("counterexample"));
        }
    }
    if (report.contains("suites")) {
        for (const Json& s : report.at("suites")) collect_counterexamples(s, out);
    }
}

int run_replay(const Options& o, std::ostream& out) {
    const Json j = parse_json_text(read_text_file(o.replay));
    std::vector<Json> payloads;
    collect_counterexamples(j, payloads);
    if (payloads.empty()) throw FormatError("no counterexample payloads in " + o.replay);
    Report merged;
    merged.suite = "replay";
    merged.config = RunConfig::from_json(payloads.front().at("config"));
    for (const Json& p : payloads) {
        Report r = replay_counterexample(p);
        // Keep only the check the payload names.
        const std::string name = p.value("check", std::string());
        std::vector<Check> kept;
        for (Check& c : r.checks) {
            if (name.empty() || c.name == name) kept.push_back(std::move(c));
        }
        r.checks = std::move(kept);
        merged.suites.push_back(std::move(r));
    }
    emit(o, out, render_report(merged, o));
    return merged.passed() ? kPass : kVerificationFailure;
}

int run_suite_command(const std::string& suite, const Options& o, std::ostream& out) {
    if (!o.replay.empty()) return run_replay(o, out);
    const Report r = run_suite(suite, o.config);
    emit(o, out, render_report(r, o));
    return r.passed() ? kPass : kVerificationFailure;
}

Json coefficient_json(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

std::string series_csv(const Series& s) {
    std::ostringstream os;
    os.precision(17);
    os << "word,re,im\n";
    for (const auto& [w, c] : s.terms()) os << to_string(w) << ',' << c.real() << ',' << c.imag() << '\n';
    return os.str();
}

int solve_derivation(const Options& o, std::ostream& out) {
    const GeneratorDerivation d = derivation_from_json(parse_json_text(read_text_file(o.in)));
    Json report = {{"schema_version", kReportSchemaVersion}, {"suite", "solve-derivation"}};
    try {
        const Series t = solve_global_t(d);
        const auto inner = GeneratorDerivation::inner(t);
        Json generators = Json::array();
        bool all = true;
        for (Letter a = 0; a < d.alphabet().size(); ++a) {
            const double dev = max_abs_difference(inner.value(a), d.value(a));
            const bool ok = dev <= o.config.tol;
            all = all && ok;
            generators.push_back({{"generator", to_string(Word::generator(d.alphabet(), a))},
                                  {"passed", ok},
                                  {"max_deviation", dev}});
        }
        report["passed"] = all;
        report["generators"] = std::move(generators);
        if (o.format == "csv") {
            emit(o, out, series_csv(t));
        } else {
            emit(o, out, Json{{"t", to_json(t)}, {"report", report}}.dump(2) + "\n");
        }
        return all ? kPass : kVerificationFailure;
    } catch (const InconsistentDerivation& e) {
        report["passed"] = false;
        Json error = {{"violation", to_string(e.violation())},
                      {"word", to_string(e.word())},
                      {"coefficient", coefficient_json(e.coefficient())},
                      {"message", e.what()}};
        if (e.offending()) error["offending"] = to_string(*e.offending());
        report["error"] = std::move(error);
        emit(o, out, Json{{"report", report}}.dump(2) + "\n");
        return kVerificationFailure;
    }
}

int trivialize_cocycle(const Options& o, std::ostream& out) {
    const Cochain phi = cochain_from_json(parse_json_text(read_text_file(o.in)));
    if (phi.arity() < 2) throw FormatError("trivialize-cocycle needs arity >= 2");
    Json report = {{"schema_version", kReportSchemaVersion}, {"suite", "trivialize-cocycle"}};
    try {
        const Cochain psi = homotopy(phi);
        const Cochain residual = coboundary(psi) + Complex(-1.0) * phi;
        const bool ok = approx_equal(residual, Cochain(phi.arity(), phi.alphabet()), o.config.tol);
        report["passed"] = ok;
        report["residual_terms"] = residual.table().size();
        emit(o, out, Json{{"psi", to_json(psi)}, {"report", report}}.dump(2) + "\n");
        return ok ? kPass : kVerificationFailure;
    } catch (const NotACocycle& e) {
        Json witness = Json::array();
        for (const Word& w : e.witness()) witness.push_back(to_string(w));
        report["passed"] = false;
        report["error"] = {{"message", "not a cocycle"}, {"witness", witness}, {"value", coefficient_json(e.value())}};
        emit(o, out, Json{{"report", report}}.dump(2) + "\n");
        return kVerificationFailure;
    }
}

int dump_matrix(const Options& o, std::ostream& out) {
    const Series phi = series_from_json(parse_json_text(read_text_file(o.in)));
    const std::size_t n = o.config.cutoff;
    std::size_t dim = 0;
    for (std::size_t k = 0, layer = 1; k <= n && dim <= kDimensionCap; ++k, layer *= phi.alphabet().size()) {
        dim += layer;
    }
    if (dim > kDimensionCap) throw ConfigError("truncation exceeds the dimension cap");
    const auto basis = TruncationBasis::make(phi.alphabet(), n);
    const auto m = o.right ? right_matrix(phi, basis) : left_matrix(phi, basis);
    if (o.format == "csv") {
        std::ostringstream os;
        write_csv(os, m);
        emit(o, out, os.str());
        return kPass;
    }
    Json entries = Json::array();
    const SparseMatrix& sm = m.matrix();
    for (Eigen::Index col = 0; col < sm.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(sm, col); it; ++it) {
            entries.push_back({{"row", to_string(basis->word(static_cast<std::size_t>(it.row())))},
                               {"col", to_string(basis->word(static_cast<std::size_t>(it.col())))},
                               {"re", it.value().real()},
                               {"im", it.value().imag()}});
        }
    }
    emit(o, out, Json{{"cutoff", n}, {"dimension", basis->dimension()}, {"entries", entries}}.dump(2) + "\n");
    return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Free semigroup algebra verification and solvers"};
    app.require_subcommand(1);
    Options o;

    struct Suite {
        const char* command;
        const char* suite;
        const char* help;
    };
    const Suite suites[] = {
        {"verify-words", "words", "word combinatorics: order, cancellation, primitive roots"},
        {"verify-operators", "operators", "truncated translation operators and their norms"},
        {"verify-derivations", "derivations", "derivation solver on random inner derivations"},
        {"verify-cohomology", "cohomology", "coboundary, homotopy and first cohomology"},
        {"report-all", "all", "every suite, run concurrently"},
    };
    std::vector<std::pair<CLI::App*, const char*>> suite_cmds;
    for (const Suite& s : suites) {
        CLI::App* cmd = app.add_subcommand(s.command, s.help);
        add_config_flags(cmd, o);
        add_io_flags(cmd, o, false);
        suite_cmds.emplace_back(cmd, s.suite);
    }

    CLI::App* solve = app.add_subcommand("solve-derivation", "recover T from derivation values on the generators");
    add_io_flags(solve, o, true);
    solve->add_option("--tol", o.config.tol, "equality tolerance")->check(CLI::PositiveNumber);

    CLI::App* triv = app.add_subcommand("trivialize-cocycle", "build psi with coboundary(psi) = phi");
    add_io_flags(triv, o, true);
    triv->add_option("--tol", o.config.tol, "equality tolerance")->check(CLI::PositiveNumber);

    CLI::App* dump = app.add_subcommand("dump-matrix", "truncated convolution matrix of a series");
    add_io_flags(dump, o, true);
    dump->add_option("--cutoff", o.config.cutoff, "truncation degree N");
    dump->add_flag("--right", o.right, "right convolution instead of left");

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("fsa");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        for (const auto& [cmd, suite] : suite_cmds) {
            if (cmd->parsed()) return run_suite_command(suite, o, out);
        }
        if (solve->parsed()) return solve_derivation(o, out);
        if (triv->parsed()) return trivialize_cocycle(o, out);
        if (dump->parsed()) return dump_matrix(o, out);
    } catch (const FormatError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace fsa::cli
