#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsa/io.hpp"

namespace fsa {

inline constexpr int kReportSchemaVersion = 1;
// Matrix suites refuse truncations with more basis words than this.
inline constexpr std::size_t kDimensionCap = 5000;

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::size_t alphabet = 2;
    std::size_t max_len = 6;
    std::size_t cutoff = 5;
    std::uint64_t seed = 42;
    double tol = 1e-12;
    std::size_t trials = 10000;
    // Truncation used for the Moebius lower-bound witness.
    std::size_t witness_cutoff = 200;
    std::string out;

    // Throws ConfigError.
    void validate() const;
    Json to_json() const;
    static RunConfig from_json(const Json& j);
};

struct Check {
    std::string name;
    bool passed = true;
    std::string detail;
    // Null when passed; otherwise {"suite", "check", "seed", "config", "inputs"}.
    Json counterexample;
};

struct Report {
    std::string suite;
    RunConfig config;
    std::vector<Check> checks;
    // Sub-reports of an aggregate run, ordered by suite name.
    std::vector<Report> suites;
    double seconds = 0.0;

    bool passed() const;
    // Timing is the only field that differs between identical runs.
    Json to_json(bool with_timing = true) const;
};

Report verify_words(const RunConfig& config);
Report verify_operators(const RunConfig& config);
Report verify_derivations(const RunConfig& config);
Report verify_cohomology(const RunConfig& config);

// Every suite, run concurrently, merged by suite name.
Report report_all(const RunConfig& config);

const std::vector<std::string>& suite_names();
// Throws ConfigError for an unknown name.
Report run_suite(const std::string& name, const RunConfig& config);

// Re-runs the suite named in a counterexample payload under its recorded config.
Report replay_counterexample(const Json& counterexample);

}  // namespace fsa
