// Run configuration: JSON document -> validated RunConfig with defaults,
// field-path error messages, and unknown-key warnings.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stratlab/harness.hpp"

namespace stratlab {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
    // grid
    std::size_t n = 48;
    double box_length = 2.0 * 3.14159265358979323846;
    // physics
    double nu = 0.05;
    double nu_prime = 0.05;
    std::vector<double> epsilons = {0.1};  // single entry for non-sweep runs
    // time
    double dt = 1e-3;
    double t_final = 1.0;
    std::size_t sample_stride = 10;
    // initial data
    InitialDataSpec ic;
    // truncation window exponents
    double trunc_m = 1.0 / 320.0;
    double trunc_M = 1.0 / 320.0;
    // norms
    std::vector<double> q_list = {3.0, 4.0, 5.0};
    // output
    std::string output_dir = "out";

    std::vector<std::string> warnings;  // unknown keys met during parsing
};

// Throws ConfigError naming the offending field path (e.g. "physics.nu_prime").
RunConfig parse_config_text(const std::string& json_text);
RunConfig parse_config_file(const std::string& path);

// Canonical JSON for a config (round-trips through parse_config_text).
std::string config_to_text(const RunConfig& cfg);
std::string default_config_text();

}  // namespace stratlab
