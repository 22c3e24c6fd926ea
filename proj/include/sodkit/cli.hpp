#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace sodkit::cli {

enum ExitCode : int { ok = 0, validation_error = 1, assertion_failure = 2 };

struct RunConfig {
    std::string command;

    std::string input;
    std::string output;
    std::string csv;
    std::string events;
    std::string events_b;
    std::optional<double> horizon;

    std::optional<double> theta;
    std::vector<double> thetas;
    std::string scheme = "sod";
    std::string norm = "D";
    std::string metric = "D";
    bool bruteforce = false;

    double alpha = 1.0;
    double s = 1.0;
    double sigma = 0.05;
    std::string kernel = "exp";
    std::string h = "one_minus_s";
    std::string vp_mode = "split";

    std::string what = "mmd";
    std::string mode = "sweep";
    std::uint64_t seed = 42;
    std::size_t trials = 1000;
    int steps = 40;
    std::size_t n_max = 200;
    std::vector<double> horizons;
    std::vector<double> spacings;
    std::vector<std::size_t> sizes{8, 16, 32, 64};
    std::size_t random_per_size = 4;

    std::string kind = "ramp_plateau";
    int resolution = 64;
    int breaks = 10;
    double amplitude = 0.3;
};

struct ParseOutcome {
    std::optional<RunConfig> config;
    int exit_code = ok;
};

/// Usage errors are reported on `err` and yield exit code 1; --help yields 0.
ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Executes one subcommand. 0 success, 1 validation error, 2 assertion
/// failure (a quasi-isometry bound violated).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sodkit::cli
