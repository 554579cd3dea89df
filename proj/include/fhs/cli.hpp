#pragma once

#include "fhs/checks.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace fhs::cli {

enum ExitCode : int { ok = 0, validation = 2, partial = 3, missing_input = 4 };

struct RunConfig {
    std::vector<double> endpoints = kReferenceEndpoints;
    int n_max = 24;
    int quad_order = 256;
    double theta_eps = 1e-12;
    double kappa_min = 1.0;
    std::optional<double> kappa_max;  // default kappa_min + (n_max + 2) period
    std::string out = ".";
    int samples = 2000;
    double margin = 0.01;
    int n = 12;
};

// Throws ValidationError with a one-line message.
void validate(const RunConfig& cfg);

// Comma-separated reals.
std::vector<double> parse_endpoints(const std::string& text);

// Each report returns its file contents; a partial flag is raised when a row holds NaN.
struct Report {
    std::string text;
    bool partial = false;
};

Report periods_report(const RunConfig& cfg);
Report eigs_report(const RunConfig& cfg);
Report oracle_report(const RunConfig& cfg);
// Reads eigs.csv and oracle.csv from cfg.out. Missing files raise MissingInput.
Report compare_report(const RunConfig& cfg);
Report eigenfunction_report(const RunConfig& cfg);

class MissingInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Value in 17 significant digits, "nan" for NaN.
std::string format_value(double v);

// The file with every line holding "timestamp" removed.
std::string strip_timestamp(const std::string& text);

// Runs eigs, oracle and compare twice in fresh directories under cfg.out and compares the outputs.
CheckResult determinism_check(const RunConfig& cfg);

// Full command-line entry point; returns the process exit code.
int main(int argc, char** argv);

}  // namespace fhs::cli
