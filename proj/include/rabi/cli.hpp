#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rabi/model.hpp"

namespace rabi::cli {

enum ExitCode : int { kSuccess = 0, kChecksFailed = 1, kConfigError = 2, kNumericalFailure = 3 };

/// Everything a command can be configured with. Flags override a --config file,
/// which overrides these defaults.
struct RunConfig {
    std::string model = "2qrm";
    double alpha = 2.0, beta = 2.0, eta = 0.0;
    double g = 0.2, delta = 0.5, epsilon = 0.0;
    double nu = 0.5;
    double gp = 0.3, dp = 0.4, ep = 0.0;

    long truncation = 400;
    std::string sector = "full";
    double cert_tol = 1e-9;
    std::string out_dir = ".";
    int threads = 1;
    std::uint64_t seed = 0;  // reserved; no command draws random numbers
    std::string dump_matrix;

    std::string check = "forward";
    int levels = 8;
    double tol = -1.0;  // < 0: per-check default

    std::vector<double> nu_values{50, 100, 200, 400};
    double band_lo = 0.7, band_hi = 1.3;

    std::string sweep = "gp";
    double lo = 0.05, hi = 1.2;
    int grid = 2000;
    double gap_threshold = 1e-8;
    double tol_int = 1e-5;
};

ModelSpec model_from_config(const RunConfig& cfg);

/// Parse argv and run one subcommand. Never throws; returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rabi::cli
