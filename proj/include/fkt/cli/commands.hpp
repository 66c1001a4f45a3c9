#pragma once

#include <filesystem>
#include <string>

#include "fkt/cli/config.hpp"

namespace fkt::cli {

/// Exit codes: 0 success, 1 a verification check failed, 2 usage or config error.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsageError = 2 };

struct VerifyOptions {
    /// Added to lambda_V after the eigensolve (fault injection).
    double perturb_eigenvalue = 0.0;
};

int run_eigen(const RunConfig& cfg);
int run_propagate(const RunConfig& cfg);
int run_simulate(const RunConfig& cfg);
int run_entropy(const RunConfig& cfg);
int run_maximize(const RunConfig& cfg);
int run_verify(const RunConfig& cfg, const VerifyOptions& options = {});

/// Dispatches by command name; writes into cfg.out (created if missing).
int run_command(const std::string& command, const RunConfig& cfg,
                const VerifyOptions& options = {});

}  // namespace fkt::cli
