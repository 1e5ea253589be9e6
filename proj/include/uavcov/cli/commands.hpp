#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace uavcov::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailure = 1,  // a validation check failed, or a computation did
    kExitInputError = 2,    // unreadable or invalid scenario, bad flags
};

struct CommonOptions {
    std::optional<std::filesystem::path> scenario;  // built-in default when absent
    std::optional<std::filesystem::path> out;       // output directory
    std::optional<std::uint64_t> seed;
    std::optional<int> replications;
    std::optional<std::vector<double>> psi_db;  // overrides the scenario grid
};

int cmd_analyze(const CommonOptions& opt, std::ostream& out, std::ostream& err);
int cmd_simulate(const CommonOptions& opt, std::ostream& out, std::ostream& err);
int cmd_validate(const CommonOptions& opt, double inject_fault, std::ostream& out, std::ostream& err);

/// Coverage over the psi grid for each value of one scenario parameter:
/// interferers, m0, m_interferer, serving_altitude_m or stay_probability.
int cmd_sweep(const CommonOptions& opt, const std::string& parameter,
              const std::vector<double>& values, std::ostream& out, std::ostream& err);

/// Parses `argv` and dispatches to a subcommand.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uavcov::cli
