#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nmq/app/run_config.hpp"
#include "nmq/app/sweep.hpp"
#include "nmq/app/validation.hpp"

namespace nmq::app {

enum ExitCode : int {
    kExitSuccess = 0,
    kExitValidationFailure = 1,
    kExitConfigError = 2,
    kExitSolverFailure = 3,
    kExitNoBoundState = 4,
};

inline constexpr const char* kOutDirEnv = "NMQ_OUT_DIR";

/// --out if given, else $NMQ_OUT_DIR, else the working directory.
std::filesystem::path output_directory(const std::string& flag_value);

int cmd_simulate(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out,
                 std::ostream& err);
int cmd_sweep(SweepAxis axis, const std::vector<double>& values, const RunConfig& base,
              unsigned workers, const std::filesystem::path& out_dir, std::ostream& out,
              std::ostream& err);
int cmd_boundstate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_markovian(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate(ValidationLevel level, unsigned workers, bool include_timing, std::ostream& out,
                 std::ostream& err);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nmq::app
