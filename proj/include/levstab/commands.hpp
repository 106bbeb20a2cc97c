#pragma once

// Command layer shared by the C API and the command-line tool. Each command
// writes its data products into an output directory together with a
// "<command>.meta.json" file holding the full input configuration.

#include <string>
#include <vector>

#include "json.hpp"
#include "levstab/config.hpp"

namespace levstab {

struct CommandRequest {
    /// ellipses | map | validate | simulate | resonance-chart | steady-state | spectrum
    std::string command;
    std::string out_dir = ".";
    std::string format = "csv";  ///< csv | json
    bool overlay = false;        ///< map: also write the analytic ellipse boundaries
};

struct CommandResult {
    /// 0 success, 1 validation failure, 2 bad input, 3 runtime or numerical failure
    int exit_code = 0;
    nlohmann::json summary;
    std::vector<std::string> files;
};

const std::vector<std::string>& command_names();

/// Runs one command. Throws levstab::Error for bad input and for failures
/// that leave nothing useful to report; outcomes with partial output (failed
/// criteria, failed map cells, gap closure) come back as a nonzero exit_code.
CommandResult run_command(const RunConfig& cfg, const CommandRequest& request);

}  // namespace levstab
