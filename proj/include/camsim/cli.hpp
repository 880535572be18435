#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace camsim::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

struct SimulateOptions {
    std::string config_path;
    std::string stored_path;
    std::string query_path;
    std::string stored_labels_path;  // optional; with query_labels_path enables accuracy
    std::string query_labels_path;
    std::string cost_model_path;  // optional
    std::string out_path;
    std::optional<std::uint64_t> seed;  // overrides the config seed
};

struct SweepOptions {
    std::string config_path;
    std::string sweep_path;
    std::string stored_path;
    std::string query_path;
    std::string stored_labels_path;  // optional
    std::string query_labels_path;
    std::string cost_model_path;  // optional
    std::string out_path;
    int repeats = 1;  // variation draws averaged per design point
    std::optional<std::uint64_t> seed;
};

/// Run one simulation and write a JSON report with `results`, `accuracy`,
/// `performance`, and `architecture` sections.
int cmd_simulate(const SimulateOptions& opt);

/// Cartesian-product sweep over dotted config paths; one CSV row per design
/// point. Points with unsupported merge combinations are recorded with
/// status=unsupported instead of aborting the sweep.
int cmd_sweep(const SweepOptions& opt);

/// Print violations; exit 0 iff none with severity Error.
int cmd_validate(const std::string& config_path);

}  // namespace camsim::cli
