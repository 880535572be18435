#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "camsim/types.hpp"

namespace camsim {

/// Application-level choices: what the accelerator is asked to compute.
struct AppConfig {
    DistanceFunction distance_function = DistanceFunction::Hamming;
    MatchType match_type = MatchType::Exact;
    double match_parameter = 0.0;  // k for Best (integer-valued), theta for Threshold
    int data_bits = 1;

    bool operator==(const AppConfig&) const = default;
};

/// Architecture-level choices: hierarchy block counts and merge schemes.
struct ArchConfig {
    int subarrays_per_array = 1;
    int arrays_per_mat = 1;
    int mats_per_bank = 1;
    HorizontalMergeType horizontal_merge = HorizontalMergeType::And;
    VerticalMergeType vertical_merge = VerticalMergeType::Gather;

    bool operator==(const ArchConfig&) const = default;
};

/// Circuit-level choices: subarray geometry, cell family, sensing circuit.
struct CircuitConfig {
    int rows = 1;
    int columns = 1;
    CellType cell_type = CellType::BCAM;
    MatchType sensing_circuit = MatchType::Exact;
    double sensing_limit = 0.0;

    bool operator==(const CircuitConfig&) const = default;
};

/// Device-level choices: device label and variation model.
struct DeviceConfig {
    std::string device_type = "CMOS";
    bool variation_enabled = false;
    VariationKind variation_type = VariationKind::D2D;
    VariationSource variation_spec = VariationSource::Statistical;
    double variation_std = 0.0;
    std::string empirical_table_path;  // required when variation_spec == Experimental
    std::uint64_t seed = 0;

    bool operator==(const DeviceConfig&) const = default;
};

struct SimConfig {
    AppConfig app;
    ArchConfig arch;
    CircuitConfig circuit;
    DeviceConfig device;
    bool strict_merge = true;

    // Unrecognized document keys, kept so validate() can warn about them.
    // Not part of the simulation point, hence excluded from equality.
    std::vector<std::string> unknown_keys;

    bool operator==(const SimConfig& other) const {
        return app == other.app && arch == other.arch && circuit == other.circuit &&
               device == other.device && strict_merge == other.strict_merge;
    }

    MatchSpec match_spec() const;
};

enum class Severity { Error, Warning };

struct Violation {
    Severity severity;
    std::string code;
    std::string message;
};

/// Parse a JSON configuration document. Throws Error with SyntaxError,
/// MissingField, or BadValue. Optional fields get their documented defaults
/// (sensing_limit 0, variation disabled, strict_merge true, match_parameter 1
/// for Best / 0 for Exact).
SimConfig parse_config(const std::string& text);

/// Canonical JSON form of a config; parse_config(serialize_config(c)) == c.
std::string serialize_config(const SimConfig& config);

/// Static consistency rules across sections. Empty iff consistent.
std::vector<Violation> validate(const SimConfig& config);

bool has_errors(const std::vector<Violation>& violations);

}  // namespace camsim
