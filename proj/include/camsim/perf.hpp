#pragma once

#include <map>
#include <string>
#include <vector>

#include "camsim/config.hpp"
#include "camsim/mapping.hpp"
#include "camsim/merge.hpp"

namespace camsim {

enum class Operation { Search, Write };

struct UnitCost {
    double latency = 0.0;  // ns
    double energy = 0.0;   // pJ
    double area = 0.0;     // um^2
};

struct SubarrayCost {
    CellType cell_type = CellType::BCAM;
    int rows = 0;
    int columns = 0;
    std::string device_type;
    double search_latency = 0.0;
    double search_energy = 0.0;
    double write_latency = 0.0;
    double write_energy = 0.0;
    double area = 0.0;
};

struct InterconnectCost {
    double latency_per_block = 0.0;
    double energy_per_block = 0.0;
    double area_per_block = 0.0;
};

/// Per-subarray operation costs plus peripheral and interconnect unit costs.
/// Subarray entries are matched on the exact (cell_type, rows, columns,
/// device_type) key; there is no interpolation.
struct CostModel {
    std::vector<SubarrayCost> subarrays;
    std::map<std::string, UnitCost> peripheral_units;
    std::map<std::string, InterconnectCost> interconnect;  // keys: array, mat, bank
    std::map<std::string, std::map<std::string, long long>> peripheral_count_overrides;
};

CostModel parse_cost_model(const std::string& text);
CostModel load_cost_model(const std::string& path);
std::string serialize_cost_model(const CostModel& cm);

const SubarrayCost& find_subarray_cost(const CostModel& cm, CellType cell_type, int rows,
                                       int columns, const std::string& device_type);

struct PeripheralUse {
    std::string unit;
    long long count = 0;
    int stage_depth = 0;
};

using PeripheralInventory = std::vector<PeripheralUse>;

/// Peripheral inventory of one merge stage with the given fan-in, per the
/// plan's active schemes. Trees are balanced binary: comparator/and stages
/// use fan_in - 1 units at depth ceil(log2 fan_in); voting uses one voter
/// per input plus an adder tree; gather uses a fan_in x rows bit buffer.
PeripheralInventory estimate_peripherals(const MergePlan& plan, int fan_in,
                                         const MatchSpec& match, int rows);

/// One hierarchy layer: parents of this layer and the children each merges.
struct LayerSpec {
    std::string name;                             // array | mat | bank | system
    int block_count = 0;                          // parents at this layer
    std::vector<int> fan_ins;                     // children per parent, largest first
    std::vector<PeripheralInventory> per_parent;  // aligned with fan_ins
    long long buffer_bits = 0;                    // gather buffer bits, all parents
};

struct ArchitectureSpec {
    PartitionGrid grid;
    MergePlan plan;
    MatchSpec match;
    int subarrays_total = 1;
    int arrays = 1;
    int mats = 1;
    int banks = 1;
    CellType cell_type = CellType::BCAM;
    std::string device_type;
    std::vector<LayerSpec> layers;  // bottom-up: array, mat, bank[, system]
};

/// Block counts per layer (ceiling division up the hierarchy) plus the
/// peripheral inventory of every merge stage.
ArchitectureSpec estimate_architecture(const SimConfig& config, int entries, int dims);

struct BreakdownRow {
    std::string layer;      // subarray | array | mat | bank | system
    std::string component;  // cam | peripheral | interconnect
    double latency = 0.0;   // critical-path contribution, ns
    double energy = 0.0;    // per query, pJ
    double area = 0.0;      // um^2
};

struct PerfReport {
    Operation operation = Operation::Search;
    int queries = 1;
    double latency = 0.0;           // per query, ns
    double energy = 0.0;            // total over all queries, pJ
    double energy_per_query = 0.0;  // pJ
    double area = 0.0;              // um^2
    double edp = 0.0;               // energy_per_query * latency, pJ*ns
    std::vector<BreakdownRow> breakdown;
};

/// Hierarchical rollup over the cost model. Latency composes the critical
/// path bottom-up (children of a layer run in parallel); energy and area are
/// additive. Merge peripherals contribute to Search only; interconnect and
/// CAM costs apply to both operations. Throws MissingCostKey.
PerfReport predict(const ArchitectureSpec& arch, const CostModel& cm, Operation op, int queries);

}  // namespace camsim
