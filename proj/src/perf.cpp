#include "camsim/perf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "camsim/errors.hpp"

namespace camsim {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

double nonneg(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) return 0.0;
    if (!it->is_number())
        throw Error(ErrorCode::FormatError, where + "." + key + " must be a number");
    double v = it->get<double>();
    if (v < 0) throw Error(ErrorCode::NegativeCost, where + "." + key + " must be >= 0");
    return v;
}

int tree_depth(int fan_in) {
    int depth = 0;
    while ((1 << depth) < fan_in) ++depth;
    return depth;
}

// Children per parent at one layer: full parents first, remainder last.
std::vector<int> distribute(int children, int capacity, int parents) {
    std::vector<int> fan_ins;
    fan_ins.reserve(parents);
    int remaining = children;
    for (int p = 0; p < parents; ++p) {
        int take = std::min(remaining, capacity);
        fan_ins.push_back(take);
        remaining -= take;
    }
    return fan_ins;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

const UnitCost& unit_cost(const CostModel& cm, const std::string& unit) {
    auto it = cm.peripheral_units.find(unit);
    if (it == cm.peripheral_units.end())
        throw Error(ErrorCode::MissingCostKey,
                    "cost model has no peripheral_units entry for \"" + unit + "\"");
    return it->second;
}

InterconnectCost interconnect_cost(const CostModel& cm, const std::string& layer) {
    auto it = cm.interconnect.find(layer);
    return it == cm.interconnect.end() ? InterconnectCost{} : it->second;
}

}  // namespace

CostModel parse_cost_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::FormatError, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::FormatError, "cost model must be a JSON object");

    CostModel cm;
    if (auto it = doc.find("subarrays"); it != doc.end()) {
        if (!it->is_array()) throw Error(ErrorCode::FormatError, "subarrays must be a list");
        for (const json& entry : *it) {
            if (!entry.is_object())
                throw Error(ErrorCode::FormatError, "subarrays entries must be objects");
            SubarrayCost sc;
            if (!entry.contains("cell_type") || !entry.contains("rows") ||
                !entry.contains("columns") || !entry.contains("device_type"))
                throw Error(ErrorCode::FormatError,
                            "subarray entry needs cell_type, rows, columns, device_type");
            sc.cell_type =
                parse_cell_type(entry.at("cell_type").get<std::string>(), "subarrays.cell_type");
            sc.rows = entry.at("rows").get<int>();
            sc.columns = entry.at("columns").get<int>();
            sc.device_type = entry.at("device_type").get<std::string>();
            if (sc.rows < 1 || sc.columns < 1)
                throw Error(ErrorCode::FormatError, "subarray rows/columns must be >= 1");
            sc.search_latency = nonneg(entry, "search_latency", "subarrays");
            sc.search_energy = nonneg(entry, "search_energy", "subarrays");
            sc.write_latency = nonneg(entry, "write_latency", "subarrays");
            sc.write_energy = nonneg(entry, "write_energy", "subarrays");
            sc.area = nonneg(entry, "area", "subarrays");
            cm.subarrays.push_back(std::move(sc));
        }
    }
    if (auto it = doc.find("peripheral_units"); it != doc.end()) {
        if (!it->is_object())
            throw Error(ErrorCode::FormatError, "peripheral_units must be an object");
        for (auto u = it->begin(); u != it->end(); ++u) {
            UnitCost uc;
            uc.latency = nonneg(*u, "latency", "peripheral_units." + u.key());
            uc.energy = nonneg(*u, "energy", "peripheral_units." + u.key());
            uc.area = nonneg(*u, "area", "peripheral_units." + u.key());
            cm.peripheral_units[u.key()] = uc;
        }
    }
    if (auto it = doc.find("interconnect"); it != doc.end()) {
        if (!it->is_object()) throw Error(ErrorCode::FormatError, "interconnect must be an object");
        for (auto l = it->begin(); l != it->end(); ++l) {
            InterconnectCost ic;
            ic.latency_per_block = nonneg(*l, "latency_per_block", "interconnect." + l.key());
            ic.energy_per_block = nonneg(*l, "energy_per_block", "interconnect." + l.key());
            ic.area_per_block = nonneg(*l, "area_per_block", "interconnect." + l.key());
            cm.interconnect[l.key()] = ic;
        }
    }
    if (auto it = doc.find("peripheral_count_overrides"); it != doc.end()) {
        if (!it->is_object())
            throw Error(ErrorCode::FormatError, "peripheral_count_overrides must be an object");
        for (auto l = it->begin(); l != it->end(); ++l) {
            for (auto u = l->begin(); u != l->end(); ++u) {
                if (!u->is_number_integer() || u->get<long long>() < 0)
                    throw Error(ErrorCode::FormatError,
                                "peripheral_count_overrides counts must be integers >= 0");
                cm.peripheral_count_overrides[l.key()][u.key()] = u->get<long long>();
            }
        }
    }
    return cm;
}

CostModel load_cost_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open cost model: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_cost_model(ss.str());
}

std::string serialize_cost_model(const CostModel& cm) {
    ordered_json doc;
    doc["subarrays"] = ordered_json::array();
    for (const SubarrayCost& sc : cm.subarrays) {
        doc["subarrays"].push_back({
            {"cell_type", to_string(sc.cell_type)},
            {"rows", sc.rows},
            {"columns", sc.columns},
            {"device_type", sc.device_type},
            {"search_latency", sc.search_latency},
            {"search_energy", sc.search_energy},
            {"write_latency", sc.write_latency},
            {"write_energy", sc.write_energy},
            {"area", sc.area},
        });
    }
    doc["peripheral_units"] = ordered_json::object();
    for (const auto& [name, uc] : cm.peripheral_units) {
        doc["peripheral_units"][name] = {
            {"latency", uc.latency}, {"energy", uc.energy}, {"area", uc.area}};
    }
    doc["interconnect"] = ordered_json::object();
    for (const auto& [layer, ic] : cm.interconnect) {
        doc["interconnect"][layer] = {{"latency_per_block", ic.latency_per_block},
                                      {"energy_per_block", ic.energy_per_block},
                                      {"area_per_block", ic.area_per_block}};
    }
    if (!cm.peripheral_count_overrides.empty()) {
        doc["peripheral_count_overrides"] = ordered_json::object();
        for (const auto& [layer, units] : cm.peripheral_count_overrides)
            for (const auto& [unit, count] : units)
                doc["peripheral_count_overrides"][layer][unit] = count;
    }
    return doc.dump(2) + "\n";
}

const SubarrayCost& find_subarray_cost(const CostModel& cm, CellType cell_type, int rows,
                                       int columns, const std::string& device_type) {
    for (const SubarrayCost& sc : cm.subarrays) {
        if (sc.cell_type == cell_type && sc.rows == rows && sc.columns == columns &&
            sc.device_type == device_type)
            return sc;
    }
    throw Error(ErrorCode::MissingCostKey,
                std::string("no subarray cost entry for (") + to_string(cell_type) + ", " +
                    std::to_string(rows) + "x" + std::to_string(columns) + ", " + device_type +
                    "); interpolation is not performed");
}

PeripheralInventory estimate_peripherals(const MergePlan& plan, int fan_in, const MatchSpec& match,
                                         int rows) {
    (void)match;  // counts depend on the schemes, not on k
    PeripheralInventory inv;
    if (fan_in <= 1) return inv;
    int depth = tree_depth(fan_in);

    if (plan.horizontal == HorizontalScheme::Voting) {
        inv.push_back({"voter", fan_in, 1});
        inv.push_back({"adder", fan_in - 1, depth});
    } else if (plan.horizontal == HorizontalScheme::And) {
        inv.push_back({"and_gate", fan_in - 1, depth});
    }

    if (plan.vertical == VerticalScheme::Comparator) {
        inv.push_back({"comparator", fan_in - 1, depth});
        inv.push_back({"register", 1, 1});
    } else if (plan.vertical == VerticalScheme::Gather) {
        inv.push_back({"buffer_per_bit", static_cast<long long>(fan_in) * rows, 1});
    }
    return inv;
}

ArchitectureSpec estimate_architecture(const SimConfig& config, int entries, int dims) {
    ArchitectureSpec arch;
    arch.grid = plan_partition(entries, dims, config.circuit.rows, config.circuit.columns);
    arch.plan = plan_merge(config, arch.grid);
    arch.match = config.match_spec();
    arch.cell_type = config.circuit.cell_type;
    arch.device_type = config.device.device_type;

    arch.subarrays_total = arch.grid.subarray_count();
    arch.arrays = ceil_div(arch.subarrays_total, config.arch.subarrays_per_array);
    arch.mats = ceil_div(arch.arrays, config.arch.arrays_per_mat);
    arch.banks = ceil_div(arch.mats, config.arch.mats_per_bank);

    struct Stage {
        const char* name;
        int children;
        int capacity;
        int parents;
    };
    std::vector<Stage> stages = {
        {"array", arch.subarrays_total, config.arch.subarrays_per_array, arch.arrays},
        {"mat", arch.arrays, config.arch.arrays_per_mat, arch.mats},
        {"bank", arch.mats, config.arch.mats_per_bank, arch.banks},
    };
    if (arch.banks > 1) stages.push_back({"system", arch.banks, arch.banks, 1});

    for (const Stage& st : stages) {
        LayerSpec layer;
        layer.name = st.name;
        layer.block_count = st.parents;
        layer.fan_ins = distribute(st.children, st.capacity, st.parents);
        for (int f : layer.fan_ins) {
            PeripheralInventory inv =
                estimate_peripherals(arch.plan, f, arch.match, config.circuit.rows);
            for (const PeripheralUse& use : inv)
                if (use.unit == "buffer_per_bit") layer.buffer_bits += use.count;
            layer.per_parent.push_back(std::move(inv));
        }
        arch.layers.push_back(std::move(layer));
    }
    return arch;
}

PerfReport predict(const ArchitectureSpec& arch, const CostModel& cm, Operation op, int queries) {
    if (queries < 1) throw Error(ErrorCode::BadValue, "queries must be >= 1");
    const SubarrayCost& sub = find_subarray_cost(cm, arch.cell_type, arch.grid.rows_per_subarray,
                                                 arch.grid.cols_per_subarray, arch.device_type);
    const bool search = op == Operation::Search;
    const double sub_latency = search ? sub.search_latency : sub.write_latency;
    const double sub_energy = search ? sub.search_energy : sub.write_energy;

    PerfReport report;
    report.operation = op;
    report.queries = queries;

    report.breakdown.push_back({"subarray", "cam", sub_latency,
                                sub_energy * arch.subarrays_total,
                                sub.area * arch.subarrays_total});

    for (const LayerSpec& layer : arch.layers) {
        // Peripheral totals across parents; per-unit counts can be replaced
        // from the cost model's peripheral_count_overrides section.
        std::map<std::string, long long> counts;
        std::map<std::string, int> depths;
        for (const PeripheralInventory& inv : layer.per_parent) {
            for (const PeripheralUse& use : inv) {
                counts[use.unit] += use.count;
                depths[use.unit] = std::max(depths[use.unit], use.stage_depth);
            }
        }
        if (auto ov = cm.peripheral_count_overrides.find(layer.name);
            ov != cm.peripheral_count_overrides.end()) {
            for (const auto& [unit, count] : ov->second) counts[unit] = count;
        }

        BreakdownRow periph{layer.name, "peripheral", 0.0, 0.0, 0.0};
        for (const auto& [unit, count] : counts) {
            if (count == 0 && !depths.count(unit)) continue;
            const UnitCost& uc = unit_cost(cm, unit);
            periph.area += uc.area * count;
            if (search) {
                periph.energy += uc.energy * count;
                periph.latency += uc.latency * depths[unit];
            }
        }

        // Interconnect: each child of a merging parent crosses the layer's
        // links once; fan-in 1 parents pass results through for free.
        const InterconnectCost ic = interconnect_cost(cm, layer.name);
        long long charged_children = 0;
        int max_fan_in = 0;
        for (int f : layer.fan_ins) {
            if (f > 1) charged_children += f;
            max_fan_in = std::max(max_fan_in, f);
        }
        BreakdownRow inter{layer.name, "interconnect", 0.0, 0.0, 0.0};
        if (max_fan_in > 1) {
            inter.latency = ic.latency_per_block * max_fan_in;
            inter.energy = ic.energy_per_block * charged_children;
            inter.area = ic.area_per_block * charged_children;
        }

        report.breakdown.push_back(periph);
        report.breakdown.push_back(inter);
    }

    for (const BreakdownRow& row : report.breakdown) {
        report.latency += row.latency;
        report.energy_per_query += row.energy;
        report.area += row.area;
    }
    report.energy = report.energy_per_query * queries;
    report.edp = report.energy_per_query * report.latency;
    return report;
}

}  // namespace camsim
