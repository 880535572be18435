#include "camsim/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "camsim/config.hpp"
#include "camsim/data_io.hpp"
#include "camsim/engine.hpp"
#include "camsim/errors.hpp"
#include "camsim/perf.hpp"

namespace camsim::cli {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::FileNotFound, "cannot write file: " + path);
    out << content;
}

int report_error(const Error& e, int code) {
    std::cerr << "camsim: " << e.what() << "\n";
    return code;
}

void print_violations(const std::vector<Violation>& violations) {
    for (const Violation& v : violations) {
        const char* severity = v.severity == Severity::Error ? "error" : "warning";
        std::cerr << severity << " [" << v.code << "] " << v.message << "\n";
    }
}

// Loads and checks the configuration; throws Error on parse problems and
// returns validation violations for the caller to act on.
SimConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override,
                      std::vector<Violation>& violations) {
    SimConfig cfg = parse_config(read_file(path));
    if (seed_override) cfg.device.seed = *seed_override;
    violations = validate(cfg);
    return cfg;
}

ordered_json results_to_json(const std::vector<SearchResult>& results) {
    ordered_json arr = ordered_json::array();
    for (const SearchResult& r : results) {
        ordered_json item;
        item["query"] = r.query_ordinal;
        item["matched"] = r.matched_indices;
        if (!r.distances.empty()) item["distances"] = r.distances;
        item["approximate"] = r.approximate;
        if (!r.warnings.empty()) item["warnings"] = r.warnings;
        arr.push_back(std::move(item));
    }
    return arr;
}

ordered_json architecture_to_json(const ArchitectureSpec& arch) {
    ordered_json out;
    out["entries"] = arch.grid.total_entries;
    out["dimensions"] = arch.grid.total_dims;
    out["row_groups"] = arch.grid.row_groups;
    out["col_groups"] = arch.grid.col_groups;
    out["subarrays"] = arch.subarrays_total;
    out["arrays"] = arch.arrays;
    out["mats"] = arch.mats;
    out["banks"] = arch.banks;
    out["approximate_merge"] = arch.plan.approximate;
    return out;
}

ordered_json performance_to_json(const PerfReport& perf) {
    ordered_json out;
    out["operation"] = perf.operation == Operation::Search ? "search" : "write";
    out["queries"] = perf.queries;
    out["latency_ns"] = perf.latency;
    out["energy_pj"] = perf.energy;
    out["energy_per_query_pj"] = perf.energy_per_query;
    out["area_um2"] = perf.area;
    out["edp_pj_ns"] = perf.edp;
    ordered_json rows = ordered_json::array();
    for (const BreakdownRow& row : perf.breakdown) {
        rows.push_back({{"layer", row.layer},
                        {"component", row.component},
                        {"latency_ns", row.latency},
                        {"energy_pj", row.energy},
                        {"area_um2", row.area}});
    }
    out["breakdown"] = std::move(rows);
    return out;
}

// Alias groups for dotted sweep paths: setting one spelling must displace
// any other spelling already present in the document.
const std::vector<std::vector<std::string>> kAliasGroups = {
    {"data_bits", "data_type"},
    {"rows", "row"},
    {"columns", "column"},
    {"sensing_circuit", "sensing_circuit_type"},
    {"horizontal_merge", "horizontal_merge_type"},
    {"vertical_merge", "vertical_merge_type"},
    {"variation_spec", "variation_specification"},
};

void apply_override(ordered_json& doc, const std::string& dotted, const json& value) {
    std::size_t dot = dotted.find('.');
    if (dot == std::string::npos) {
        doc[dotted] = value;
        return;
    }
    std::string section = dotted.substr(0, dot);
    std::string field = dotted.substr(dot + 1);
    if (field.empty() || field.find('.') != std::string::npos)
        throw Error(ErrorCode::BadValue, "sweep path \"" + dotted + "\" must be section.field");
    if (!doc.contains(section)) doc[section] = ordered_json::object();
    for (const auto& group : kAliasGroups) {
        if (std::find(group.begin(), group.end(), field) == group.end()) continue;
        for (const auto& alias : group) doc[section].erase(alias);
    }
    doc[section][field] = value;
}

std::string csv_cell(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

// One design point of a sweep.
struct SweepPoint {
    std::vector<json> values;  // aligned with the sweep paths
    std::string status = "ok";
    double accuracy = -1.0;  // < 0 when not computed
    bool have_perf = false;
    double latency = 0.0;
    double energy = 0.0;
    double edp = 0.0;
    bool approximate = false;
};

}  // namespace

int cmd_simulate(const SimulateOptions& opt) {
    SimConfig cfg;
    std::vector<Violation> violations;
    try {
        cfg = load_config(opt.config_path, opt.seed, violations);
    } catch (const Error& e) {
        return report_error(e, e.code() == ErrorCode::FileNotFound ? kExitUsage : kExitValidation);
    }
    print_violations(violations);
    if (has_errors(violations)) return kExitValidation;

    try {
        CellMatrix stored = load_data_csv(opt.stored_path);
        CellMatrix query_cells = load_data_csv(opt.query_path);
        RealMatrix queries = to_reals(query_cells);

        CamState state = write(stored, cfg);
        std::vector<SearchResult> results = query(state, queries);

        ordered_json report;
        report["results"] = results_to_json(results);

        if (!opt.stored_labels_path.empty()) {
            std::vector<int> entry_labels = load_labels_csv(opt.stored_labels_path);
            std::vector<int> query_labels = load_labels_csv(opt.query_labels_path);
            if (entry_labels.size() != stored.size())
                throw Error(ErrorCode::LengthMismatch,
                            "stored label count " + std::to_string(entry_labels.size()) +
                                " != stored entries " + std::to_string(stored.size()));
            report["accuracy"] = evaluate_accuracy(results, entry_labels, query_labels);
        }

        ArchitectureSpec arch = estimate_architecture(cfg, static_cast<int>(stored.size()),
                                                      static_cast<int>(stored.front().size()));
        if (!opt.cost_model_path.empty()) {
            CostModel cm = load_cost_model(opt.cost_model_path);
            PerfReport perf =
                predict(arch, cm, Operation::Search, static_cast<int>(queries.size()));
            report["performance"] = performance_to_json(perf);
        }
        report["architecture"] = architecture_to_json(arch);

        write_file(opt.out_path, report.dump(2) + "\n");
        return kExitOk;
    } catch (const Error& e) {
        return report_error(e, e.code() == ErrorCode::FileNotFound ? kExitUsage : kExitRuntime);
    }
}

int cmd_validate(const std::string& config_path) {
    std::string text;
    try {
        text = read_file(config_path);
    } catch (const Error& e) {
        return report_error(e, kExitUsage);
    }
    try {
        SimConfig cfg = parse_config(text);
        std::vector<Violation> violations = validate(cfg);
        print_violations(violations);
        if (has_errors(violations)) return kExitValidation;
        std::cout << "configuration is valid\n";
        return kExitOk;
    } catch (const Error& e) {
        return report_error(e, kExitValidation);
    }
}

int cmd_sweep(const SweepOptions& opt) {
    ordered_json base_doc;
    ordered_json sweep_spec;
    std::vector<Violation> base_violations;
    try {
        base_doc = ordered_json::parse(read_file(opt.config_path));
        SimConfig base_cfg = parse_config(base_doc.dump());
        base_violations = validate(base_cfg);
        print_violations(base_violations);
        if (has_errors(base_violations)) return kExitValidation;
        try {
            sweep_spec = ordered_json::parse(read_file(opt.sweep_path));
        } catch (const ordered_json::parse_error& e) {
            throw Error(ErrorCode::SyntaxError, e.what());
        }
        if (!sweep_spec.is_object() || sweep_spec.empty())
            throw Error(ErrorCode::BadValue,
                        "sweep spec must map dotted config paths to value lists");
        for (auto it = sweep_spec.begin(); it != sweep_spec.end(); ++it) {
            if (!it->is_array() || it->empty())
                throw Error(ErrorCode::BadValue,
                            "sweep values for " + it.key() + " must be a non-empty list");
        }
    } catch (const Error& e) {
        return report_error(e, e.code() == ErrorCode::FileNotFound ? kExitUsage : kExitValidation);
    } catch (const ordered_json::parse_error& e) {
        std::cerr << "camsim: SyntaxError: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        CellMatrix stored = load_data_csv(opt.stored_path);
        CellMatrix query_cells = load_data_csv(opt.query_path);
        RealMatrix queries = to_reals(query_cells);

        std::vector<int> entry_labels;
        std::vector<int> query_labels;
        if (!opt.stored_labels_path.empty()) {
            entry_labels = load_labels_csv(opt.stored_labels_path);
            query_labels = load_labels_csv(opt.query_labels_path);
            if (entry_labels.size() != stored.size())
                throw Error(ErrorCode::LengthMismatch,
                            "stored label count " + std::to_string(entry_labels.size()) +
                                " != stored entries " + std::to_string(stored.size()));
        }

        std::optional<CostModel> cost_model;
        if (!opt.cost_model_path.empty()) cost_model = load_cost_model(opt.cost_model_path);

        std::vector<std::string> paths;
        std::vector<std::vector<json>> value_lists;
        for (auto it = sweep_spec.begin(); it != sweep_spec.end(); ++it) {
            paths.push_back(it.key());
            value_lists.emplace_back(it->begin(), it->end());
        }

        // Row-major Cartesian product: the last listed path varies fastest.
        std::size_t total = 1;
        for (const auto& vals : value_lists) total *= vals.size();

        std::vector<SweepPoint> points;
        points.reserve(total);
        for (std::size_t index = 0; index < total; ++index) {
            SweepPoint point;
            std::size_t rest = index;
            point.values.resize(paths.size());
            for (std::size_t p = paths.size(); p-- > 0;) {
                point.values[p] = value_lists[p][rest % value_lists[p].size()];
                rest /= value_lists[p].size();
            }

            ordered_json doc = base_doc;
            for (std::size_t p = 0; p < paths.size(); ++p)
                apply_override(doc, paths[p], point.values[p]);

            try {
                SimConfig cfg = parse_config(doc.dump());
                if (opt.seed) cfg.device.seed = *opt.seed;
                std::vector<Violation> violations = validate(cfg);
                if (has_errors(violations)) {
                    point.status = "invalid";
                    points.push_back(std::move(point));
                    continue;
                }

                double accuracy_sum = 0.0;
                int repeats = std::max(opt.repeats, 1);
                bool first = true;
                for (int rep = 0; rep < repeats; ++rep) {
                    SimConfig rep_cfg = cfg;
                    rep_cfg.device.seed = cfg.device.seed + static_cast<std::uint64_t>(rep);
                    CamState state = write(stored, rep_cfg);
                    std::vector<SearchResult> results = query(state, queries);
                    if (!query_labels.empty())
                        accuracy_sum += evaluate_accuracy(results, entry_labels, query_labels);
                    if (first) {
                        point.approximate = state.plan.approximate;
                        first = false;
                    }
                }
                if (!query_labels.empty()) point.accuracy = accuracy_sum / repeats;

                if (cost_model) {
                    ArchitectureSpec arch =
                        estimate_architecture(cfg, static_cast<int>(stored.size()),
                                              static_cast<int>(stored.front().size()));
                    PerfReport perf = predict(arch, *cost_model, Operation::Search,
                                              static_cast<int>(queries.size()));
                    point.have_perf = true;
                    point.latency = perf.latency;
                    point.energy = perf.energy;
                    point.edp = perf.edp;
                }
            } catch (const Error& e) {
                switch (e.code()) {
                    case ErrorCode::UnsupportedMerge: point.status = "unsupported"; break;
                    case ErrorCode::SyntaxError:
                    case ErrorCode::MissingField:
                    case ErrorCode::BadValue: point.status = "invalid"; break;
                    default: point.status = "error"; break;
                }
                std::cerr << "camsim: sweep point " << index << " " << point.status << ": "
                          << e.what() << "\n";
            }
            points.push_back(std::move(point));
        }

        std::ostringstream csv;
        for (const auto& path : paths) csv << path << ",";
        csv << "status,accuracy,latency_ns,energy_pj,edp_pj_ns,approximate\n";
        for (const SweepPoint& point : points) {
            for (const auto& v : point.values) csv << csv_cell(v) << ",";
            csv << point.status << ",";
            if (point.status == "ok" && point.accuracy >= 0) csv << point.accuracy;
            csv << ",";
            if (point.status == "ok" && point.have_perf) csv << point.latency;
            csv << ",";
            if (point.status == "ok" && point.have_perf) csv << point.energy;
            csv << ",";
            if (point.status == "ok" && point.have_perf) csv << point.edp;
            csv << ",";
            csv << (point.status == "ok" ? (point.approximate ? "true" : "false") : "") << "\n";
        }
        write_file(opt.out_path, csv.str());
        return kExitOk;
    } catch (const Error& e) {
        return report_error(e, e.code() == ErrorCode::FileNotFound ? kExitUsage : kExitRuntime);
    }
}

}  // namespace camsim::cli
