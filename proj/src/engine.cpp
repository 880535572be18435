#include "camsim/engine.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "camsim/errors.hpp"
#include "camsim/subarray.hpp"

namespace camsim {

namespace {

void throw_validation_errors(const std::vector<Violation>& violations) {
    for (const Violation& v : violations) {
        if (v.severity != Severity::Error) continue;
        ErrorCode code = ErrorCode::BadValue;
        if (v.code == "MissingField") code = ErrorCode::MissingField;
        throw Error(code, "invalid configuration: " + v.message);
    }
}

void check_cell_kinds(const CellMatrix& stored, CellType cell_type) {
    for (std::size_t r = 0; r < stored.size(); ++r) {
        for (std::size_t c = 0; c < stored[r].size(); ++c) {
            const Cell& cell = stored[r][c];
            if (cell.kind == Cell::Kind::Wildcard && cell_type != CellType::TCAM)
                throw Error(ErrorCode::BadValue,
                            "wildcard cell at entry " + std::to_string(r) + ", dim " +
                                std::to_string(c) + " requires tcam");
            if (cell.kind == Cell::Kind::Range && cell_type != CellType::ACAM)
                throw Error(ErrorCode::BadValue, "range cell at entry " + std::to_string(r) +
                                                     ", dim " + std::to_string(c) +
                                                     " requires acam");
        }
    }
}

std::vector<double> attach_distances(const std::vector<int>& matched,
                                     const std::vector<std::vector<SubarrayResult>>& results,
                                     const PartitionGrid& grid, DistanceFunction metric) {
    std::vector<double> out;
    out.reserve(matched.size());
    for (int global : matched) {
        int rg = global / grid.rows_per_subarray;
        int local = global - rg * grid.rows_per_subarray;
        double raw = 0.0;
        for (int cg = 0; cg < grid.col_groups; ++cg) raw += results[rg][cg].raw[local];
        out.push_back(distance_from_raw(raw, metric));
    }
    return out;
}

}  // namespace

CamState write(const CellMatrix& stored, const SimConfig& config) {
    throw_validation_errors(validate(config));
    if (stored.empty() || stored.front().empty())
        throw Error(ErrorCode::EmptyData, "stored data must have at least one entry and dimension");
    check_cell_kinds(stored, config.circuit.cell_type);

    CamState state;
    state.config = config;
    state.quant_range = infer_range_cells(stored);

    CellMatrix quantized = quantize_cells(stored, config.app.data_bits, state.quant_range);

    state.grid = plan_partition(static_cast<int>(stored.size()),
                                static_cast<int>(stored.front().size()), config.circuit.rows,
                                config.circuit.columns);
    // Fail unsupported merge combinations at write time.
    state.plan = plan_merge(config, state.grid);

    state.blocks = slice_stored(quantized, state.grid);
    state.variation = make_variation_spec(config.device);
    for (int rg = 0; rg < state.grid.row_groups; ++rg) {
        for (int cg = 0; cg < state.grid.col_groups; ++cg) {
            state.blocks[rg][cg] =
                apply_d2d(state.blocks[rg][cg], state.variation, state.grid.row_boundaries[rg].first,
                          state.grid.col_boundaries[cg].first);
        }
    }
    return state;
}

CamState write(const RealMatrix& stored, const SimConfig& config) {
    return write(to_cells(stored), config);
}

std::vector<SearchResult> query(const CamState& state, const RealMatrix& queries) {
    const PartitionGrid& grid = state.grid;
    const MatchSpec match = state.config.match_spec();
    const DistanceFunction metric = state.config.app.distance_function;
    const double sl = state.config.circuit.sensing_limit;

    std::vector<SearchResult> out;
    out.reserve(queries.size());
    for (std::size_t q = 0; q < queries.size(); ++q) {
        if (static_cast<int>(queries[q].size()) != grid.total_dims)
            throw Error(ErrorCode::ShapeMismatch,
                        "query " + std::to_string(q) + " width " +
                            std::to_string(queries[q].size()) + " != stored width " +
                            std::to_string(grid.total_dims));

        std::vector<int> levels =
            quantize_vector(queries[q], state.config.app.data_bits, state.quant_range);
        std::vector<std::vector<int>> segments = segment_query(levels, grid);

        std::vector<std::vector<SubarrayResult>> results(grid.row_groups);
        for (int rg = 0; rg < grid.row_groups; ++rg) {
            results[rg].reserve(grid.col_groups);
            for (int cg = 0; cg < grid.col_groups; ++cg) {
                SubarrayBlock block =
                    sample_c2c(state.blocks[rg][cg], state.variation, q,
                               grid.row_boundaries[rg].first, grid.col_boundaries[cg].first);
                results[rg].push_back(search_subarray(block, segments[cg], match, metric, sl));
            }
        }

        SearchResult result;
        result.query_ordinal = static_cast<int>(q);
        result.approximate = state.plan.approximate;

        if (state.plan.combined_best) {
            std::vector<VotingOutcome> outcomes;
            outcomes.reserve(grid.row_groups);
            for (int rg = 0; rg < grid.row_groups; ++rg)
                outcomes.push_back(merge_horizontal_voting(results[rg], match.k));
            result.matched_indices = merge_combined_votes(outcomes, match.k, grid);
            result.warnings.push_back(
                "combined best-match merge is approximate; distances omitted");
        } else if (match.type == MatchType::Best && state.plan.horizontal == HorizontalScheme::Voting) {
            VotingOutcome outcome = merge_horizontal_voting(results[0], match.k);
            SubarrayAddress addr{0, 0};
            for (int row : outcome.winners)
                result.matched_indices.push_back(global_index(addr, row, grid));
            result.warnings.push_back("voting merge is approximate; distances omitted");
        } else if (match.type == MatchType::Best) {
            std::vector<SubarrayResult> column;
            column.reserve(grid.row_groups);
            for (int rg = 0; rg < grid.row_groups; ++rg) column.push_back(results[rg][0]);
            result.matched_indices = merge_vertical_comparator(column, match.k, sl, grid);
            result.distances = attach_distances(result.matched_indices, results, grid, metric);
        } else {
            std::vector<std::vector<int>> locals(grid.row_groups);
            for (int rg = 0; rg < grid.row_groups; ++rg) {
                if (grid.col_groups == 1) {
                    locals[rg] = results[rg][0].matched_local_rows;
                } else {
                    std::vector<std::vector<int>> sets;
                    sets.reserve(grid.col_groups);
                    for (int cg = 0; cg < grid.col_groups; ++cg)
                        sets.push_back(results[rg][cg].matched_local_rows);
                    locals[rg] = merge_horizontal_and(sets);
                }
            }
            result.matched_indices = merge_vertical_gather(locals, grid);
            result.distances = attach_distances(result.matched_indices, results, grid, metric);
        }

        out.push_back(std::move(result));
    }
    return out;
}

double evaluate_accuracy(const std::vector<SearchResult>& results,
                         const std::vector<int>& stored_labels,
                         const std::vector<int>& query_labels) {
    if (results.size() != query_labels.size())
        throw Error(ErrorCode::LengthMismatch,
                    "results count " + std::to_string(results.size()) + " != query labels " +
                        std::to_string(query_labels.size()));
    if (results.empty()) return 0.0;

    int correct = 0;
    for (std::size_t q = 0; q < results.size(); ++q) {
        std::map<int, int> counts;
        for (int idx : results[q].matched_indices) {
            if (idx < 0 || idx >= static_cast<int>(stored_labels.size()))
                throw Error(ErrorCode::LengthMismatch,
                            "matched index " + std::to_string(idx) + " has no stored label");
            counts[stored_labels[idx]] += 1;
        }
        if (counts.empty()) continue;  // empty match set: incorrect
        int best_count = 0;
        int best_label = 0;
        bool tie = false;
        for (auto [label, count] : counts) {
            if (count > best_count) {
                best_count = count;
                best_label = label;
                tie = false;
            } else if (count == best_count) {
                tie = true;
            }
        }
        if (!tie && best_label == query_labels[q]) correct += 1;
    }
    return static_cast<double>(correct) / static_cast<double>(results.size());
}

}  // namespace camsim
