#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "camsim/config.hpp"
#include "camsim/mapping.hpp"
#include "camsim/merge.hpp"
#include "camsim/quantization.hpp"
#include "camsim/variation.hpp"

namespace camsim {

/// Immutable programmed state of the accelerator: quantized, D2D-perturbed
/// stored data tiled over the subarray grid.
struct CamState {
    SimConfig config;
    PartitionGrid grid;
    MergePlan plan;
    BlockGrid blocks;
    QuantRange quant_range;
    VariationSpec variation;
};

struct SearchResult {
    int query_ordinal = 0;
    std::vector<int> matched_indices;  // ascending global entry indices
    std::vector<double> distances;     // aligned with matched_indices; empty on voting paths
    bool approximate = false;
    std::vector<std::string> warnings;
};

/// Write simulation: infer_range -> quantize -> partition -> slice ->
/// apply_d2d. Merge feasibility is checked here so misconfigurations fail at
/// write time. Throws validation errors and UnsupportedMerge/BadScheme.
CamState write(const CellMatrix& stored, const SimConfig& config);

CamState write(const RealMatrix& stored, const SimConfig& config);

/// Query simulation for a batch; per-query results are independent of
/// evaluation order. Throws ShapeMismatch when widths differ.
std::vector<SearchResult> query(const CamState& state, const RealMatrix& queries);

/// Nearest-prototype scoring: a query counts as correct iff the plurality
/// label among its matched entries equals its own label; ties and empty
/// match sets count as incorrect.
double evaluate_accuracy(const std::vector<SearchResult>& results,
                         const std::vector<int>& stored_labels,
                         const std::vector<int>& query_labels);

}  // namespace camsim
