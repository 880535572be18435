#pragma once

#include <vector>

#include "camsim/mapping.hpp"
#include "camsim/types.hpp"

namespace camsim {

/// Search outcome of one subarray. Distances are carried for every row
/// (+infinity for padded rows) so upper merge stages can re-rank; raw holds
/// the pre-transform accumulation (squared sum for L2, plain sum otherwise)
/// which is additive across column groups.
struct SubarrayResult {
    std::vector<int> matched_local_rows;  // ascending, valid rows only
    std::vector<double> distances;        // per local row; +inf where invalid
    std::vector<double> raw;              // per local row; +inf where invalid
    double best_distance = 0.0;           // min over valid rows
};

/// Distance between a query segment and one stored row. Per-cell rules:
/// wildcards contribute nothing; ranges contribute the distance to the
/// nearest bound (0 inside); numeric cells contribute |level - query|, and
/// under Hamming mismatch iff |level - query| > 0.5 (nearest-level sensing).
/// Throws LengthMismatch.
double row_distance(const std::vector<int>& query_segment, const CellRow& row,
                    DistanceFunction metric);

/// Additive form of row_distance: Hamming/L1 sums, L2 squared sum.
double row_distance_raw(const std::vector<int>& query_segment, const CellRow& row,
                        DistanceFunction metric);

double distance_from_raw(double raw, DistanceFunction metric);

/// Simulate one subarray search. Matched rows:
///   Exact:     distance <= SL
///   Best:      distance <= d(k) + SL, d(k) = k-th smallest over valid rows
///   Threshold: distance <= theta + SL
/// Padded rows never match. Throws NoValidRows on an all-padded block.
SubarrayResult search_subarray(const SubarrayBlock& block, const std::vector<int>& query_segment,
                               const MatchSpec& match, DistanceFunction metric,
                               double sensing_limit);

}  // namespace camsim
