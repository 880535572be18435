#pragma once

#include <vector>

#include "camsim/config.hpp"
#include "camsim/mapping.hpp"
#include "camsim/subarray.hpp"

namespace camsim {

enum class HorizontalScheme { NoneNeeded, And, Voting };
enum class VerticalScheme { NoneNeeded, Gather, Comparator };

struct MergePlan {
    HorizontalScheme horizontal = HorizontalScheme::NoneNeeded;
    VerticalScheme vertical = VerticalScheme::NoneNeeded;
    // True when Voting is involved or the combined best-match path is taken;
    // such results are approximate and carry no distances.
    bool approximate = false;
    // Set on the Best-match double-split path allowed by strict_merge=false.
    bool combined_best = false;
};

/// Select merge schemes for the grid. Throws UnsupportedMerge for Threshold
/// with a column split and (in strict mode) Best with both splits; throws
/// BadScheme when the configured scheme cannot realize the match type on a
/// dimension that actually splits.
MergePlan plan_merge(const SimConfig& config, const PartitionGrid& grid);

/// Exact match across column groups: set intersection.
std::vector<int> merge_horizontal_and(const std::vector<std::vector<int>>& results);

struct VotingOutcome {
    std::vector<int> winners;      // ascending
    std::vector<int> vote_counts;  // aligned with winners
};

/// Approximate best match across column groups: each group votes for its
/// matched rows; winners are the top-k vote counts plus ties at the k-th.
VotingOutcome merge_horizontal_voting(const std::vector<SubarrayResult>& results, int k);

/// Exact/threshold vertical merge: union of per-row-group sets in global
/// entry indices, ascending.
std::vector<int> merge_vertical_gather(const std::vector<std::vector<int>>& results,
                                       const PartitionGrid& grid);

/// Best-match vertical merge: global rows with distance <= d(k) + SL where
/// d(k) ranks all valid rows of all row groups.
std::vector<int> merge_vertical_comparator(const std::vector<SubarrayResult>& results, int k,
                                           double sensing_limit, const PartitionGrid& grid);

/// Non-strict combined path: per-row-group voting winners re-ranked globally
/// by vote count (ties by ascending global index), top-k plus ties.
std::vector<int> merge_combined_votes(const std::vector<VotingOutcome>& per_row_group, int k,
                                      const PartitionGrid& grid);

}  // namespace camsim
