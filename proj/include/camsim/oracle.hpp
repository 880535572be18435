#pragma once

#include <vector>

#include "camsim/types.hpp"

namespace camsim {

/// Brute-force references used to validate the simulator. Full-width, no
/// partition, no variation, SL = 0 semantics:
///   Exact:     rows at distance 0
///   Best:      k smallest distances, ties included
///   Threshold: rows with distance <= theta
/// Works on quantized levels or raw reals alike. Throws ShapeMismatch.
std::vector<int> oracle_search(const RealMatrix& stored, const std::vector<double>& query,
                               const MatchSpec& match, DistanceFunction metric);

std::vector<double> oracle_distances(const RealMatrix& stored, const std::vector<double>& query,
                                     DistanceFunction metric);

struct OracleVotes {
    std::vector<int> winners;
    std::vector<int> vote_counts;
};

/// Voting reference: per column segment, the segment-restricted Best set
/// votes; plurality winners with the merge module's tie rule.
OracleVotes oracle_voting(const RealMatrix& stored, const std::vector<double>& query,
                          const std::vector<std::pair<int, int>>& col_boundaries, int k,
                          DistanceFunction metric);

}  // namespace camsim
