#include "camsim/subarray.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "camsim/errors.hpp"

namespace camsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-dimension deviation between one query level and one stored cell.
double cell_deviation(double q, const Cell& cell) {
    switch (cell.kind) {
        case Cell::Kind::Wildcard: return 0.0;
        case Cell::Kind::Numeric: return std::abs(cell.value - q);
        case Cell::Kind::Range:
            if (q < cell.lo) return cell.lo - q;
            if (q > cell.hi) return q - cell.hi;
            return 0.0;
    }
    return 0.0;
}

// Hamming works on nearest-level sensing: a numeric cell mismatches iff the
// perturbed level is closer to a different level than the queried one.
bool cell_mismatch(double q, const Cell& cell) {
    if (cell.kind == Cell::Kind::Wildcard) return false;
    return cell_deviation(q, cell) > 0.5;
}

}  // namespace

double row_distance_raw(const std::vector<int>& query_segment, const CellRow& row,
                        DistanceFunction metric) {
    if (query_segment.size() != row.size())
        throw Error(ErrorCode::LengthMismatch,
                    "query segment length " + std::to_string(query_segment.size()) +
                        " != row length " + std::to_string(row.size()));
    double acc = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        double q = static_cast<double>(query_segment[i]);
        switch (metric) {
            case DistanceFunction::Hamming: acc += cell_mismatch(q, row[i]) ? 1.0 : 0.0; break;
            case DistanceFunction::L1: acc += cell_deviation(q, row[i]); break;
            case DistanceFunction::L2: {
                double d = cell_deviation(q, row[i]);
                acc += d * d;
                break;
            }
        }
    }
    return acc;
}

double distance_from_raw(double raw, DistanceFunction metric) {
    return metric == DistanceFunction::L2 ? std::sqrt(raw) : raw;
}

double row_distance(const std::vector<int>& query_segment, const CellRow& row,
                    DistanceFunction metric) {
    return distance_from_raw(row_distance_raw(query_segment, row, metric), metric);
}

SubarrayResult search_subarray(const SubarrayBlock& block, const std::vector<int>& query_segment,
                               const MatchSpec& match, DistanceFunction metric,
                               double sensing_limit) {
    SubarrayResult result;
    result.distances.assign(block.rows.size(), kInf);
    result.raw.assign(block.rows.size(), kInf);
    result.best_distance = kInf;

    std::vector<double> valid_distances;
    for (std::size_t r = 0; r < block.rows.size(); ++r) {
        if (!block.valid[r]) continue;
        double raw = row_distance_raw(query_segment, block.rows[r], metric);
        double d = distance_from_raw(raw, metric);
        result.raw[r] = raw;
        result.distances[r] = d;
        result.best_distance = std::min(result.best_distance, d);
        valid_distances.push_back(d);
    }
    if (valid_distances.empty())
        throw Error(ErrorCode::NoValidRows, "subarray block contains only padded rows");

    double cutoff = 0.0;
    switch (match.type) {
        case MatchType::Exact: cutoff = sensing_limit; break;
        case MatchType::Threshold: cutoff = match.threshold + sensing_limit; break;
        case MatchType::Best: {
            std::sort(valid_distances.begin(), valid_distances.end());
            std::size_t k = std::min<std::size_t>(std::max(match.k, 1), valid_distances.size());
            cutoff = valid_distances[k - 1] + sensing_limit;
            break;
        }
    }

    for (std::size_t r = 0; r < block.rows.size(); ++r) {
        if (!block.valid[r]) continue;
        if (result.distances[r] <= cutoff) result.matched_local_rows.push_back(static_cast<int>(r));
    }
    return result;
}

}  // namespace camsim
