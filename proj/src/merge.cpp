#include "camsim/merge.hpp"

#include <algorithm>
#include <map>

#include "camsim/errors.hpp"

namespace camsim {

MergePlan plan_merge(const SimConfig& config, const PartitionGrid& grid) {
    MergePlan plan;
    const MatchType match = config.app.match_type;
    const bool horizontal_needed = grid.col_groups > 1;
    const bool vertical_needed = grid.row_groups > 1;

    if (horizontal_needed && match == MatchType::Threshold)
        throw Error(ErrorCode::UnsupportedMerge,
                    "threshold match cannot merge horizontally (dimensions " +
                        std::to_string(grid.total_dims) + " > columns " +
                        std::to_string(grid.cols_per_subarray) + ")");
    if (horizontal_needed && vertical_needed && match == MatchType::Best && config.strict_merge)
        throw Error(ErrorCode::UnsupportedMerge,
                    "best match with both horizontal and vertical splits has no exact merge "
                    "scheme; set strict_merge=false to allow the approximate combined path");

    if (horizontal_needed) {
        switch (config.arch.horizontal_merge) {
            case HorizontalMergeType::And:
                if (match == MatchType::Best)
                    throw Error(ErrorCode::BadScheme, "and merge cannot realize best match");
                plan.horizontal = HorizontalScheme::And;
                break;
            case HorizontalMergeType::Voting:
                if (match == MatchType::Exact)
                    throw Error(ErrorCode::BadScheme, "voting merge cannot realize exact match");
                plan.horizontal = HorizontalScheme::Voting;
                break;
        }
    }

    if (vertical_needed) {
        switch (config.arch.vertical_merge) {
            case VerticalMergeType::Gather:
                if (match == MatchType::Best)
                    throw Error(ErrorCode::BadScheme, "gather merge cannot realize best match");
                plan.vertical = VerticalScheme::Gather;
                break;
            case VerticalMergeType::Comparator:
                if (match != MatchType::Best)
                    throw Error(ErrorCode::BadScheme,
                                "comparator merge applies to best match only");
                plan.vertical = VerticalScheme::Comparator;
                break;
        }
    }

    plan.combined_best = horizontal_needed && vertical_needed && match == MatchType::Best;
    plan.approximate = plan.horizontal == HorizontalScheme::Voting || plan.combined_best;
    return plan;
}

std::vector<int> merge_horizontal_and(const std::vector<std::vector<int>>& results) {
    if (results.empty()) return {};
    std::vector<int> acc = results.front();
    for (std::size_t i = 1; i < results.size(); ++i) {
        std::vector<int> next;
        std::set_intersection(acc.begin(), acc.end(), results[i].begin(), results[i].end(),
                              std::back_inserter(next));
        acc = std::move(next);
    }
    return acc;
}

namespace {

// Top-k candidates by descending vote count, ascending index on ties; rows
// tied with the k-th vote count are kept as well.
template <typename Entry>  // Entry = pair<index, votes>
std::vector<Entry> rank_votes(std::vector<Entry> candidates, int k) {
    std::sort(candidates.begin(), candidates.end(), [](const Entry& a, const Entry& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (static_cast<int>(candidates.size()) > k) {
        int cutoff = candidates[k - 1].second;
        auto first_below = std::find_if(candidates.begin() + k, candidates.end(),
                                        [&](const Entry& e) { return e.second < cutoff; });
        candidates.erase(first_below, candidates.end());
    }
    return candidates;
}

}  // namespace

VotingOutcome merge_horizontal_voting(const std::vector<SubarrayResult>& results, int k) {
    std::map<int, int> votes;
    for (const SubarrayResult& r : results)
        for (int row : r.matched_local_rows) votes[row] += 1;

    std::vector<std::pair<int, int>> candidates(votes.begin(), votes.end());
    candidates = rank_votes(std::move(candidates), std::max(k, 1));

    VotingOutcome out;
    std::sort(candidates.begin(), candidates.end());
    for (auto [row, count] : candidates) {
        out.winners.push_back(row);
        out.vote_counts.push_back(count);
    }
    return out;
}

std::vector<int> merge_vertical_gather(const std::vector<std::vector<int>>& results,
                                       const PartitionGrid& grid) {
    std::vector<int> merged;
    for (std::size_t rg = 0; rg < results.size(); ++rg) {
        SubarrayAddress addr{static_cast<int>(rg), 0};
        for (int row : results[rg]) merged.push_back(global_index(addr, row, grid));
    }
    std::sort(merged.begin(), merged.end());
    return merged;
}

std::vector<int> merge_vertical_comparator(const std::vector<SubarrayResult>& results, int k,
                                           double sensing_limit, const PartitionGrid& grid) {
    std::vector<std::pair<int, double>> rows;  // (global index, distance)
    for (std::size_t rg = 0; rg < results.size(); ++rg) {
        auto [start, end] = grid.row_boundaries[rg];
        int valid_rows = end - start;
        for (int r = 0; r < valid_rows; ++r)
            rows.emplace_back(start + r, results[rg].distances[r]);
    }
    if (rows.empty()) return {};

    std::vector<double> distances;
    distances.reserve(rows.size());
    for (const auto& [idx, d] : rows) distances.push_back(d);
    std::sort(distances.begin(), distances.end());
    std::size_t kk = std::min<std::size_t>(std::max(k, 1), distances.size());
    double cutoff = distances[kk - 1] + sensing_limit;

    std::vector<int> merged;
    for (const auto& [idx, d] : rows)
        if (d <= cutoff) merged.push_back(idx);
    std::sort(merged.begin(), merged.end());
    return merged;
}

std::vector<int> merge_combined_votes(const std::vector<VotingOutcome>& per_row_group, int k,
                                      const PartitionGrid& grid) {
    std::vector<std::pair<int, int>> candidates;  // (global index, votes)
    for (std::size_t rg = 0; rg < per_row_group.size(); ++rg) {
        SubarrayAddress addr{static_cast<int>(rg), 0};
        const VotingOutcome& v = per_row_group[rg];
        for (std::size_t i = 0; i < v.winners.size(); ++i)
            candidates.emplace_back(global_index(addr, v.winners[i], grid), v.vote_counts[i]);
    }
    candidates = rank_votes(std::move(candidates), std::max(k, 1));
    std::vector<int> merged;
    merged.reserve(candidates.size());
    for (auto [idx, votes] : candidates) merged.push_back(idx);
    std::sort(merged.begin(), merged.end());
    return merged;
}

}  // namespace camsim
