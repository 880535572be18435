#include "camsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "camsim/errors.hpp"

namespace camsim {

namespace {

double direct_distance(const std::vector<double>& stored_row, const std::vector<double>& query,
                       DistanceFunction metric) {
    if (stored_row.size() != query.size())
        throw Error(ErrorCode::ShapeMismatch,
                    "stored row length " + std::to_string(stored_row.size()) +
                        " != query length " + std::to_string(query.size()));
    double acc = 0.0;
    for (std::size_t i = 0; i < query.size(); ++i) {
        double diff = std::abs(stored_row[i] - query[i]);
        switch (metric) {
            case DistanceFunction::Hamming: acc += diff > 0.5 ? 1.0 : 0.0; break;
            case DistanceFunction::L1: acc += diff; break;
            case DistanceFunction::L2: acc += diff * diff; break;
        }
    }
    return metric == DistanceFunction::L2 ? std::sqrt(acc) : acc;
}

std::vector<int> select_matches(const std::vector<double>& distances, const MatchSpec& match) {
    std::vector<int> out;
    switch (match.type) {
        case MatchType::Exact:
            for (std::size_t i = 0; i < distances.size(); ++i)
                if (distances[i] == 0.0) out.push_back(static_cast<int>(i));
            break;
        case MatchType::Threshold:
            for (std::size_t i = 0; i < distances.size(); ++i)
                if (distances[i] <= match.threshold) out.push_back(static_cast<int>(i));
            break;
        case MatchType::Best: {
            std::vector<double> sorted = distances;
            std::sort(sorted.begin(), sorted.end());
            std::size_t k = std::min<std::size_t>(std::max(match.k, 1), sorted.size());
            double cutoff = sorted[k - 1];
            for (std::size_t i = 0; i < distances.size(); ++i)
                if (distances[i] <= cutoff) out.push_back(static_cast<int>(i));
            break;
        }
    }
    return out;
}

}  // namespace

std::vector<double> oracle_distances(const RealMatrix& stored, const std::vector<double>& query,
                                     DistanceFunction metric) {
    std::vector<double> distances;
    distances.reserve(stored.size());
    for (const auto& row : stored) distances.push_back(direct_distance(row, query, metric));
    return distances;
}

std::vector<int> oracle_search(const RealMatrix& stored, const std::vector<double>& query,
                               const MatchSpec& match, DistanceFunction metric) {
    return select_matches(oracle_distances(stored, query, metric), match);
}

OracleVotes oracle_voting(const RealMatrix& stored, const std::vector<double>& query,
                          const std::vector<std::pair<int, int>>& col_boundaries, int k,
                          DistanceFunction metric) {
    std::map<int, int> votes;
    for (auto [start, end] : col_boundaries) {
        RealMatrix segment_rows;
        segment_rows.reserve(stored.size());
        for (const auto& row : stored) {
            if (start < 0 || end > static_cast<int>(row.size()) || start >= end)
                throw Error(ErrorCode::ShapeMismatch, "column boundary outside the stored width");
            segment_rows.emplace_back(row.begin() + start, row.begin() + end);
        }
        std::vector<double> segment_query(query.begin() + start, query.begin() + end);
        for (int row : oracle_search(segment_rows, segment_query, MatchSpec::best(k), metric))
            votes[row] += 1;
    }

    std::vector<std::pair<int, int>> candidates(votes.begin(), votes.end());
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    int kk = std::max(k, 1);
    if (static_cast<int>(candidates.size()) > kk) {
        int cutoff = candidates[kk - 1].second;
        auto first_below = std::find_if(candidates.begin() + kk, candidates.end(),
                                        [&](const auto& e) { return e.second < cutoff; });
        candidates.erase(first_below, candidates.end());
    }
    std::sort(candidates.begin(), candidates.end());

    OracleVotes out;
    for (auto [row, count] : candidates) {
        out.winners.push_back(row);
        out.vote_counts.push_back(count);
    }
    return out;
}

}  // namespace camsim
