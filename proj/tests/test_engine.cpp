#include <doctest.h>

#include <cmath>
#include <random>

#include "camsim/engine.hpp"
#include "camsim/errors.hpp"
#include "camsim/oracle.hpp"

using namespace camsim;

namespace {

SimConfig base_config(MatchType match, DistanceFunction metric, int bits, int rows, int columns) {
    SimConfig cfg;
    cfg.app.match_type = match;
    cfg.app.distance_function = metric;
    cfg.app.data_bits = bits;
    cfg.app.match_parameter = match == MatchType::Best ? 1.0 : 0.0;
    cfg.circuit.sensing_circuit = match;
    cfg.circuit.rows = rows;
    cfg.circuit.columns = columns;
    cfg.circuit.cell_type = bits == 1 ? CellType::BCAM : CellType::MCAM;
    cfg.arch.horizontal_merge =
        match == MatchType::Best ? HorizontalMergeType::Voting : HorizontalMergeType::And;
    cfg.arch.vertical_merge =
        match == MatchType::Best ? VerticalMergeType::Comparator : VerticalMergeType::Gather;
    return cfg;
}

// Random level matrix attaining both alphabet endpoints, so quantization is
// the identity on it.
RealMatrix random_levels(std::mt19937_64& rng, int entries, int dims, int max_level) {
    std::uniform_int_distribution<int> level(0, max_level);
    RealMatrix data(entries, std::vector<double>(dims));
    for (auto& row : data)
        for (double& v : row) v = level(rng);
    data[0][0] = 0;
    data[entries - 1][dims - 1] = max_level;
    return data;
}

}  // namespace

TEST_CASE("write tiles the reference geometry into eight blocks") {
    std::mt19937_64 rng(67);
    SimConfig cfg = base_config(MatchType::Best, DistanceFunction::L2, 3, 32, 64);
    cfg.strict_merge = false;  // 4 x 2 grid needs the combined best path
    RealMatrix stored = random_levels(rng, 100, 128, 7);
    CamState state = write(stored, cfg);
    CHECK(state.grid.row_groups == 4);
    CHECK(state.grid.col_groups == 2);
    CHECK(state.grid.subarray_count() == 8);
    CHECK(state.blocks.size() == 4);
    CHECK(state.blocks[0].size() == 2);
}

TEST_CASE("write keeps pre-quantized data bit-exact without variation") {
    SimConfig cfg = base_config(MatchType::Exact, DistanceFunction::Hamming, 2, 4, 4);
    cfg.circuit.cell_type = CellType::MCAM;
    RealMatrix stored = {{0, 1, 2, 3}, {3, 2, 1, 0}, {0, 0, 3, 3}, {1, 2, 1, 2}};
    CamState state = write(stored, cfg);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            CHECK(state.blocks[0][0].rows[r][c].value == stored[r][c]);
}

TEST_CASE("unsupported merges fail at write time") {
    SimConfig cfg = base_config(MatchType::Threshold, DistanceFunction::L1, 2, 64, 64);
    cfg.circuit.cell_type = CellType::MCAM;
    cfg.app.match_parameter = 1.0;
    std::mt19937_64 rng(71);
    RealMatrix stored = random_levels(rng, 10, 130, 3);  // N=130 > C=64
    CHECK_THROWS_AS(write(stored, cfg), Error);
    try {
        write(stored, cfg);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnsupportedMerge);
    }
}

TEST_CASE("write rejects invalid configurations") {
    SimConfig cfg = base_config(MatchType::Exact, DistanceFunction::Hamming, 3, 4, 4);
    cfg.circuit.cell_type = CellType::TCAM;  // 3-bit data in a 1-bit cell
    CHECK_THROWS_AS(write(RealMatrix{{0, 1}}, cfg), Error);
}

TEST_CASE("wildcard cells require tcam and ranges require acam") {
    SimConfig cfg = base_config(MatchType::Exact, DistanceFunction::Hamming, 1, 4, 4);
    CellMatrix with_wildcard = {{Cell::numeric(0), Cell::wildcard()}};
    CHECK_THROWS_AS(write(with_wildcard, cfg), Error);  // bcam cannot hold don't-care

    cfg.circuit.cell_type = CellType::TCAM;
    CHECK_NOTHROW(write(with_wildcard, cfg));

    CellMatrix with_range = {{Cell::numeric(0), Cell::range(0, 1)}};
    CHECK_THROWS_AS(write(with_range, cfg), Error);
}

TEST_CASE("a stored entry matches itself under exact search") {
    SimConfig cfg = base_config(MatchType::Exact, DistanceFunction::Hamming, 1, 8, 8);
    RealMatrix stored = {{0, 1, 0, 1}, {1, 1, 0, 0}, {0, 0, 1, 1}};
    CamState state = write(stored, cfg);
    auto results = query(state, {{1, 1, 0, 0}});
    REQUIRE(results.size() == 1);
    CHECK(results[0].matched_indices == std::vector<int>{1});
    CHECK(results[0].distances == std::vector<double>{0.0});
    CHECK_FALSE(results[0].approximate);
}

TEST_CASE("best match on a hand-computed 3x3 instance") {
    SimConfig cfg = base_config(MatchType::Best, DistanceFunction::L2, 2, 8, 8);
    // L2 distances to (0,1,3): rows at sqrt(0+1+1), sqrt(1+0+0), sqrt(9+4+9).
    RealMatrix stored = {{0, 2, 2}, {1, 1, 3}, {3, 3, 0}};
    CamState state = write(stored, cfg);
    auto results = query(state, {{0, 1, 3}});
    REQUIRE(results.size() == 1);
    CHECK(results[0].matched_indices == std::vector<int>{1});
    CHECK(results[0].distances[0] == doctest::Approx(1.0));
}

TEST_CASE("a best-match batch equals the oracle without partition effects") {
    std::mt19937_64 rng(73);
    SimConfig cfg = base_config(MatchType::Best, DistanceFunction::L2, 3, 16, 64);
    RealMatrix stored = random_levels(rng, 60, 24, 7);  // 4 row groups, 1 col group
    CamState state = write(stored, cfg);

    RealMatrix queries = random_levels(rng, 50, 24, 7);
    auto results = query(state, queries);
    REQUIRE(results.size() == 50);
    for (int q = 0; q < 50; ++q) {
        CHECK(results[q].matched_indices ==
              oracle_search(stored, queries[q], MatchSpec::best(1), DistanceFunction::L2));
    }
}

TEST_CASE("queries must match the stored width") {
    SimConfig cfg = base_config(MatchType::Exact, DistanceFunction::Hamming, 1, 8, 8);
    CamState state = write(RealMatrix{{0, 1}, {1, 0}}, cfg);
    CHECK_THROWS_AS(query(state, {{0, 1, 1}}), Error);
}

TEST_CASE("query batches are deterministic across runs") {
    std::mt19937_64 rng(79);
    SimConfig cfg = base_config(MatchType::Best, DistanceFunction::L2, 3, 8, 16);
    cfg.device.variation_enabled = true;
    cfg.device.variation_type = VariationKind::Both;
    cfg.device.variation_std = 0.3;
    cfg.device.seed = 1234;
    RealMatrix stored = random_levels(rng, 20, 16, 7);
    RealMatrix queries = random_levels(rng, 10, 16, 7);

    CamState first_state = write(stored, cfg);
    auto first = query(first_state, queries);
    CamState second_state = write(stored, cfg);
    auto second = query(second_state, queries);
    REQUIRE(first.size() == second.size());
    for (std::size_t q = 0; q < first.size(); ++q) {
        CHECK(first[q].matched_indices == second[q].matched_indices);
        CHECK(first[q].distances == second[q].distances);
    }
}

TEST_CASE("voting paths mark results approximate and omit distances") {
    std::mt19937_64 rng(83);
    SimConfig cfg = base_config(MatchType::Best, DistanceFunction::L2, 2, 32, 8);
    RealMatrix stored = random_levels(rng, 16, 16, 3);  // 1 x 2 grid
    CamState state = write(stored, cfg);
    auto results = query(state, random_levels(rng, 4, 16, 3));
    for (const auto& r : results) {
        CHECK(r.approximate);
        CHECK(r.distances.empty());
        CHECK_FALSE(r.warnings.empty());
    }
}

TEST_CASE("tcam wildcards match any level end to end") {
    SimConfig cfg = base_config(MatchType::Exact, DistanceFunction::Hamming, 1, 8, 8);
    cfg.circuit.cell_type = CellType::TCAM;
    CellMatrix stored = {
        {Cell::numeric(0), Cell::wildcard(), Cell::numeric(1)},
        {Cell::numeric(1), Cell::numeric(1), Cell::numeric(1)},
    };
    CamState state = write(stored, cfg);
    auto results = query(state, {{0, 0, 1}, {0, 1, 1}, {1, 1, 1}});
    CHECK(results[0].matched_indices == std::vector<int>{0});  // wildcard absorbs dim 2
    CHECK(results[1].matched_indices == std::vector<int>{0});
    CHECK(results[2].matched_indices == std::vector<int>{1});
}

TEST_CASE("acam ranges match queries inside their bounds") {
    SimConfig cfg = base_config(MatchType::Threshold, DistanceFunction::L1, 3, 8, 8);
    cfg.circuit.cell_type = CellType::ACAM;
    cfg.app.match_parameter = 0.0;  // threshold 0: inside every range
    CellMatrix stored = {
        {Cell::range(0, 3), Cell::range(2, 5)},
        {Cell::range(6, 7), Cell::range(0, 1)},
    };
    CamState state = write(stored, cfg);
    auto results = query(state, {{2, 3}, {7, 0}, {7, 7}});
    CHECK(results[0].matched_indices == std::vector<int>{0});
    CHECK(results[1].matched_indices == std::vector<int>{1});
    CHECK(results[2].matched_indices.empty());
}

TEST_CASE("experimental variation draws offsets from the table file") {
    std::mt19937_64 rng(97);
    SimConfig cfg = base_config(MatchType::Best, DistanceFunction::L2, 3, 8, 16);
    cfg.device.variation_enabled = true;
    cfg.device.variation_type = VariationKind::D2D;
    cfg.device.variation_spec = VariationSource::Experimental;
    cfg.device.empirical_table_path = std::string(CAMSIM_FIXTURE_DIR) + "/empirical_offsets.txt";
    cfg.device.seed = 31;
    RealMatrix stored = random_levels(rng, 8, 8, 7);
    CamState state = write(stored, cfg);
    // Every stored value is the quantized level plus some table offset.
    bool offsets_from_table = true;
    const std::vector<double> table = {0.10, -0.10, 0.00, 0.05, -0.05, 0.20, -0.20};
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            double delta = state.blocks[0][0].rows[r][c].value - stored[r][c];
            bool in_table = false;
            for (double t : table)
                if (std::abs(delta - t) < 1e-12) in_table = true;
            offsets_from_table = offsets_from_table && in_table;
        }
    }
    CHECK(offsets_from_table);
}

TEST_CASE("exact match across column groups reports full-width distances") {
    SimConfig cfg = base_config(MatchType::Exact, DistanceFunction::Hamming, 1, 8, 2);
    RealMatrix stored = {{0, 1, 0, 1}, {1, 1, 0, 0}};
    CamState state = write(stored, cfg);  // 1 x 2 grid
    REQUIRE(state.grid.col_groups == 2);
    auto results = query(state, {{1, 1, 0, 0}});
    CHECK(results[0].matched_indices == std::vector<int>{1});
    CHECK(results[0].distances == std::vector<double>{0.0});
}

TEST_CASE("empty match sets are legal results") {
    SimConfig cfg = base_config(MatchType::Exact, DistanceFunction::Hamming, 1, 8, 8);
    CamState state = write(RealMatrix{{0, 0, 0, 0}}, cfg);
    auto results = query(state, {{1, 1, 1, 1}});
    CHECK(results[0].matched_indices.empty());
}

TEST_CASE("evaluate_accuracy follows the plurality-label rule") {
    auto result_with = [](std::vector<int> idx) {
        SearchResult r;
        r.matched_indices = std::move(idx);
        return r;
    };
    std::vector<int> stored_labels = {0, 0, 1, 1, 2};

    // Unambiguous plurality of the query's own class.
    std::vector<SearchResult> results = {result_with({0, 1, 2}), result_with({2, 3}),
                                         result_with({4})};
    CHECK(evaluate_accuracy(results, stored_labels, {0, 1, 2}) == 1.0);

    // Tie between labels counts as incorrect.
    CHECK(evaluate_accuracy({result_with({0, 2})}, stored_labels, {0}) == 0.0);

    // Empty match set counts as incorrect.
    CHECK(evaluate_accuracy({result_with({})}, stored_labels, {0}) == 0.0);

    CHECK_THROWS_AS(evaluate_accuracy(results, stored_labels, {0}), Error);
}

TEST_CASE("evaluate_accuracy agrees with an independent scorer") {
    std::mt19937_64 rng(89);
    std::uniform_int_distribution<int> label(0, 3);
    std::uniform_int_distribution<int> pick(0, 9);
    std::vector<int> stored_labels(10);
    for (int& l : stored_labels) l = label(rng);

    std::vector<SearchResult> results;
    std::vector<int> query_labels;
    for (int q = 0; q < 40; ++q) {
        SearchResult r;
        int count = pick(rng) % 4;
        for (int i = 0; i < count; ++i) r.matched_indices.push_back(pick(rng));
        std::sort(r.matched_indices.begin(), r.matched_indices.end());
        r.matched_indices.erase(std::unique(r.matched_indices.begin(), r.matched_indices.end()),
                                r.matched_indices.end());
        results.push_back(std::move(r));
        query_labels.push_back(label(rng));
    }

    // Independent scorer: histogram per query, strict plurality.
    int correct = 0;
    for (std::size_t q = 0; q < results.size(); ++q) {
        int hist[4] = {0, 0, 0, 0};
        for (int idx : results[q].matched_indices) hist[stored_labels[idx]]++;
        int best = 0;
        for (int c : hist) best = std::max(best, c);
        if (best == 0) continue;
        int with_best = 0;
        int best_label = -1;
        for (int l = 0; l < 4; ++l) {
            if (hist[l] == best) {
                ++with_best;
                best_label = l;
            }
        }
        if (with_best == 1 && best_label == query_labels[q]) ++correct;
    }
    double expected = static_cast<double>(correct) / results.size();
    CHECK(evaluate_accuracy(results, stored_labels, query_labels) == doctest::Approx(expected));
}
