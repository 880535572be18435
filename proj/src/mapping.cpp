#include "camsim/mapping.hpp"

#include <string>

#include "camsim/errors.hpp"

namespace camsim {

int SubarrayBlock::valid_count() const {
    int n = 0;
    for (bool v : valid) n += v ? 1 : 0;
    return n;
}

PartitionGrid plan_partition(int entries, int dims, int rows, int columns) {
    if (entries < 1 || dims < 1 || rows < 1 || columns < 1)
        throw Error(ErrorCode::BadValue, "partition arguments must all be >= 1");
    PartitionGrid grid;
    grid.total_entries = entries;
    grid.total_dims = dims;
    grid.rows_per_subarray = rows;
    grid.cols_per_subarray = columns;
    grid.row_groups = (entries + rows - 1) / rows;
    grid.col_groups = (dims + columns - 1) / columns;
    grid.row_boundaries.reserve(grid.row_groups);
    for (int g = 0; g < grid.row_groups; ++g) {
        int start = g * rows;
        int end = std::min(entries, start + rows);
        grid.row_boundaries.emplace_back(start, end);
    }
    grid.col_boundaries.reserve(grid.col_groups);
    for (int g = 0; g < grid.col_groups; ++g) {
        int start = g * columns;
        int end = std::min(dims, start + columns);
        grid.col_boundaries.emplace_back(start, end);
    }
    return grid;
}

BlockGrid slice_stored(const CellMatrix& stored, const PartitionGrid& grid) {
    if (static_cast<int>(stored.size()) != grid.total_entries)
        throw Error(ErrorCode::ShapeMismatch,
                    "stored entries " + std::to_string(stored.size()) + " != partition K " +
                        std::to_string(grid.total_entries));
    for (const auto& row : stored) {
        if (static_cast<int>(row.size()) != grid.total_dims)
            throw Error(ErrorCode::ShapeMismatch,
                        "stored row width " + std::to_string(row.size()) + " != partition N " +
                            std::to_string(grid.total_dims));
    }

    BlockGrid blocks(grid.row_groups, std::vector<SubarrayBlock>(grid.col_groups));
    for (int rg = 0; rg < grid.row_groups; ++rg) {
        auto [row_start, row_end] = grid.row_boundaries[rg];
        for (int cg = 0; cg < grid.col_groups; ++cg) {
            auto [col_start, col_end] = grid.col_boundaries[cg];
            SubarrayBlock& block = blocks[rg][cg];
            block.rows.reserve(grid.rows_per_subarray);
            block.valid.reserve(grid.rows_per_subarray);
            for (int r = row_start; r < row_end; ++r) {
                block.rows.emplace_back(stored[r].begin() + col_start,
                                        stored[r].begin() + col_end);
                block.valid.push_back(true);
            }
            // Pad the last row group up to R; level 0, never matchable.
            int width = col_end - col_start;
            while (block.row_count() < grid.rows_per_subarray) {
                block.rows.emplace_back(width, Cell::numeric(0.0));
                block.valid.push_back(false);
            }
        }
    }
    return blocks;
}

std::vector<std::vector<int>> segment_query(const std::vector<int>& query,
                                            const PartitionGrid& grid) {
    if (static_cast<int>(query.size()) != grid.total_dims)
        throw Error(ErrorCode::ShapeMismatch, "query length " + std::to_string(query.size()) +
                                                  " != partition N " +
                                                  std::to_string(grid.total_dims));
    std::vector<std::vector<int>> segments;
    segments.reserve(grid.col_groups);
    for (auto [start, end] : grid.col_boundaries)
        segments.emplace_back(query.begin() + start, query.begin() + end);
    return segments;
}

int global_index(const SubarrayAddress& addr, int local_row, const PartitionGrid& grid) {
    if (addr.row_group < 0 || addr.row_group >= grid.row_groups || addr.col_group < 0 ||
        addr.col_group >= grid.col_groups)
        throw Error(ErrorCode::OutOfRange, "subarray address outside the grid");
    int global = addr.row_group * grid.rows_per_subarray + local_row;
    auto [start, end] = grid.row_boundaries[addr.row_group];
    if (local_row < 0 || global >= end)
        throw Error(ErrorCode::OutOfRange,
                    "local row " + std::to_string(local_row) + " not valid in row group " +
                        std::to_string(addr.row_group));
    return global;
}

}  // namespace camsim
