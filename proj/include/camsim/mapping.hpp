#pragma once

#include <cstddef>
#include <vector>

#include "camsim/types.hpp"

namespace camsim {

/// 2-D partition of K entries x N dimensions into R x C subarray tiles.
struct PartitionGrid {
    int row_groups = 1;
    int col_groups = 1;
    int rows_per_subarray = 1;     // R
    int cols_per_subarray = 1;     // C
    int total_entries = 1;         // K
    int total_dims = 1;            // N
    std::vector<std::pair<int, int>> row_boundaries;  // [start_entry, end_entry)
    std::vector<std::pair<int, int>> col_boundaries;  // [start_dim, end_dim)

    int subarray_count() const { return row_groups * col_groups; }
};

struct SubarrayAddress {
    int row_group = 0;
    int col_group = 0;
};

/// One subarray's slice of the stored data. Rows beyond K in the last row
/// group are present as padding with valid=false; they must never match.
struct SubarrayBlock {
    std::vector<CellRow> rows;
    std::vector<bool> valid;

    int row_count() const { return static_cast<int>(rows.size()); }
    int valid_count() const;
};

using BlockGrid = std::vector<std::vector<SubarrayBlock>>;  // [row_group][col_group]

PartitionGrid plan_partition(int entries, int dims, int rows, int columns);

/// Tile the K x N cell matrix onto the grid. Throws ShapeMismatch.
BlockGrid slice_stored(const CellMatrix& stored, const PartitionGrid& grid);

/// Split a query of length N at the grid's column boundaries.
std::vector<std::vector<int>> segment_query(const std::vector<int>& query,
                                            const PartitionGrid& grid);

/// Global entry index of a local row; inverse of the slicing map.
/// Throws OutOfRange for padded or out-of-block rows.
int global_index(const SubarrayAddress& addr, int local_row, const PartitionGrid& grid);

}  // namespace camsim
