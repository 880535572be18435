#pragma once

#include <string>
#include <vector>

#include "camsim/types.hpp"

namespace camsim {

/// Stored/query data file: CSV, one entry per line. A field is a real
/// value, `*` for a TCAM wildcard, or `lo:hi` for an ACAM range.
/// Throws FileNotFound, FormatError, EmptyData.
CellMatrix load_data_csv(const std::string& path);
CellMatrix parse_data_csv(const std::string& text, const std::string& origin);

/// Label file: one integer label per line.
std::vector<int> load_labels_csv(const std::string& path);

/// All-numeric view of a cell matrix. Throws BadValue when a wildcard or
/// range cell is present.
RealMatrix to_reals(const CellMatrix& cells);

}  // namespace camsim
