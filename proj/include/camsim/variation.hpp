#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "camsim/config.hpp"
#include "camsim/mapping.hpp"
#include "camsim/types.hpp"

namespace camsim {

/// Resolved variation model: kind, source, and the draw parameters.
struct VariationSpec {
    VariationKind kind = VariationKind::None;
    VariationSource source = VariationSource::Statistical;
    double sigma = 0.0;
    std::vector<double> empirical_samples;
    std::uint64_t seed = 0;
};

/// Build the spec from the device section; loads the empirical table when
/// the source is Experimental.
VariationSpec make_variation_spec(const DeviceConfig& device);

/// Plain-text offset table, one real per line, '#' comments ignored.
/// Throws FileNotFound, FormatError, EmptyTable.
std::vector<double> load_empirical_table(const std::string& path);

/// Deterministic per-cell offsets. Draws are keyed on (seed, stream, global
/// row, global column, bound index[, query ordinal]) so results do not
/// depend on partition shape or query evaluation order. bound_index selects
/// the ACAM lo/hi bound (0 for numeric values and lo, 1 for hi).
double d2d_offset(const VariationSpec& spec, std::uint64_t row, std::uint64_t col,
                  std::uint32_t bound_index);
double c2c_offset(const VariationSpec& spec, std::uint64_t query_ordinal, std::uint64_t row,
                  std::uint64_t col, std::uint32_t bound_index);

/// One-time additive write perturbation. No-op unless kind is D2D or Both.
/// Wildcards and padded rows are untouched. row0/col0 are the block's global
/// coordinate origin.
SubarrayBlock apply_d2d(const SubarrayBlock& block, const VariationSpec& spec, int row0, int col0);

/// Fresh additive perturbation for one query. No-op unless kind is C2C or
/// Both. Pure in (block, spec, ordinal): evaluation order does not matter.
SubarrayBlock sample_c2c(const SubarrayBlock& block, const VariationSpec& spec,
                         std::uint64_t query_ordinal, int row0, int col0);

}  // namespace camsim
