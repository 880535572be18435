#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace camsim {

enum class DistanceFunction { Hamming, L1, L2 };

enum class MatchType { Exact, Best, Threshold };

enum class CellType { BCAM, TCAM, MCAM, ACAM };

enum class HorizontalMergeType { Voting, And };

enum class VerticalMergeType { Comparator, Gather };

enum class VariationKind { None, D2D, C2C, Both };

enum class VariationSource { Statistical, Experimental };

/// Match request: the type plus its parameter (neighbor count k for Best,
/// distance threshold theta for Threshold; unused for Exact).
struct MatchSpec {
    MatchType type = MatchType::Exact;
    int k = 1;
    double threshold = 0.0;

    static MatchSpec exact() { return {MatchType::Exact, 1, 0.0}; }
    static MatchSpec best(int k) { return {MatchType::Best, k, 0.0}; }
    static MatchSpec within(double theta) { return {MatchType::Threshold, 1, theta}; }
};

/// One CAM cell as seen by the search path. Numeric cells hold a (possibly
/// variation-perturbed) level; TCAM don't-care cells match anything; ACAM
/// cells hold a level range [lo, hi].
struct Cell {
    enum class Kind { Numeric, Wildcard, Range };

    Kind kind = Kind::Numeric;
    double value = 0.0;  // Numeric
    double lo = 0.0;     // Range
    double hi = 0.0;     // Range

    static Cell numeric(double v) { return {Kind::Numeric, v, 0.0, 0.0}; }
    static Cell wildcard() { return {Kind::Wildcard, 0.0, 0.0, 0.0}; }
    static Cell range(double lo, double hi) { return {Kind::Range, 0.0, lo, hi}; }

    bool operator==(const Cell&) const = default;
};

using RealMatrix = std::vector<std::vector<double>>;
using CellRow = std::vector<Cell>;
using CellMatrix = std::vector<CellRow>;

/// Wrap a plain real matrix as numeric cells.
CellMatrix to_cells(const RealMatrix& data);

const char* to_string(DistanceFunction v);
const char* to_string(MatchType v);
const char* to_string(CellType v);
const char* to_string(HorizontalMergeType v);
const char* to_string(VerticalMergeType v);
const char* to_string(VariationKind v);
const char* to_string(VariationSource v);

// Case-insensitive enum parsers; throw Error(BadValue) naming `field` on
// unrecognized values. Common short forms (hamm, stat., exper.) accepted.
DistanceFunction parse_distance_function(const std::string& s, const std::string& field);
MatchType parse_match_type(const std::string& s, const std::string& field);
CellType parse_cell_type(const std::string& s, const std::string& field);
HorizontalMergeType parse_horizontal_merge(const std::string& s, const std::string& field);
VerticalMergeType parse_vertical_merge(const std::string& s, const std::string& field);
VariationKind parse_variation_kind(const std::string& s, const std::string& field);
VariationSource parse_variation_source(const std::string& s, const std::string& field);

}  // namespace camsim
