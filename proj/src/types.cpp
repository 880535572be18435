#include "camsim/types.hpp"

#include <algorithm>
#include <cctype>

#include "camsim/errors.hpp"

namespace camsim {

CellMatrix to_cells(const RealMatrix& data) {
    CellMatrix out;
    out.reserve(data.size());
    for (const auto& row : data) {
        CellRow cells;
        cells.reserve(row.size());
        for (double v : row) cells.push_back(Cell::numeric(v));
        out.push_back(std::move(cells));
    }
    return out;
}

const char* to_string(DistanceFunction v) {
    switch (v) {
        case DistanceFunction::Hamming: return "hamming";
        case DistanceFunction::L1: return "l1";
        case DistanceFunction::L2: return "l2";
    }
    return "?";
}

const char* to_string(MatchType v) {
    switch (v) {
        case MatchType::Exact: return "exact";
        case MatchType::Best: return "best";
        case MatchType::Threshold: return "threshold";
    }
    return "?";
}

const char* to_string(CellType v) {
    switch (v) {
        case CellType::BCAM: return "bcam";
        case CellType::TCAM: return "tcam";
        case CellType::MCAM: return "mcam";
        case CellType::ACAM: return "acam";
    }
    return "?";
}

const char* to_string(HorizontalMergeType v) {
    switch (v) {
        case HorizontalMergeType::Voting: return "voting";
        case HorizontalMergeType::And: return "and";
    }
    return "?";
}

const char* to_string(VerticalMergeType v) {
    switch (v) {
        case VerticalMergeType::Comparator: return "comparator";
        case VerticalMergeType::Gather: return "gather";
    }
    return "?";
}

const char* to_string(VariationKind v) {
    switch (v) {
        case VariationKind::None: return "none";
        case VariationKind::D2D: return "d2d";
        case VariationKind::C2C: return "c2c";
        case VariationKind::Both: return "both";
    }
    return "?";
}

const char* to_string(VariationSource v) {
    switch (v) {
        case VariationSource::Statistical: return "statistical";
        case VariationSource::Experimental: return "experimental";
    }
    return "?";
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

[[noreturn]] void bad_enum(const std::string& field, const std::string& value) {
    throw Error(ErrorCode::BadValue, "unrecognized value \"" + value + "\" for " + field);
}

}  // namespace

DistanceFunction parse_distance_function(const std::string& s, const std::string& field) {
    std::string v = lower(s);
    if (v == "hamming" || v == "hamm" || v == "hamm.") return DistanceFunction::Hamming;
    if (v == "l1") return DistanceFunction::L1;
    if (v == "l2") return DistanceFunction::L2;
    bad_enum(field, s);
}

MatchType parse_match_type(const std::string& s, const std::string& field) {
    std::string v = lower(s);
    if (v == "exact") return MatchType::Exact;
    if (v == "best") return MatchType::Best;
    if (v == "threshold") return MatchType::Threshold;
    bad_enum(field, s);
}

CellType parse_cell_type(const std::string& s, const std::string& field) {
    std::string v = lower(s);
    if (v == "bcam") return CellType::BCAM;
    if (v == "tcam") return CellType::TCAM;
    if (v == "mcam") return CellType::MCAM;
    if (v == "acam") return CellType::ACAM;
    bad_enum(field, s);
}

HorizontalMergeType parse_horizontal_merge(const std::string& s, const std::string& field) {
    std::string v = lower(s);
    if (v == "voting") return HorizontalMergeType::Voting;
    if (v == "and") return HorizontalMergeType::And;
    bad_enum(field, s);
}

VerticalMergeType parse_vertical_merge(const std::string& s, const std::string& field) {
    std::string v = lower(s);
    if (v == "comparator") return VerticalMergeType::Comparator;
    if (v == "gather") return VerticalMergeType::Gather;
    bad_enum(field, s);
}

VariationKind parse_variation_kind(const std::string& s, const std::string& field) {
    std::string v = lower(s);
    if (v == "d2d") return VariationKind::D2D;
    if (v == "c2c") return VariationKind::C2C;
    if (v == "both") return VariationKind::Both;
    if (v == "none") return VariationKind::None;
    bad_enum(field, s);
}

VariationSource parse_variation_source(const std::string& s, const std::string& field) {
    std::string v = lower(s);
    if (v == "statistical" || v == "stat" || v == "stat.") return VariationSource::Statistical;
    if (v == "experimental" || v == "exper" || v == "exper.") return VariationSource::Experimental;
    bad_enum(field, s);
}

}  // namespace camsim
