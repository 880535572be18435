#include "camsim/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "camsim/errors.hpp"

namespace camsim {

namespace {

void check_range(const QuantRange& range) {
    if (!(range.min_val < range.max_val))
        throw Error(ErrorCode::BadRange, "min_val must be < max_val, got [" +
                                             std::to_string(range.min_val) + ", " +
                                             std::to_string(range.max_val) + "]");
}

struct MinMax {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    bool any = false;

    void feed(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        any = true;
    }

    QuantRange finish() const {
        if (!any) throw Error(ErrorCode::EmptyData, "cannot infer a range from empty data");
        // A constant matrix still needs a non-degenerate linear map.
        if (lo == hi) return {lo, lo + 1.0};
        return {lo, hi};
    }
};

}  // namespace

QuantRange infer_range(const RealMatrix& data) {
    MinMax mm;
    for (const auto& row : data)
        for (double v : row) mm.feed(v);
    return mm.finish();
}

QuantRange infer_range_cells(const CellMatrix& data) {
    MinMax mm;
    for (const auto& row : data) {
        for (const Cell& c : row) {
            switch (c.kind) {
                case Cell::Kind::Numeric: mm.feed(c.value); break;
                case Cell::Kind::Range:
                    mm.feed(c.lo);
                    mm.feed(c.hi);
                    break;
                case Cell::Kind::Wildcard: break;
            }
        }
    }
    return mm.finish();
}

int quantize_value(double v, int bits, QuantRange range) {
    if (bits < 1 || bits > 30)
        throw Error(ErrorCode::BadValue, "bits must be in [1, 30], got " + std::to_string(bits));
    check_range(range);
    double clamped = std::clamp(v, range.min_val, range.max_val);
    double max_level = static_cast<double>((1 << bits) - 1);
    double scaled = (clamped - range.min_val) / (range.max_val - range.min_val) * max_level;
    // std::round is round-half-away-from-zero, pinned for determinism.
    return static_cast<int>(std::round(scaled));
}

std::vector<int> quantize_vector(const std::vector<double>& values, int bits, QuantRange range) {
    std::vector<int> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(quantize_value(v, bits, range));
    return out;
}

LevelMatrix quantize_linear(const RealMatrix& data, int bits, QuantRange range) {
    check_range(range);
    LevelMatrix out;
    out.levels = 1 << bits;
    out.range = range;
    out.values.reserve(data.size());
    for (const auto& row : data) out.values.push_back(quantize_vector(row, bits, range));
    return out;
}

double dequantize_value(int level, int bits, QuantRange range) {
    double step = (range.max_val - range.min_val) / static_cast<double>((1 << bits) - 1);
    return range.min_val + level * step;
}

CellMatrix quantize_cells(const CellMatrix& data, int bits, QuantRange range) {
    check_range(range);
    CellMatrix out;
    out.reserve(data.size());
    for (const auto& row : data) {
        CellRow qrow;
        qrow.reserve(row.size());
        for (const Cell& c : row) {
            switch (c.kind) {
                case Cell::Kind::Numeric:
                    qrow.push_back(
                        Cell::numeric(static_cast<double>(quantize_value(c.value, bits, range))));
                    break;
                case Cell::Kind::Wildcard: qrow.push_back(c); break;
                case Cell::Kind::Range: {
                    int lo = quantize_value(c.lo, bits, range);
                    int hi = quantize_value(c.hi, bits, range);
                    qrow.push_back(Cell::range(std::min(lo, hi), std::max(lo, hi)));
                    break;
                }
            }
        }
        out.push_back(std::move(qrow));
    }
    return out;
}

}  // namespace camsim
