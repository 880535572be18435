#pragma once

#include <utility>
#include <vector>

#include "camsim/types.hpp"

namespace camsim {

/// Quantization range shared between stored and query data.
struct QuantRange {
    double min_val = 0.0;
    double max_val = 1.0;

    bool operator==(const QuantRange&) const = default;
};

/// Integer-level matrix produced by linear quantization.
struct LevelMatrix {
    std::vector<std::vector<int>> values;  // entries x dimensions
    int levels = 2;                        // 2^data_bits
    QuantRange range;
};

/// Element-wise (min, max) of the data; a constant matrix maps to (v, v+1)
/// so the linear map never degenerates. Throws EmptyData.
QuantRange infer_range(const RealMatrix& data);

/// Range inference over cell data: numeric values plus both ACAM range
/// bounds participate; wildcards are skipped. Throws EmptyData when no
/// numeric value exists.
QuantRange infer_range_cells(const CellMatrix& data);

/// level = round((clamp(v) - min) / (max - min) * (2^bits - 1)), with
/// round-half-away-from-zero. Throws BadRange when min >= max.
LevelMatrix quantize_linear(const RealMatrix& data, int bits, QuantRange range);

int quantize_value(double v, int bits, QuantRange range);

std::vector<int> quantize_vector(const std::vector<double>& values, int bits, QuantRange range);

/// Inverse lattice map: min + level * step, step = (max - min) / (2^bits - 1).
double dequantize_value(int level, int bits, QuantRange range);

/// Quantize cell data: numeric values and ACAM range bounds map onto the
/// level lattice (lo/hi each quantized, order preserved); wildcards pass
/// through untouched.
CellMatrix quantize_cells(const CellMatrix& data, int bits, QuantRange range);

}  // namespace camsim
