#include "camsim/variation.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "camsim/errors.hpp"

namespace camsim {

namespace {

// 64-bit finalizer (murmur3 style); the offset draws chain it over the key
// components so every (seed, stream, coordinate) tuple gets its own value.
std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

std::uint64_t chain(std::uint64_t h, std::uint64_t v) {
    return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL));
}

double to_unit_open(std::uint64_t h) {
    // (0, 1]: safe as a log argument.
    return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
}

double to_unit(std::uint64_t h) {
    // [0, 1)
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

constexpr double kTwoPi = 6.28318530717958647692;

double draw_offset(const VariationSpec& spec, std::uint64_t key) {
    if (spec.source == VariationSource::Statistical) {
        if (spec.sigma == 0.0) return 0.0;
        // Box-Muller over two hash-derived uniforms.
        double u1 = to_unit_open(chain(key, 1));
        double u2 = to_unit(chain(key, 2));
        return spec.sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }
    // Experimental: i.i.d. draw with replacement from the measured table.
    return spec.empirical_samples[chain(key, 3) % spec.empirical_samples.size()];
}

std::uint64_t cell_key(std::uint64_t seed, std::uint64_t stream, std::uint64_t ordinal,
                       std::uint64_t row, std::uint64_t col, std::uint32_t bound_index) {
    std::uint64_t h = mix64(seed ^ stream);
    h = chain(h, ordinal);
    h = chain(h, row);
    h = chain(h, col);
    h = chain(h, bound_index);
    return h;
}

Cell perturb_cell(const Cell& c, const VariationSpec& spec, std::uint64_t stream,
                  std::uint64_t ordinal, std::uint64_t row, std::uint64_t col) {
    switch (c.kind) {
        case Cell::Kind::Wildcard: return c;
        case Cell::Kind::Numeric:
            return Cell::numeric(c.value +
                                 draw_offset(spec, cell_key(spec.seed, stream, ordinal, row, col, 0)));
        case Cell::Kind::Range: {
            double lo = c.lo + draw_offset(spec, cell_key(spec.seed, stream, ordinal, row, col, 0));
            double hi = c.hi + draw_offset(spec, cell_key(spec.seed, stream, ordinal, row, col, 1));
            return Cell::range(std::min(lo, hi), std::max(lo, hi));
        }
    }
    return c;
}

SubarrayBlock perturb_block(const SubarrayBlock& block, const VariationSpec& spec,
                            std::uint64_t stream, std::uint64_t ordinal, int row0, int col0) {
    SubarrayBlock out = block;
    for (std::size_t r = 0; r < out.rows.size(); ++r) {
        if (!out.valid[r]) continue;  // padding stays untouched
        for (std::size_t c = 0; c < out.rows[r].size(); ++c) {
            out.rows[r][c] =
                perturb_cell(out.rows[r][c], spec, stream, ordinal,
                             static_cast<std::uint64_t>(row0) + r,
                             static_cast<std::uint64_t>(col0) + c);
        }
    }
    return out;
}

constexpr std::uint64_t kD2DStream = 0x44324400u;  // "D2D"
constexpr std::uint64_t kC2CStream = 0x43324300u;  // "C2C"

}  // namespace

VariationSpec make_variation_spec(const DeviceConfig& device) {
    VariationSpec spec;
    spec.seed = device.seed;
    if (!device.variation_enabled) {
        spec.kind = VariationKind::None;
        return spec;
    }
    spec.kind = device.variation_type;
    spec.source = device.variation_spec;
    spec.sigma = device.variation_std;
    if (spec.source == VariationSource::Experimental)
        spec.empirical_samples = load_empirical_table(device.empirical_table_path);
    return spec;
}

std::vector<double> load_empirical_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open empirical table: " + path);
    std::vector<double> offsets;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ss(line);
        double v;
        if (!(ss >> v))
            throw Error(ErrorCode::FormatError,
                        path + ":" + std::to_string(line_no) + ": expected a real offset");
        std::string rest;
        if (ss >> rest)
            throw Error(ErrorCode::FormatError,
                        path + ":" + std::to_string(line_no) + ": trailing content \"" + rest + "\"");
        offsets.push_back(v);
    }
    if (offsets.empty()) throw Error(ErrorCode::EmptyTable, "empirical table is empty: " + path);
    return offsets;
}

double d2d_offset(const VariationSpec& spec, std::uint64_t row, std::uint64_t col,
                  std::uint32_t bound_index) {
    if (spec.kind != VariationKind::D2D && spec.kind != VariationKind::Both) return 0.0;
    return draw_offset(spec, cell_key(spec.seed, kD2DStream, 0, row, col, bound_index));
}

double c2c_offset(const VariationSpec& spec, std::uint64_t query_ordinal, std::uint64_t row,
                  std::uint64_t col, std::uint32_t bound_index) {
    if (spec.kind != VariationKind::C2C && spec.kind != VariationKind::Both) return 0.0;
    return draw_offset(spec, cell_key(spec.seed, kC2CStream, query_ordinal, row, col, bound_index));
}

SubarrayBlock apply_d2d(const SubarrayBlock& block, const VariationSpec& spec, int row0,
                        int col0) {
    if (spec.kind != VariationKind::D2D && spec.kind != VariationKind::Both) return block;
    return perturb_block(block, spec, kD2DStream, 0, row0, col0);
}

SubarrayBlock sample_c2c(const SubarrayBlock& block, const VariationSpec& spec,
                         std::uint64_t query_ordinal, int row0, int col0) {
    if (spec.kind != VariationKind::C2C && spec.kind != VariationKind::Both) return block;
    return perturb_block(block, spec, kC2CStream, query_ordinal, row0, col0);
}

}  // namespace camsim
