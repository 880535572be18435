#include "camsim/errors.hpp"

namespace camsim {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::MissingField: return "MissingField";
        case ErrorCode::BadValue: return "BadValue";
        case ErrorCode::EmptyData: return "EmptyData";
        case ErrorCode::BadRange: return "BadRange";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::NoValidRows: return "NoValidRows";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::UnsupportedMerge: return "UnsupportedMerge";
        case ErrorCode::BadScheme: return "BadScheme";
        case ErrorCode::MissingCostKey: return "MissingCostKey";
        case ErrorCode::FileNotFound: return "FileNotFound";
        case ErrorCode::FormatError: return "FormatError";
        case ErrorCode::NegativeCost: return "NegativeCost";
        case ErrorCode::EmptyTable: return "EmptyTable";
    }
    return "Error";
}

}  // namespace camsim
