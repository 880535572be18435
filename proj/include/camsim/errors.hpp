#pragma once

#include <stdexcept>
#include <string>

namespace camsim {

enum class ErrorCode {
    SyntaxError,
    MissingField,
    BadValue,
    EmptyData,
    BadRange,
    ShapeMismatch,
    OutOfRange,
    NoValidRows,
    LengthMismatch,
    UnsupportedMerge,
    BadScheme,
    MissingCostKey,
    FileNotFound,
    FormatError,
    NegativeCost,
    EmptyTable,
};

const char* to_string(ErrorCode code);

/// All library failures carry a machine-checkable code plus a message that
/// names the offending field, value, or file.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace camsim
