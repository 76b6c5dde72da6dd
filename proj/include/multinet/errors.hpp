#pragma once

#include <stdexcept>
#include <string>

namespace multinet {

/// Incompatible operand shapes (vector lengths, matrix sizes, tensor extents).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed input data; carries the offending file and 1-based row when known.
struct ParseError : std::runtime_error {
    ParseError(const std::string& file, std::size_t row, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(row) + ": " + what),
          file_name(file),
          row_number(row) {}
    explicit ParseError(const std::string& what) : std::runtime_error(what), row_number(0) {}

    std::string file_name;
    std::size_t row_number;
};

/// Filesystem-level failure (missing file, unwritable path).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerically degenerate input (all-zero matrix or tensor, collapsed iterate).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace multinet
