#pragma once

#include <stdexcept>
#include <string>

namespace lfm {

/// Malformed or inconsistent input data: bad CSV, impossible year ranges,
/// violated series invariants, unknown registry keys.  Maps to process
/// exit code 2 in the command-line tool.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: singular/degenerate regression designs, non-finite
/// intermediates, impossible normalizations.  Maps to process exit code 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lfm
