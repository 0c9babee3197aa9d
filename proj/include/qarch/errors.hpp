#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qarch {

/// A constructor or operation received a parameter outside its admissible range.
class InvalidParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The input series is too short for the requested computation.
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The input data violates a contract (non-positive price, duplicate date, ...).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input; carries the 1-based line number when known.
class CsvParseError : public DataError {
public:
    CsvParseError(const std::string& msg, std::size_t line)
        : DataError(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace qarch
