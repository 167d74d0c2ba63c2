#pragma once

#include <stdexcept>
#include <string>

namespace lcp {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfBoundsError : Error {
    using Error::Error;
};

struct NotAdjacentError : Error {
    using Error::Error;
};

// Carries the first offending row and its sum.
struct NotStochasticError : Error {
    NotStochasticError(const std::string& what, int row, double sum)
        : Error(what), row(row), sum(sum) {}
    int row;
    double sum;
};

struct SpeedOutOfRangeError : Error {
    using Error::Error;
};

struct ZeroSpeedError : Error {
    using Error::Error;
};

struct EmptyScenarioError : Error {
    using Error::Error;
};

struct NoPathError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace lcp
