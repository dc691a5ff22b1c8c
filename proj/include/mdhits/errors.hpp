#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mdhits {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Invalid input: bad shape, out-of-bounds index, nonpositive weight,
/// mismatched vector length, and similar contract violations.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed line in a delimited edge-list file. Carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(long long line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    long long line() const noexcept { return line_; }

private:
    long long line_;
};

/// Normalization encountered a slice with no positive entry.
class InactiveModeError : public Error {
public:
    explicit InactiveModeError(std::int64_t mode)
        : Error("inactive mode " + std::to_string(mode) + ": slice has no positive entry"),
          mode_(mode) {}

    std::int64_t mode() const noexcept { return mode_; }

private:
    std::int64_t mode_;
};

/// An exponent vector whose weight matrix has spectral radius >= 1 was passed
/// to an operation that requires the contraction regime.
class InfeasibleAlphaError : public Error {
public:
    InfeasibleAlphaError(double rho, const std::string& message)
        : Error(message), rho_(rho) {}

    double rho() const noexcept { return rho_; }

private:
    double rho_;
};

/// File could not be opened, read, or written. Carries the path.
class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& message)
        : Error(path + ": " + message), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace mdhits
