#ifndef NLWT_ERRORS_HPP
#define NLWT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlwt {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AllZeroSignal : Error {
    AllZeroSignal() : Error("signal is identically zero") {}
    explicit AllZeroSignal(const std::string& what) : Error(what) {}
};

struct LengthMismatch : Error {
    LengthMismatch(std::size_t a, std::size_t b)
        : Error("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

struct SignalTooShort : Error {
    using Error::Error;
};

struct OutOfBounds : Error {
    using Error::Error;
};

struct InvalidParameter : Error {
    using Error::Error;
};

struct InvalidLevels : Error {
    using Error::Error;
};

struct MatrixTooSmall : Error {
    using Error::Error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};

struct DegenerateWindow : Error {
    using Error::Error;
};

/// Raised when an aggregation finishes with a sample no block ever covered.
/// The reference schedule guarantees coverage, so seeing this means a bug.
struct UncoveredSample : Error {
    explicit UncoveredSample(std::size_t index)
        : Error("sample " + std::to_string(index) + " received no estimate") {}
};

struct IoError : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t line;
    std::size_t column;
    ParseError(std::size_t line_, std::size_t column_, const std::string& what)
        : Error("parse error at line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ": " + what),
          line(line_), column(column_) {}
};

struct MissingSampleRate : Error {
    MissingSampleRate()
        : Error("no \"# fs=<hz>\" comment found and no sample-rate override given") {}
};

struct RaggedRows : Error {
    std::size_t line;
    RaggedRows(std::size_t line_, std::size_t expected, std::size_t got)
        : Error("ragged row at line " + std::to_string(line_) + ": expected " +
                std::to_string(expected) + " columns, got " + std::to_string(got)),
          line(line_) {}
};

} // namespace nlwt

#endif
