#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace minrank {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape mismatches, invalid partitions, bad splits.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Field construction or mixing problems (composite modulus, mixed moduli,
// operations that require a finite field, degenerate data for a field).
class FieldError : public Error {
public:
    using Error::Error;
};

class FieldNotFiniteError : public FieldError {
public:
    using FieldError::FieldError;
};

class DegenerateFieldError : public FieldError {
public:
    using FieldError::FieldError;
};

class SingularError : public Error {
public:
    using Error::Error;
};

// solve_linear: right-hand side outside the column space.
class InconsistentError : public Error {
public:
    using Error::Error;
};

class NotStaircaseError : public Error {
public:
    using Error::Error;
};

class NotBandedError : public Error {
public:
    using Error::Error;
};

class NotHessenbergError : public Error {
public:
    using Error::Error;
};

class NotLowerTriangularError : public Error {
public:
    using Error::Error;
};

// Brute-force enumeration refused: dimensions or assignment count over cap.
class TooLargeError : public Error {
public:
    using Error::Error;
};

class OverlapSingularError : public Error {
public:
    using Error::Error;
};

class IncompleteCoverLinesError : public Error {
public:
    using Error::Error;
};

class SpecifiedOutsideCoverError : public Error {
public:
    using Error::Error;
};

class NoCoverError : public Error {
public:
    using Error::Error;
};

class CoverFillFailedError : public Error {
public:
    using Error::Error;
};

class RegionRankTooHighError : public Error {
public:
    using Error::Error;
};

// Text-format errors carry a 1-based position when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(make_what(what, line, column)), line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string make_what(const std::string& what, std::size_t line, std::size_t column) {
        if (line == 0) return what;
        return what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
    }

    std::size_t line_;
    std::size_t column_;
};

class FieldMismatchError : public ParseError {
public:
    using ParseError::ParseError;
};

class BadDimensionsError : public ParseError {
public:
    using ParseError::ParseError;
};

}  // namespace minrank
