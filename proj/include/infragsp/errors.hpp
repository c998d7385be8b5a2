#pragma once

#include <stdexcept>
#include <string>

namespace infragsp {

/// Malformed or inconsistent input data (case files, tables, signal sets).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A signal with no usable energy where the operation needs some
/// (zero signal, or pure-DC signal for mean-removed metrics).
class DegenerateSignalError : public InputError {
public:
    using InputError::InputError;
};

/// Eigensolver failure or a matrix that violates a numerical invariant.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse error that carries the 1-based line number of the offending row.
class ParseError : public InputError {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : InputError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace infragsp
