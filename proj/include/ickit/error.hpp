#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ickit {

/// Argument outside an operation's domain (degenerate vector, |rho| >= 1, n too small, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Observed realized-IC variability is below the static floor 1/(N-3).
class InfeasibleDecomposition : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A rolling test needs more observations than the series holds.
class InsufficientHistory : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace ickit
