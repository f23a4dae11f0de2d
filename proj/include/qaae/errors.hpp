#pragma once

#include <stdexcept>
#include <string>

namespace qaae {

// Input that violates a documented precondition (bad dimensions, bad flags,
// malformed parameter vectors).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Pauli file rejected; carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

// Spectral window too narrow to rescale, or analytic constants undefined
// because the two lowest eigenvalues coincide.
class DegeneracyError : public std::runtime_error {
public:
    explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// Requested a branch whose probability is numerically zero.
class ZeroBranchError : public std::runtime_error {
public:
    explicit ZeroBranchError(const std::string& what) : std::runtime_error(what) {}
};

// Operation not available for the selected backend or ansatz family
// (e.g. gate-level depth accounting without a gate-level circuit).
class CapabilityError : public std::runtime_error {
public:
    explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency check failed (non-Hermitian residue, norm drift,
// invariant violation). Indicates a bug, not bad input.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qaae
