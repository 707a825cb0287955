#pragma once

#include <stdexcept>
#include <string>

namespace blaschke {

/// Input outside the domain of an operation (point not in the disk, not in a region, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// An iterative method (root finder, Newton, continuation, extrapolation) failed.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// A function-spec or config file does not match its schema.
class SpecError : public std::runtime_error {
public:
    explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

/// A map does not satisfy a precondition of a certification (e.g. missing critical points).
class InvalidMapError : public std::invalid_argument {
public:
    explicit InvalidMapError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace blaschke
