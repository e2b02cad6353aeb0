#pragma once

#include <stdexcept>
#include <string>

namespace floatsim {

/// Argument outside the mathematical domain of an operation (non-positive depth,
/// abscissa outside the hull, density ratio outside (0,1), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The contact-point cubic has no physical root: the body velocity exceeds the
/// smallness bound.
class BranchError : public DomainError {
public:
    explicit BranchError(const std::string& what, double time = 0.0)
        : DomainError(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Quadrature or linear solve failed to converge.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid scenario configuration (maps to CLI exit code 2).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Initial data violates the discrete compatibility condition (exit code 3).
class CompatibilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A runtime invariant was breached: CFL, positivity, grounding or the hull
/// constraint (exit code 4).
class InvariantBreach : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The hull came too close to the bottom.
class GroundingError : public InvariantBreach {
public:
    using InvariantBreach::InvariantBreach;
};

}  // namespace floatsim
