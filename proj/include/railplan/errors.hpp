#ifndef RAILPLAN_ERRORS_HPP
#define RAILPLAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace railplan {

/// Bad model/solver parameter (nonpositive distance, alpha <= 1, ...).
class InvalidParameter : public std::invalid_argument {
public:
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

/// Adaptive quadrature could not reach the requested tolerance
/// within the subdivision budget.
class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

/// Bracketed root search failed (bracket expansion or iteration cap exhausted).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// The requested service requirement cannot be met by any station interval
/// (eta outside (0,1), or demanded bits >= the per-station bound at this speed).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace railplan

#endif
