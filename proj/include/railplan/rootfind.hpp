#ifndef RAILPLAN_ROOTFIND_HPP
#define RAILPLAN_ROOTFIND_HPP

#include <cstddef>
#include <functional>

namespace railplan {

/// Root of f on [lo, hi], requiring f(lo) <= 0 <= f(hi).
/// Bisection safeguarded by inverse-quadratic/secant steps; converges when
/// the bracket width falls below rel_tol * max(|lo|, |hi|, 1e-300).
/// Throws SolverError when max_iters is exhausted.
double solve_bracketed(const std::function<double(double)>& f,
                       double lo, double hi,
                       double rel_tol, std::size_t max_iters);

/// Finds an upper bracket end for an increasing residual with f(lo) <= 0:
/// starting from hi0 > lo, doubles hi until f(hi) >= 0.
/// Throws SolverError if no sign change appears within max_doublings.
double expand_bracket_upward(const std::function<double(double)>& f,
                             double lo, double hi0,
                             std::size_t max_doublings = 200);

} // namespace railplan

#endif
