#ifndef RAILPLAN_SETTINGS_HPP
#define RAILPLAN_SETTINGS_HPP

#include <cstddef>

namespace railplan {

/// Numerical tolerances shared by the quadrature and root-finding layers.
struct SolverSettings {
    double quad_rel_tol = 1e-10;      // relative tolerance of adaptive quadrature
    double quad_abs_tol = 1e-12;      // absolute floor, bits scale
    std::size_t max_subdivisions = 10000;
    double root_rel_tol = 1e-9;       // relative tolerance on solved lengths/speeds
    std::size_t max_root_iters = 200;

    /// Throws InvalidParameter if any tolerance is nonpositive or a cap is zero.
    void validate() const;
};

} // namespace railplan

#endif
