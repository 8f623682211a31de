#include "railplan/settings.hpp"

#include "railplan/errors.hpp"

namespace railplan {

void SolverSettings::validate() const {
    if (!(quad_rel_tol > 0.0) || !(quad_abs_tol > 0.0) || !(root_rel_tol > 0.0))
        throw InvalidParameter("invalid-parameter: tolerances must be > 0");
    if (max_subdivisions < 1 || max_root_iters < 1)
        throw InvalidParameter("invalid-parameter: iteration caps must be >= 1");
}

} // namespace railplan
