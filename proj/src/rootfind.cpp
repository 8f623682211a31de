#include "railplan/rootfind.hpp"

#include <algorithm>
#include <cmath>

#include "railplan/errors.hpp"

namespace railplan {

double solve_bracketed(const std::function<double(double)>& f,
                       double lo, double hi,
                       double rel_tol, std::size_t max_iters) {
    if (!(rel_tol > 0.0))
        throw InvalidParameter("invalid-parameter: root tolerance must be > 0");
    if (max_iters < 1)
        throw InvalidParameter("invalid-parameter: max_root_iters must be >= 1");
    if (!(lo <= hi))
        throw SolverError("solver-failure: empty bracket");

    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (!(flo < 0.0 && fhi > 0.0))
        throw SolverError("solver-failure: root not bracketed");

    double third_x = lo, third_f = flo;
    bool have_third = false;

    for (std::size_t it = 0; it < max_iters; ++it) {
        const double width = hi - lo;
        const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
        if (width <= rel_tol * scale)
            return 0.5 * (lo + hi);

        double c = 0.0;
        bool interp_ok = false;
        if (have_third && third_f != flo && third_f != fhi && flo != fhi) {
            // inverse quadratic through (lo,flo), (hi,fhi), (third_x,third_f)
            c = lo * fhi * third_f / ((flo - fhi) * (flo - third_f)) +
                hi * flo * third_f / ((fhi - flo) * (fhi - third_f)) +
                third_x * flo * fhi / ((third_f - flo) * (third_f - fhi));
            interp_ok = std::isfinite(c);
        } else if (flo != fhi) {
            c = lo - flo * width / (fhi - flo); // secant
            interp_ok = std::isfinite(c);
        }

        // Safeguard: keep the step strictly interior and fall back to
        // bisection every third iteration so the bracket provably shrinks.
        const double margin = 0.01 * width;
        if (!interp_ok || !(c > lo + margin) || !(c < hi - margin) || it % 3 == 2)
            c = lo + 0.5 * width;

        const double fc = f(c);
        if (fc == 0.0)
            return c;
        have_third = true;
        if (fc < 0.0) {
            third_x = lo;
            third_f = flo;
            lo = c;
            flo = fc;
        } else {
            third_x = hi;
            third_f = fhi;
            hi = c;
            fhi = fc;
        }
    }
    throw SolverError("solver-failure: root iteration cap exhausted");
}

double expand_bracket_upward(const std::function<double(double)>& f,
                             double lo, double hi0,
                             std::size_t max_doublings) {
    if (!(hi0 > lo))
        throw InvalidParameter("invalid-parameter: initial bracket end must exceed lo");
    double hi = hi0;
    for (std::size_t i = 0; i < max_doublings; ++i) {
        const double fhi = f(hi);
        if (!std::isfinite(fhi))
            throw SolverError("solver-failure: residual non-finite during bracket expansion");
        if (fhi >= 0.0)
            return hi;
        hi *= 2.0;
    }
    throw SolverError("solver-failure: bracket expansion exhausted without sign change");
}

} // namespace railplan
