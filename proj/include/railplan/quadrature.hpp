#ifndef RAILPLAN_QUADRATURE_HPP
#define RAILPLAN_QUADRATURE_HPP

#include <cstddef>
#include <functional>

namespace railplan {

/*
 * Adaptive quadrature on a finite interval using the embedded
 * Gauss(7)/Kronrod(15) pair.  The interval with the largest error estimate
 * is bisected until the summed estimate drops below
 * max(abs_tol, rel_tol * |integral|) or the subdivision budget is exhausted
 * (QuadratureError).  Node abscissae are strictly interior, so integrable
 * endpoint behaviour (e.g. the tan-substituted half-line integral) needs no
 * special casing.
 */
double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b,
                          double rel_tol, double abs_tol,
                          std::size_t max_subdivisions);

} // namespace railplan

#endif
