#ifndef RAILPLAN_SERVICE_HPP
#define RAILPLAN_SERVICE_HPP

#include "railplan/channel.hpp"
#include "railplan/settings.hpp"

namespace railplan {

/// One sample of the accumulated-service curve: s bits delivered up to time t.
struct ServiceCurvePoint {
    double t = 0.0;
    double s = 0.0;
};

/*
 * Channel-service calculus.
 *
 * Everything here reduces to the spatial half-line integral
 *
 *     G(L) = integral_0^L log2(1 + rho/(d0^2 + x^2)^(alpha/2)) dx
 *
 * in bit*m/s: the service a station delivers while the train covers [0, L]
 * of track, times the speed.  Integration runs in nats with one final
 * division by ln 2.  G(inf) is evaluated exactly (no truncation) through the
 * substitution x = d0*tan(theta), which maps [0, inf) onto [0, pi/2).
 */

/// G(L).  Strictly increasing in L; G(0) = 0.
double service_integral(double L, const ChannelParams& p, const SolverSettings& s);

/// G(inf); finite for alpha > 1.
double total_service_integral(const ChannelParams& p, const SolverSettings& s);

/// Closed-form G(L) for alpha = 2 (independent of the quadrature path):
///   [ L*ln(1 + rho/(d0^2 + L^2)) + 2A*atan(L/A) - 2*d0*atan(L/d0) ] / ln 2
/// with A = sqrt(rho + d0^2).  Throws InvalidParameter unless alpha == 2.
double service_integral_closed_alpha2(double L, const ChannelParams& p);

/// Service accumulated from the infinite past until time t (t = 0 at the
/// station's foot point): (G(inf) + sign(t)*G(|v*t|)) / v, in bits.
double service_up_to_time(double t, const ChannelParams& p,
                          const TrainProfile& train, const SolverSettings& s);

/// Total service one station can ever deliver at speed v: 2*G(inf)/v bits.
double total_service(const ChannelParams& p, const TrainProfile& train,
                     const SolverSettings& s);

/// Dominant ratio eta(d_s) = G(d_s/2)/G(inf) in [0, 1): the fraction of a
/// station's total service delivered while the train is within d_s/2 of the
/// foot point.  Speed never enters.
double dominant_ratio(double d_s, const ChannelParams& p, const SolverSettings& s);

namespace detail {
/// ln(1 + rho/(d0^2 + x^2)^(alpha/2)) — the integrand, in nats.
double capacity_nats(double x, const ChannelParams& p);
} // namespace detail

} // namespace railplan

#endif
