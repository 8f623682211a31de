#include "railplan/service.hpp"

#include <cmath>

#include "railplan/errors.hpp"
#include "railplan/quadrature.hpp"

namespace railplan {

namespace detail {

double capacity_nats(double x, const ChannelParams& p) {
    return std::log1p(p.rho / std::pow(p.d0 * p.d0 + x * x, p.alpha / 2.0));
}

} // namespace detail

namespace {

// abs floor is specified on the bits scale; integration runs in nats.
double abs_tol_nats(const SolverSettings& s) { return s.quad_abs_tol * M_LN2; }

double service_integral_nats(double L, const ChannelParams& p, const SolverSettings& s) {
    if (!(L >= 0.0))
        throw InvalidParameter("invalid-parameter: integration length must be >= 0");
    if (L == 0.0)
        return 0.0;
    return integrate_adaptive(
        [&p](double x) { return detail::capacity_nats(x, p); },
        0.0, L, s.quad_rel_tol, abs_tol_nats(s), s.max_subdivisions);
}

double total_service_integral_nats(const ChannelParams& p, const SolverSettings& s) {
    // x = d0*tan(theta) turns the half-line into [0, pi/2); the transformed
    // integrand d0 * ln(1 + (rho/d0^alpha) * cos(theta)^alpha) / cos(theta)^2
    // stays bounded for alpha >= 2 and integrable for alpha in (1, 2).
    const double rho_scaled = p.rho / std::pow(p.d0, p.alpha);
    const double d0 = p.d0;
    const double alpha = p.alpha;
    return integrate_adaptive(
        [rho_scaled, d0, alpha](double theta) {
            const double c = std::cos(theta);
            return d0 * std::log1p(rho_scaled * std::pow(c, alpha)) / (c * c);
        },
        0.0, M_PI_2, s.quad_rel_tol, abs_tol_nats(s), s.max_subdivisions);
}

} // namespace

double service_integral(double L, const ChannelParams& p, const SolverSettings& s) {
    s.validate();
    return service_integral_nats(L, p, s) / M_LN2;
}

double total_service_integral(const ChannelParams& p, const SolverSettings& s) {
    s.validate();
    return total_service_integral_nats(p, s) / M_LN2;
}

double service_integral_closed_alpha2(double L, const ChannelParams& p) {
    if (p.alpha != 2.0)
        throw InvalidParameter("invalid-parameter: closed form requires alpha == 2");
    if (!(L >= 0.0))
        throw InvalidParameter("invalid-parameter: integration length must be >= 0");
    const double a = std::sqrt(p.rho + p.d0 * p.d0);
    const double nats = L * std::log1p(p.rho / (p.d0 * p.d0 + L * L)) +
                        2.0 * a * std::atan(L / a) - 2.0 * p.d0 * std::atan(L / p.d0);
    return nats / M_LN2;
}

double service_up_to_time(double t, const ChannelParams& p,
                          const TrainProfile& train, const SolverSettings& s) {
    s.validate();
    const double half = total_service_integral_nats(p, s);
    const double reach = service_integral_nats(std::abs(train.v * t), p, s);
    const double nats = t >= 0.0 ? half + reach : half - reach;
    return nats / (train.v * M_LN2);
}

double total_service(const ChannelParams& p, const TrainProfile& train,
                     const SolverSettings& s) {
    s.validate();
    return 2.0 * total_service_integral_nats(p, s) / (train.v * M_LN2);
}

double dominant_ratio(double d_s, const ChannelParams& p, const SolverSettings& s) {
    s.validate();
    if (!(d_s >= 0.0))
        throw InvalidParameter("invalid-parameter: service distance must be >= 0");
    if (d_s == 0.0)
        return 0.0;
    const double ratio = service_integral_nats(0.5 * d_s, p, s) /
                         total_service_integral_nats(p, s);
    // quadrature noise can push the tail limit a hair past 1
    return ratio < 1.0 ? ratio : std::nextafter(1.0, 0.0);
}

} // namespace railplan
