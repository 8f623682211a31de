#include "railplan/planning.hpp"

#include <cmath>

#include "railplan/errors.hpp"
#include "railplan/rootfind.hpp"
#include "railplan/service.hpp"

namespace railplan {
namespace {

// Quantity requirements this close (relative) to the per-station bound are
// rejected; the bound itself is attained only as d_s -> infinity.
constexpr double kFeasibilityMargin = 1e-6;

// Solves G(l) = target_bits for the half-length l by bracketing the strictly
// increasing residual; the initial upper end d0 doubles until it crosses.
double solve_half_length(double target_bits, const ChannelParams& p,
                         const SolverSettings& s) {
    auto residual = [&](double l) { return service_integral(l, p, s) - target_bits; };
    const double hi = expand_bracket_upward(residual, 0.0, p.d0);
    return solve_bracketed(residual, 0.0, hi, s.root_rel_tol, s.max_root_iters);
}

double solve_service_distance(const ServiceRequirement& req,
                              const TrainProfile& train,
                              const ChannelParams& p, const SolverSettings& s) {
    if (const auto* ratio = std::get_if<DominantRatio>(&req))
        return interval_for_dominant_ratio(ratio->eta, p, s);
    return interval_for_service(std::get<ServiceQuantity>(req).s_bits, train, p, s);
}

} // namespace

double interval_for_dominant_ratio(double eta, const ChannelParams& p,
                                   const SolverSettings& s) {
    s.validate();
    if (!(eta > 0.0) || !(eta < 1.0))
        throw InfeasibleError("infeasible-ratio: eta must lie strictly between 0 and 1");
    const double total = total_service_integral(p, s);
    return 2.0 * solve_half_length(eta * total, p, s);
}

double interval_for_service(double s_bits, const TrainProfile& train,
                            const ChannelParams& p, const SolverSettings& s) {
    s.validate();
    if (!(s_bits > 0.0))
        throw InvalidParameter("invalid-parameter: service quantity must be > 0");
    const double total = total_service_integral(p, s);
    const double target = 0.5 * s_bits * train.v; // G(d_s/2) must reach this
    if (target >= (1.0 - kFeasibilityMargin) * total)
        throw InfeasibleError("infeasible-service: demanded " + std::to_string(s_bits) +
                              " bits needs G = " + std::to_string(target) +
                              " bit*m/s, at or beyond the station bound " +
                              std::to_string(total));
    return 2.0 * solve_half_length(target, p, s);
}

double speed_for_service_and_interval(double s_bits, double d_s,
                                      const ChannelParams& p,
                                      const SolverSettings& s) {
    s.validate();
    if (!(s_bits > 0.0))
        throw InvalidParameter("invalid-parameter: service quantity must be > 0");
    if (!(d_s > 0.0))
        throw InvalidParameter("invalid-parameter: service distance must be > 0");
    return 2.0 * service_integral(0.5 * d_s, p, s) / s_bits;
}

double pairwise_interval(double d_s1, double d_s2) {
    if (!(d_s1 >= 0.0) || !(d_s2 >= 0.0))
        throw InvalidParameter("invalid-parameter: service distances must be >= 0");
    return 0.5 * (d_s1 + d_s2);
}

TrackPlan plan_track(double track_length, const ServiceRequirement& req,
                     const TrainProfile& train, const ChannelParams& p,
                     const SolverSettings& s) {
    if (!(track_length > 0.0))
        throw InvalidParameter("invalid-parameter: track length must be > 0");
    const double d_s = solve_service_distance(req, train, p, s);

    // ceil with a snap scaled to the root finder's resolution: d_s is only
    // solved to root_rel_tol relative, and the quotient amplifies that by
    // itself, so a d_s a few tolerances under an exact divisor of the track
    // must not create an extra (requirement-violating-by-epsilon) station.
    const double quotient = track_length / d_s;
    double n_real = std::ceil(quotient * (1.0 - 4.0 * s.root_rel_tol) - 1e-12);
    const std::size_t n = n_real < 1.0 ? 1 : static_cast<std::size_t>(n_real);
    const double width = track_length / static_cast<double>(n);

    TrackPlan plan;
    plan.track_length = track_length;
    plan.stations.reserve(n);
    auto boundary = [track_length, n](std::size_t i) {
        return i == n ? track_length
                      : track_length * static_cast<double>(i) / static_cast<double>(n);
    };
    for (std::size_t i = 0; i < n; ++i) {
        PlannedStation st;
        st.position = (static_cast<double>(i) + 0.5) * width;
        st.service_distance = width;
        st.region_start = boundary(i);
        st.region_end = boundary(i + 1);
        plan.stations.push_back(st);
    }
    plan.intervals.reserve(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i + 1 < n; ++i)
        plan.intervals.push_back(pairwise_interval(width, width));
    return plan;
}

TransmissionWindow transmission_window(const ServiceRequirement& req,
                                       const TrainProfile& train,
                                       const ChannelParams& p,
                                       const SolverSettings& s) {
    const double d_s = solve_service_distance(req, train, p, s);
    TransmissionWindow w;
    w.x_end = 0.5 * d_s;
    w.x_start = -w.x_end;
    w.t_end = w.x_end / train.v;
    w.t_start = -w.t_end;
    w.buffer_bits = total_service(p, train, s);
    return w;
}

} // namespace railplan
