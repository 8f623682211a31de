#ifndef RAILPLAN_PLANNING_HPP
#define RAILPLAN_PLANNING_HPP

#include <variant>
#include <vector>

#include "railplan/channel.hpp"
#include "railplan/settings.hpp"

namespace railplan {

/// Requirement stated as a fraction of a station's total service.
struct DominantRatio {
    double eta; // in (0, 1)
};

/// Requirement stated as an absolute amount of data per station.
struct ServiceQuantity {
    double s_bits; // > 0
};

using ServiceRequirement = std::variant<DominantRatio, ServiceQuantity>;

/// Span over which one station transmits to a passing train, and the data it
/// buffers for that pass.  Positions are relative to the station's foot
/// point; times are relative to the closest-approach instant.
struct TransmissionWindow {
    double x_start = 0.0; // -d_s/2
    double x_end = 0.0;   // +d_s/2
    double t_start = 0.0; // -d_s/(2v)
    double t_end = 0.0;   // +d_s/(2v)
    double buffer_bits = 0.0;
};

/// One station of a track plan.  region_[start,end) is the half-open track
/// segment the station owns under time-division scheduling.
struct PlannedStation {
    double position = 0.0;
    double service_distance = 0.0;
    double region_start = 0.0;
    double region_end = 0.0;
};

/// Homogeneous station layout covering [0, track_length] with no gaps.
struct TrackPlan {
    double track_length = 0.0;
    std::vector<PlannedStation> stations; // sorted by position
    std::vector<double> intervals;        // adjacent-station spacings, size n-1
};

/// Service distance d_s with dominant_ratio(d_s) = eta.  Speed never enters:
/// the ratio requirement fixes the interval for every train speed.
/// Throws InfeasibleError unless 0 < eta < 1.
double interval_for_dominant_ratio(double eta, const ChannelParams& p,
                                   const SolverSettings& s);

/// Service distance d_s with (2/v)*G(d_s/2) = s_bits; grows with v.
/// Throws InfeasibleError when s_bits (with a 1e-6 relative margin) is at or
/// above the per-station bound 2*G(inf)/v.
double interval_for_service(double s_bits, const TrainProfile& train,
                            const ChannelParams& p, const SolverSettings& s);

/// Speed at which a station delivers exactly s_bits over a window of length
/// d_s: v = 2*G(d_s/2)/s_bits.
double speed_for_service_and_interval(double s_bits, double d_s,
                                      const ChannelParams& p,
                                      const SolverSettings& s);

/// Interval of two adjacent stations with service distances d_s1, d_s2:
/// each serves half the shared span, so the interval is the mean.
double pairwise_interval(double d_s1, double d_s2);

/// Lays out n = ceil(track_length/d_s) identical stations whose regions tile
/// [0, track_length] exactly; per-station regions shrink to track_length/n
/// (<= d_s), so each station meets or exceeds the requirement.
TrackPlan plan_track(double track_length, const ServiceRequirement& req,
                     const TrainProfile& train, const ChannelParams& p,
                     const SolverSettings& s);

/// When a station holding its full buffer (total service at speed v) should
/// start and end transmitting to satisfy req for one passing train.
TransmissionWindow transmission_window(const ServiceRequirement& req,
                                       const TrainProfile& train,
                                       const ChannelParams& p,
                                       const SolverSettings& s);

} // namespace railplan

#endif
