#ifndef RAILPLAN_SIMULATOR_HPP
#define RAILPLAN_SIMULATOR_HPP

#include <cstddef>
#include <vector>

#include "railplan/channel.hpp"
#include "railplan/planning.hpp"

namespace railplan {

/// Time-stepped ride through a TrackPlan.  dt must leave at least 100 steps
/// per region (dt * v <= min region width / 100).
struct SimulationConfig {
    double dt = 0.0;
    TrackPlan plan;
    TrainProfile train;
    ChannelParams params;
};

struct SimulationReport {
    std::vector<double> per_station_bits;
    std::vector<double> per_station_ratio; // bits / station total service at this speed
    double total_bits = 0.0;
    std::size_t steps = 0;
    double dt = 0.0;
};

/*
 * Rides the train from position 0 to track_length under time-division
 * scheduling: at every step the station owning the half-open region
 * [region_start, region_end) that contains the step's midpoint position
 * transmits at its instantaneous capacity (midpoint rule, second order).
 *
 * simulate_ride is the production kernel: stations own contiguous step
 * ranges, which are summed independently (OpenMP across stations) and in
 * ascending step order within each station, so the result is bitwise
 * reproducible for any thread count and bitwise equal to the serial
 * reference.  simulate_ride_reference is the plain sequential cursor loop
 * kept for testing and benchmarking.
 */
SimulationReport simulate_ride(const SimulationConfig& cfg);
SimulationReport simulate_ride_reference(const SimulationConfig& cfg);

/// Midpoint-rule estimate of the dominant ratio for a single station: the
/// ride from -t_s to t_s (t_s = d_s/2v) summed at step <= dt, divided by the
/// station's total service.  Converges to dominant_ratio(d_s) as dt -> 0,
/// for every speed.
double estimate_dominant_ratio(double d_s, const TrainProfile& train,
                               const ChannelParams& p, double dt);

} // namespace railplan

#endif
