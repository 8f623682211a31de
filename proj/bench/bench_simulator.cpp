// Compares the OpenMP ride kernel against the serial reference on a long
// corridor (~200 stations, ~2e7 midpoint steps) and verifies that the two
// results are bitwise identical while reporting the speedup.

#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "railplan/channel.hpp"
#include "railplan/planning.hpp"
#include "railplan/simulator.hpp"

using namespace railplan;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        f();
        const auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

} // namespace

int main() {
    const ChannelParams params(10.0, 1.0, 2.0);
    const TrainProfile train(1.0);
    const SolverSettings settings{};

    // eta 0.29726... solves to d_s = 2, so 400 m of track gives 200 stations;
    // dt = 2e-5 s yields 2e7 steps over the ride.
    const TrackPlan plan =
        plan_track(400.0, DominantRatio{0.29726499196266029}, train, params, settings);
    SimulationConfig cfg{2e-5, plan, train, params};

    std::printf("stations: %zu\n", plan.stations.size());

    SimulationReport serial, parallel;
    const double t_serial = best_of(3, [&] { serial = simulate_ride_reference(cfg); });
    const double t_parallel = best_of(3, [&] { parallel = simulate_ride(cfg); });

    double max_diff = 0.0;
    for (std::size_t i = 0; i < serial.per_station_bits.size(); ++i)
        max_diff = std::max(max_diff,
                            std::abs(serial.per_station_bits[i] - parallel.per_station_bits[i]));

    std::printf("steps:    %zu  (dt = %g s)\n", serial.steps, cfg.dt);
#ifdef _OPENMP
    std::printf("threads:  %d\n", omp_get_max_threads());
#else
    std::printf("threads:  1 (built without OpenMP)\n");
#endif
    std::printf("serial reference: %8.3f ms   total = %.12e bits\n", 1e3 * t_serial,
                serial.total_bits);
    std::printf("parallel kernel:  %8.3f ms   total = %.12e bits\n", 1e3 * t_parallel,
                parallel.total_bits);
    std::printf("speedup:          %8.2fx\n", t_serial / t_parallel);
    std::printf("max |station diff|: %g  (bitwise equal: %s)\n", max_diff,
                serial.per_station_bits == parallel.per_station_bits &&
                        serial.total_bits == parallel.total_bits
                    ? "yes"
                    : "NO");
    return serial.per_station_bits == parallel.per_station_bits ? 0 : 1;
}
