#include "railplan/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "railplan/errors.hpp"
#include "railplan/service.hpp"
#include "railplan/settings.hpp"

namespace railplan {
namespace {

void validate_config(const SimulationConfig& cfg) {
    if (!(cfg.dt > 0.0))
        throw InvalidParameter("invalid-config: dt must be > 0");
    const auto& st = cfg.plan.stations;
    if (st.empty())
        throw InvalidParameter("invalid-config: plan has no stations");
    if (st.front().region_start != 0.0 || st.back().region_end != cfg.plan.track_length)
        throw InvalidParameter("invalid-config: regions do not span [0, track_length]");
    double min_width = st.front().region_end - st.front().region_start;
    for (std::size_t i = 0; i < st.size(); ++i) {
        if (!(st[i].region_end > st[i].region_start))
            throw InvalidParameter("invalid-config: empty region");
        if (i + 1 < st.size() && st[i].region_end != st[i + 1].region_start)
            throw InvalidParameter("invalid-config: regions do not tile the track");
        min_width = std::min(min_width, st[i].region_end - st[i].region_start);
    }
    if (cfg.dt * cfg.train.v > min_width / 100.0)
        throw InvalidParameter("invalid-config: dt too coarse, need >= 100 steps per region");
}

struct StepGrid {
    std::size_t full_steps = 0;
    double remainder = 0.0; // leftover ride time after the full steps
};

StepGrid make_grid(const SimulationConfig& cfg) {
    const double ride_time = cfg.plan.track_length / cfg.train.v;
    StepGrid g;
    g.full_steps = static_cast<std::size_t>(std::floor(ride_time / cfg.dt));
    g.remainder = ride_time - static_cast<double>(g.full_steps) * cfg.dt;
    if (g.remainder < 0.0)
        g.remainder = 0.0;
    return g;
}

// Midpoint position of full step k; both kernels and the range splitter must
// use this exact expression so step ownership is consistent bitwise.
inline double step_midpoint(std::size_t k, double dt, double v) {
    return v * ((static_cast<double>(k) + 0.5) * dt);
}

SimulationReport finish_report(const SimulationConfig& cfg,
                               std::vector<double> bits, std::size_t steps) {
    SimulationReport r;
    r.per_station_bits = std::move(bits);
    r.steps = steps;
    r.dt = cfg.dt;
    double total = 0.0;
    for (double b : r.per_station_bits)
        total += b;
    r.total_bits = total;
    const double station_total = total_service(cfg.params, cfg.train, SolverSettings{});
    r.per_station_ratio.reserve(r.per_station_bits.size());
    for (double b : r.per_station_bits)
        r.per_station_ratio.push_back(b / station_total);
    return r;
}

} // namespace

SimulationReport simulate_ride_reference(const SimulationConfig& cfg) {
    validate_config(cfg);
    const StepGrid grid = make_grid(cfg);
    const auto& st = cfg.plan.stations;
    const double v = cfg.train.v;
    const double dt = cfg.dt;

    std::vector<double> acc(st.size(), 0.0);
    std::size_t cursor = 0;
    for (std::size_t k = 0; k < grid.full_steps; ++k) {
        const double x = step_midpoint(k, dt, v);
        while (cursor + 1 < st.size() && x >= st[cursor].region_end)
            ++cursor;
        acc[cursor] += capacity_at_position(x - st[cursor].position, cfg.params);
    }
    std::vector<double> bits(st.size(), 0.0);
    for (std::size_t i = 0; i < st.size(); ++i)
        bits[i] = acc[i] * dt;

    std::size_t steps = grid.full_steps;
    if (grid.remainder > 0.0) {
        const double x = v * (static_cast<double>(grid.full_steps) * dt + 0.5 * grid.remainder);
        std::size_t i = cursor;
        while (i + 1 < st.size() && x >= st[i].region_end)
            ++i;
        bits[i] += capacity_at_position(x - st[i].position, cfg.params) * grid.remainder;
        ++steps;
    }
    return finish_report(cfg, std::move(bits), steps);
}

SimulationReport simulate_ride(const SimulationConfig& cfg) {
    validate_config(cfg);
    const StepGrid grid = make_grid(cfg);
    const auto& st = cfg.plan.stations;
    const std::int64_t n = static_cast<std::int64_t>(st.size());
    const double v = cfg.train.v;
    const double dt = cfg.dt;

    // First full step whose midpoint has reached track position `bound`.
    auto first_step_at = [&](double bound) -> std::size_t {
        std::size_t lo = 0, hi = grid.full_steps;
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (step_midpoint(mid, dt, v) >= bound)
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    };

    // Adjacent regions share their boundary value bitwise, so adjacent step
    // ranges share their split point: every step lands in exactly one range.
    std::vector<std::size_t> range_begin(st.size() + 1);
    range_begin[0] = 0;
    for (std::size_t i = 0; i < st.size(); ++i)
        range_begin[i + 1] =
            i + 1 == st.size() ? grid.full_steps : first_step_at(st[i].region_end);

    std::vector<double> bits(st.size(), 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const double pos = st[static_cast<std::size_t>(i)].position;
        double acc = 0.0;
        for (std::size_t k = range_begin[i]; k < range_begin[i + 1]; ++k)
            acc += capacity_at_position(step_midpoint(k, dt, v) - pos, cfg.params);
        bits[static_cast<std::size_t>(i)] = acc * dt;
    }

    std::size_t steps = grid.full_steps;
    if (grid.remainder > 0.0) {
        const double x = v * (static_cast<double>(grid.full_steps) * dt + 0.5 * grid.remainder);
        std::size_t i = st.size() - 1;
        for (std::size_t j = 0; j + 1 < st.size(); ++j) {
            if (x < st[j].region_end) {
                i = j;
                break;
            }
        }
        bits[i] += capacity_at_position(x - st[i].position, cfg.params) * grid.remainder;
        ++steps;
    }
    return finish_report(cfg, std::move(bits), steps);
}

double estimate_dominant_ratio(double d_s, const TrainProfile& train,
                               const ChannelParams& p, double dt) {
    if (!(d_s > 0.0))
        throw InvalidParameter("invalid-parameter: service distance must be > 0");
    if (!(dt > 0.0))
        throw InvalidParameter("invalid-parameter: dt must be > 0");

    const double t_s = 0.5 * d_s / train.v;
    const std::size_t m =
        static_cast<std::size_t>(std::max(1.0, std::ceil(2.0 * t_s / dt)));
    const double h = 2.0 * t_s / static_cast<double>(m); // snapped step, h <= dt

    // Fixed-size blocks summed independently and combined in block order:
    // deterministic for any thread count.
    constexpr std::size_t kBlock = 8192;
    const std::size_t blocks = (m + kBlock - 1) / kBlock;
    std::vector<double> partial(blocks, 0.0);
    const std::int64_t nb = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < nb; ++b) {
        const std::size_t begin = static_cast<std::size_t>(b) * kBlock;
        const std::size_t end = std::min(begin + kBlock, m);
        double acc = 0.0;
        for (std::size_t j = begin; j < end; ++j) {
            const double tau = -t_s + (static_cast<double>(j) + 0.5) * h;
            acc += capacity_at_time(tau, p, train);
        }
        partial[static_cast<std::size_t>(b)] = acc;
    }
    double ride_bits = 0.0;
    for (double a : partial)
        ride_bits += a;
    ride_bits *= h;

    return ride_bits / total_service(p, train, SolverSettings{});
}

} // namespace railplan
