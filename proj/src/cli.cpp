#include "railplan/cli.hpp"

#include <cstddef>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "railplan/channel.hpp"
#include "railplan/csv.hpp"
#include "railplan/errors.hpp"
#include "railplan/planning.hpp"
#include "railplan/service.hpp"
#include "railplan/settings.hpp"
#include "railplan/simulator.hpp"

namespace railplan::cli {
namespace {

struct Options {
    std::vector<double> rho;
    std::vector<double> snr0_db;
    double d0 = 1.0;
    double alpha = 2.0;
    double speed = 0.0;
    double eta = 0.0;
    double service_bits = 0.0;
    double track_length = 0.0;
    double t_max = 0.0;
    double ds_max = 0.0;
    double ds_min = 0.0;
    double dt = 0.0;
    int points = 200;
    std::string out_path;
    SolverSettings settings;

    // presence handles (count() > 0 also covers values fed from --config)
    CLI::Option* opt_speed = nullptr;
    CLI::Option* opt_eta = nullptr;
    CLI::Option* opt_service = nullptr;
    CLI::Option* opt_track = nullptr;
    CLI::Option* opt_t_max = nullptr;
    CLI::Option* opt_ds_max = nullptr;
    CLI::Option* opt_ds_min = nullptr;
    CLI::Option* opt_dt = nullptr;
    CLI::Option* opt_out = nullptr;
};

[[noreturn]] void fail(const std::string& msg) { throw InvalidParameter(msg); }

/// All channel parameterizations, in flag order (--rho values first).
/// Exactly one of --rho / --snr0-db may be used; eta-curve accepts several
/// values of that one flag, everything else exactly one.
std::vector<ChannelParams> channels_from(const Options& o, bool allow_many) {
    if (!o.rho.empty() && !o.snr0_db.empty())
        fail("give either --rho or --snr0-db, not both");
    if (o.rho.empty() && o.snr0_db.empty())
        fail("one of --rho or --snr0-db is required");
    std::vector<ChannelParams> out;
    for (double r : o.rho) out.emplace_back(r, o.d0, o.alpha);
    for (double s : o.snr0_db) out.emplace_back(rho_from_snr0_db(s, o.d0, o.alpha), o.d0, o.alpha);
    if (!allow_many && out.size() != 1)
        fail("this subcommand takes exactly one --rho or --snr0-db value");
    return out;
}

ChannelParams one_channel(const Options& o) { return channels_from(o, false).front(); }

TrainProfile require_speed(const Options& o) {
    if (o.opt_speed->count() == 0) fail("--speed is required for this subcommand");
    return TrainProfile(o.speed);
}

double require_track_length(const Options& o) {
    if (o.opt_track->count() == 0) fail("--track-length is required for this subcommand");
    if (!(o.track_length > 0.0)) fail("--track-length must be positive");
    return o.track_length;
}

/// --eta xor --service-bits.  Quantity requirements need --speed wherever the
/// resulting interval matters; ratio requirements never do.
ServiceRequirement requirement_from(const Options& o) {
    const bool has_eta = o.opt_eta->count() > 0;
    const bool has_qty = o.opt_service->count() > 0;
    if (has_eta == has_qty) fail("exactly one of --eta or --service-bits is required");
    if (has_eta) return DominantRatio{o.eta};
    return ServiceQuantity{o.service_bits};
}

int grid_points(const Options& o) {
    if (o.points < 2) fail("--points must be at least 2");
    return o.points;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
    xs.front() = lo;
    xs.back() = hi;
    return xs;
}

/// Evaluates f over the grid, one OpenMP slot per index, so output bytes do
/// not depend on the thread count.  The first captured exception is rethrown
/// after the loop (throwing across a parallel region is not allowed).
template <typename F>
std::vector<double> map_grid(const std::vector<double>& xs, F&& f) {
    std::vector<double> ys(xs.size());
    std::exception_ptr first_error = nullptr;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            ys[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical(railplan_cli_map_grid)
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return ys;
}

void emit_rows(std::ostream& os, const std::vector<double>& xs, const std::vector<double>& ys) {
    for (std::size_t i = 0; i < xs.size(); ++i)
        os << format_quantity(xs[i]) << ',' << format_quantity(ys[i]) << '\n';
}

void run_capacity(const Options& o, std::ostream& os) {
    const ChannelParams p = one_channel(o);
    const TrainProfile train = require_speed(o);
    const double t_max = o.opt_t_max->count() ? o.t_max : 10.0 * p.d0 / train.v;
    if (!(t_max > 0.0)) fail("--t-max must be positive");
    const auto ts = linspace(-t_max, t_max, grid_points(o));
    const auto cs = map_grid(ts, [&](double t) { return capacity_at_time(t, p, train); });
    os << "t,capacity_bits_per_s\n";
    emit_rows(os, ts, cs);
}

void run_service_curve(const Options& o, std::ostream& os) {
    const ChannelParams p = one_channel(o);
    const TrainProfile train = require_speed(o);
    const double t_max = o.opt_t_max->count() ? o.t_max : 10.0 * p.d0 / train.v;
    if (!(t_max > 0.0)) fail("--t-max must be positive");
    const auto ts = linspace(-t_max, t_max, grid_points(o));
    const auto ss = map_grid(ts, [&](double t) { return service_up_to_time(t, p, train, o.settings); });
    os << "t,service_bits\n";
    emit_rows(os, ts, ss);
}

void run_eta_curve(const Options& o, std::ostream& os) {
    const auto channels = channels_from(o, true);
    const double ds_max = o.opt_ds_max->count() ? o.ds_max : 20.0 * o.d0;
    if (!(ds_max > 0.0)) fail("--ds-max must be positive");
    const auto ds = linspace(0.0, ds_max, grid_points(o));
    std::vector<std::vector<double>> blocks;
    blocks.reserve(channels.size());
    for (const ChannelParams& p : channels)
        blocks.push_back(map_grid(ds, [&](double d) { return dominant_ratio(d, p, o.settings); }));
    os << "d_s,eta\n";
    for (const auto& etas : blocks) emit_rows(os, ds, etas);
}

void run_speed_curve(const Options& o, std::ostream& os) {
    const ChannelParams p = one_channel(o);
    if (o.opt_service->count() == 0) fail("--service-bits is required for speed-curve");
    const int n = grid_points(o);
    const double ds_max = o.opt_ds_max->count() ? o.ds_max : 20.0 * o.d0;
    if (!(ds_max > 0.0)) fail("--ds-max must be positive");
    const double ds_min = o.opt_ds_min->count() ? o.ds_min : ds_max / n;
    if (!(ds_min > 0.0) || !(ds_min < ds_max)) fail("--ds-min must satisfy 0 < ds-min < ds-max");
    const auto ds = linspace(ds_min, ds_max, n);
    const auto vs = map_grid(ds, [&](double d) {
        return speed_for_service_and_interval(o.service_bits, d, p, o.settings);
    });
    os << "d_s,v\n";
    emit_rows(os, ds, vs);
}

void run_solve_interval(const Options& o, std::ostream& os) {
    const ChannelParams p = one_channel(o);
    const ServiceRequirement req = requirement_from(o);
    double d_s = 0.0;
    if (const auto* ratio = std::get_if<DominantRatio>(&req)) {
        d_s = interval_for_dominant_ratio(ratio->eta, p, o.settings);
    } else {
        d_s = interval_for_service(std::get<ServiceQuantity>(req).s_bits, require_speed(o), p,
                                   o.settings);
    }
    os << "d_s\n" << format_quantity(d_s) << '\n';
}

TrainProfile plan_speed(const Options& o, const ServiceRequirement& req) {
    if (std::holds_alternative<ServiceQuantity>(req)) return require_speed(o);
    // Ratio-derived plans are speed-independent; accept --speed but don't require it.
    return o.opt_speed->count() ? TrainProfile(o.speed) : TrainProfile(1.0);
}

void run_plan(const Options& o, std::ostream& os) {
    const ChannelParams p = one_channel(o);
    const double length = require_track_length(o);
    const ServiceRequirement req = requirement_from(o);
    const TrackPlan plan = plan_track(length, req, plan_speed(o, req), p, o.settings);
    os << "index,position,region_start,region_end,interval_to_next\n";
    for (std::size_t i = 0; i < plan.stations.size(); ++i) {
        const PlannedStation& st = plan.stations[i];
        os << i << ',' << format_quantity(st.position) << ',' << format_quantity(st.region_start)
           << ',' << format_quantity(st.region_end) << ',';
        if (i + 1 < plan.stations.size()) os << format_quantity(plan.intervals[i]);
        os << '\n';
    }
}

void run_strategy(const Options& o, std::ostream& os) {
    const ChannelParams p = one_channel(o);
    const ServiceRequirement req = requirement_from(o);
    const TransmissionWindow w = transmission_window(req, require_speed(o), p, o.settings);
    os << "x_start,x_end,t_start,t_end,buffer_bits\n";
    os << format_quantity(w.x_start) << ',' << format_quantity(w.x_end) << ','
       << format_quantity(w.t_start) << ',' << format_quantity(w.t_end) << ','
       << format_quantity(w.buffer_bits) << '\n';
}

void run_simulate(const Options& o, std::ostream& os) {
    const ChannelParams p = one_channel(o);
    const TrainProfile train = require_speed(o);
    const double length = require_track_length(o);
    const ServiceRequirement req = requirement_from(o);
    const double dt = o.opt_dt->count() ? o.dt : 1e-4 * p.d0 / train.v;
    SimulationConfig cfg{dt, plan_track(length, req, train, p, o.settings), train, p};
    const SimulationReport report = simulate_ride(cfg);
    // One denominator for every row so the tolerance flags apply uniformly.
    const double station_total = total_service(p, train, o.settings);
    const std::size_t n = report.per_station_bits.size();
    os << "station_index,delivered_bits,ratio\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double bits = report.per_station_bits[i];
        os << i << ',' << format_quantity(bits) << ',' << format_quantity(bits / station_total)
           << '\n';
    }
    os << "total," << format_quantity(report.total_bits) << ','
       << format_quantity(report.total_bits / (static_cast<double>(n) * station_total)) << '\n';
}

void dispatch(const std::string& name, const Options& o, std::ostream& os) {
    o.settings.validate();
    if (name == "capacity") return run_capacity(o, os);
    if (name == "service-curve") return run_service_curve(o, os);
    if (name == "eta-curve") return run_eta_curve(o, os);
    if (name == "speed-curve") return run_speed_curve(o, os);
    if (name == "solve-interval") return run_solve_interval(o, os);
    if (name == "plan") return run_plan(o, os);
    if (name == "strategy") return run_strategy(o, os);
    if (name == "simulate") return run_simulate(o, os);
    fail("unknown subcommand: " + name); // unreachable; CLI11 rejects earlier
}

void deliver(const Options& o, const std::string& csv, std::ostream& out) {
    if (o.opt_out->count() == 0) {
        out << csv;
        return;
    }
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) fail("cannot open --out path: " + o.out_path);
    file << csv;
    file.flush();
    if (!file) throw std::runtime_error("write failed: " + o.out_path);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Channel-service planning for rail corridors: capacity/service curves, "
                 "station intervals, track plans, and ride simulation as deterministic CSV"};
    app.name("railplan");

    Options o;
    app.add_option("--rho", o.rho, "Linear SNR scale rho (repeatable for eta-curve)");
    app.add_option("--snr0-db", o.snr0_db,
                   "SNR at the closest-approach point, dB (repeatable for eta-curve)");
    app.add_option("--d0", o.d0, "Station-to-track offset, meters")->capture_default_str();
    app.add_option("--alpha", o.alpha, "Path-loss exponent (> 1)")->capture_default_str();
    o.opt_speed = app.add_option("--speed", o.speed, "Train speed, m/s");
    o.opt_eta = app.add_option("--eta", o.eta, "Dominant-ratio requirement, in (0,1)");
    o.opt_service =
        app.add_option("--service-bits", o.service_bits, "Per-station service requirement, bits");
    o.opt_track = app.add_option("--track-length", o.track_length, "Track length, meters");
    o.opt_t_max =
        app.add_option("--t-max", o.t_max, "Half-width of the symmetric time grid, s (default 10*d0/v)");
    o.opt_ds_max =
        app.add_option("--ds-max", o.ds_max, "Upper end of the d_s grid, meters (default 20*d0)");
    o.opt_ds_min = app.add_option("--ds-min", o.ds_min,
                                  "Lower end of the d_s grid, meters (default ds-max/points)");
    o.opt_dt = app.add_option("--dt", o.dt, "Simulation time step, s (default 1e-4*d0/v)");
    app.add_option("--points", o.points, "Grid points for curve subcommands")->capture_default_str();
    o.opt_out = app.add_option("--out", o.out_path, "Write CSV here instead of standard output");
    app.add_option("--quad-rel-tol", o.settings.quad_rel_tol,
                   "Adaptive quadrature relative tolerance")->capture_default_str();
    app.add_option("--quad-abs-tol", o.settings.quad_abs_tol,
                   "Adaptive quadrature absolute floor, bits scale")->capture_default_str();
    app.add_option("--max-subdivisions", o.settings.max_subdivisions,
                   "Adaptive quadrature subdivision cap")->capture_default_str();
    app.add_option("--root-rel-tol", o.settings.root_rel_tol,
                   "Root-finder relative tolerance")->capture_default_str();
    app.add_option("--max-root-iters", o.settings.max_root_iters,
                   "Root-finder iteration cap")->capture_default_str();
    app.set_config("--config", "", "Flat key=value file of flag defaults (flags override)");

    app.add_subcommand("capacity", "Capacity seen from the train over a symmetric time grid")
        ->fallthrough();
    app.add_subcommand("service-curve", "Accumulated service S(t) over a symmetric time grid")
        ->fallthrough();
    app.add_subcommand("eta-curve", "Dominant ratio eta(d_s), one block per SNR value")
        ->fallthrough();
    app.add_subcommand("speed-curve", "Supportable speed v(d_s) for --service-bits")->fallthrough();
    app.add_subcommand("solve-interval",
                       "Station interval for --eta, or for --service-bits --speed")
        ->fallthrough();
    app.add_subcommand("plan", "Station layout covering --track-length")->fallthrough();
    app.add_subcommand("strategy", "Per-station transmission window and buffer")->fallthrough();
    app.add_subcommand("simulate", "Time-stepped ride over the planned track")->fallthrough();
    app.require_subcommand(1);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err); // --help / --version
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        std::ostringstream csv;
        dispatch(app.get_subcommands().at(0)->get_name(), o, csv);
        deliver(o, csv.str(), out);
        return 0;
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const QuadratureError& e) {
        err << "error: " << e.what() << '\n';
        return 4;
    } catch (const SolverError& e) {
        err << "error: " << e.what() << '\n';
        return 4;
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace railplan::cli
