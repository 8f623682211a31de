#include "railplan/channel.hpp"

#include <cmath>

#include "railplan/errors.hpp"

namespace railplan {

ChannelParams::ChannelParams(double rho_, double d0_, double alpha_)
    : rho(rho_), d0(d0_), alpha(alpha_) {
    if (!(rho > 0.0))
        throw InvalidParameter("invalid-parameter: rho must be > 0");
    if (!(d0 > 0.0))
        throw InvalidParameter("invalid-parameter: d0 must be > 0");
    if (!(alpha > 1.0))
        throw InvalidParameter("invalid-parameter: alpha must be > 1 (total service diverges otherwise)");
}

TrainProfile::TrainProfile(double v_) : v(v_) {
    if (!(v > 0.0))
        throw InvalidParameter("invalid-parameter: speed must be > 0");
}

double rho_from_snr0_db(double snr0_db, double d0, double alpha) {
    if (!(d0 > 0.0))
        throw InvalidParameter("invalid-parameter: d0 must be > 0");
    if (!(alpha > 1.0))
        throw InvalidParameter("invalid-parameter: alpha must be > 1");
    return std::pow(10.0, snr0_db / 10.0) * std::pow(d0, alpha);
}

double snr_at_position(double x, const ChannelParams& p) {
    return p.rho / std::pow(p.d0 * p.d0 + x * x, p.alpha / 2.0);
}

double capacity_at_position(double x, const ChannelParams& p) {
    return std::log1p(snr_at_position(x, p)) / M_LN2;
}

double capacity_at_time(double t, const ChannelParams& p, const TrainProfile& train) {
    return capacity_at_position(train.v * t, p);
}

} // namespace railplan
