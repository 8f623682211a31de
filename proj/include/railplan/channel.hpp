#ifndef RAILPLAN_CHANNEL_HPP
#define RAILPLAN_CHANNEL_HPP

namespace railplan {

/// Path-loss/SNR model of a single trackside station.
///
/// The received linear SNR at track offset x from the station's foot point is
/// rho / (d0^2 + x^2)^(alpha/2), where rho = 2*Ps/N0 carries units of
/// distance^alpha so the ratio is dimensionless.  alpha > 1 is required for
/// the total service integral to converge.
struct ChannelParams {
    double rho;   // SNR scale, units distance^alpha
    double d0;    // perpendicular station-to-track offset, meters
    double alpha; // path-loss exponent

    ChannelParams(double rho, double d0, double alpha);
};

/// Train moving along the track at constant speed v > 0 (m/s).
struct TrainProfile {
    double v;

    explicit TrainProfile(double v);
};

/// rho such that the received SNR at the foot point (x = 0) equals snr0_db.
double rho_from_snr0_db(double snr0_db, double d0, double alpha);

/// Received linear SNR at track position x (meters from the foot point).
/// Even in x, maximal at x = 0, strictly decreasing in |x|.
double snr_at_position(double x, const ChannelParams& p);

/// Instantaneous capacity log2(1 + SNR(x)) in bits/s per unit bandwidth.
double capacity_at_position(double x, const ChannelParams& p);

/// Capacity seen from the train at time t (t = 0 at closest approach);
/// identical to capacity_at_position(v*t, p).
double capacity_at_time(double t, const ChannelParams& p, const TrainProfile& train);

} // namespace railplan

#endif
