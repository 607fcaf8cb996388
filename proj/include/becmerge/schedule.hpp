#pragma once

#include <string>

namespace becmerge {

enum class MergeDirection { Radial, Axial };

std::string to_string(MergeDirection d);
MergeDirection direction_from_string(const std::string& s);

/// Two cigar-shaped Gaussian wavepackets of widths (sigma_r, sigma_r, sigma_z),
/// centers a distance d apart along the merge axis, closing linearly from
/// separation0 to 0 over t_merge.
struct TrapGeometry {
    double sigma_r = 1.0;
    double sigma_z = 10.0;
    double separation0 = 6.0;  // same length unit as the widths
    MergeDirection direction = MergeDirection::Radial;
    double t_merge = 4.0;  // in 1/U0 units

    /// Width along the merge axis.
    double sigma_merge() const {
        return direction == MergeDirection::Radial ? sigma_r : sigma_z;
    }

    /// True when the tunneling shape at t=0 is not yet suppressed below 1e-3
    /// of its fully-merged value (traps start too close).
    bool weak_initial_separation() const;
};

/// Convenience builder: sigma_r = 1, sigma_z = sigma_ratio, separation0 given
/// as a multiple of the merge-axis width.
TrapGeometry make_geometry(MergeDirection direction, double t_merge,
                           double sep0_in_sigma_m = 6.0, double sigma_ratio = 10.0);

void validate(const TrapGeometry& g);

/// Center-to-center distance d(t) = separation0 * (1 - t/t_merge).
double separation(const TrapGeometry& g, double t);

/// Closed form of (1/2) Int (|phi1|^4 + |phi2|^4 - 2|phi1|^2|phi2|^2) dr for
/// unit-normalized Gaussians at distance d, with the coupling constant g = 1:
///   (1 - exp(-d^2/(2 sigma_m^2))) / (2 sqrt(2) pi^(3/2) sigma_r^2 sigma_z).
double raw_u_shape(const TrapGeometry& g, double d);

/// Normalized overlap <phi1|phi2> = exp(-d^2/(4 sigma_m^2)); shape of J(t).
double raw_j_shape(const TrapGeometry& g, double d);

/// Calibrated time-dependent coefficients:
///   U(t) = raw_u(d(t)) / raw_u(separation0)   so U(0) = u0 = 1,
///   J(t) = (n/ratio) * raw_j(d(t))            so J(t_merge) = j0 = n/ratio,
/// which fixes n * u0 = ratio * j0. Times are in 1/U0 units throughout.
class MergeSchedule {
  public:
    MergeSchedule(TrapGeometry geometry, int n_cal, double ratio);

    const TrapGeometry& geometry() const { return geometry_; }
    double u0() const { return 1.0; }
    double j0() const { return j0_; }
    int n_cal() const { return n_cal_; }
    double ratio() const { return ratio_; }
    double t_merge() const { return geometry_.t_merge; }
    bool separation_warning() const { return separation_warning_; }

    double u_at(double t) const;
    double j_at(double t) const;

  private:
    TrapGeometry geometry_;
    int n_cal_;
    double ratio_;
    double j0_;
    double u_norm_;  // raw_u at the initial separation
    bool separation_warning_;
};

MergeSchedule calibrate(const TrapGeometry& geometry, int n, double ratio = 4.0);

struct Coefficients {
    double u = 0.0;
    double j = 0.0;
};

/// (U(t), J(t)) for 0 <= t <= t_merge.
Coefficients sample(const MergeSchedule& schedule, double t);

}  // namespace becmerge
