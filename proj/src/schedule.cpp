#include "becmerge/schedule.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace becmerge {

std::string to_string(MergeDirection d) {
    return d == MergeDirection::Radial ? "radial" : "axial";
}

MergeDirection direction_from_string(const std::string& s) {
    if (s == "radial") return MergeDirection::Radial;
    if (s == "axial") return MergeDirection::Axial;
    throw std::invalid_argument("unknown merge direction: " + s);
}

bool TrapGeometry::weak_initial_separation() const {
    const double sm = sigma_merge();
    return std::exp(-separation0 * separation0 / (4.0 * sm * sm)) > 1e-3;
}

TrapGeometry make_geometry(MergeDirection direction, double t_merge,
                           double sep0_in_sigma_m, double sigma_ratio) {
    TrapGeometry g;
    g.sigma_r = 1.0;
    g.sigma_z = sigma_ratio;
    g.direction = direction;
    g.t_merge = t_merge;
    g.separation0 = sep0_in_sigma_m * g.sigma_merge();
    validate(g);
    return g;
}

void validate(const TrapGeometry& g) {
    if (!(g.sigma_r > 0.0) || !(g.sigma_z > 0.0)) {
        throw std::invalid_argument("TrapGeometry: widths must be positive");
    }
    if (!(g.separation0 > 0.0)) {
        throw std::invalid_argument("TrapGeometry: separation0 must be positive");
    }
    if (!(g.t_merge > 0.0)) {
        throw std::invalid_argument("TrapGeometry: t_merge must be positive");
    }
}

double separation(const TrapGeometry& g, double t) {
    if (t < 0.0 || t > g.t_merge) {
        throw std::domain_error("separation: t outside [0, t_merge]");
    }
    return g.separation0 * (1.0 - t / g.t_merge);
}

double raw_u_shape(const TrapGeometry& g, double d) {
    if (d < 0.0) {
        throw std::domain_error("raw_u_shape: d must be nonnegative");
    }
    const double sm = g.sigma_merge();
    const double prefactor =
        1.0 / (2.0 * std::sqrt(2.0) * std::pow(std::numbers::pi, 1.5) * g.sigma_r * g.sigma_r * g.sigma_z);
    return prefactor * (1.0 - std::exp(-d * d / (2.0 * sm * sm)));
}

double raw_j_shape(const TrapGeometry& g, double d) {
    if (d < 0.0) {
        throw std::domain_error("raw_j_shape: d must be nonnegative");
    }
    const double sm = g.sigma_merge();
    return std::exp(-d * d / (4.0 * sm * sm));
}

MergeSchedule::MergeSchedule(TrapGeometry geometry, int n_cal, double ratio)
    : geometry_(geometry), n_cal_(n_cal), ratio_(ratio) {
    validate(geometry_);
    if (n_cal < 2) {
        throw std::invalid_argument("calibrate: atom number must be at least 2");
    }
    if (!(ratio > 0.0)) {
        throw std::invalid_argument("calibrate: ratio must be positive");
    }
    u_norm_ = raw_u_shape(geometry_, geometry_.separation0);
    if (!(u_norm_ > 0.0)) {
        throw std::invalid_argument("calibrate: degenerate geometry, U shape vanishes at t=0");
    }
    j0_ = static_cast<double>(n_cal_) / ratio_;  // raw_j(0) == 1
    separation_warning_ = geometry_.weak_initial_separation();
}

double MergeSchedule::u_at(double t) const {
    return raw_u_shape(geometry_, separation(geometry_, t)) / u_norm_;
}

double MergeSchedule::j_at(double t) const {
    return j0_ * raw_j_shape(geometry_, separation(geometry_, t));
}

MergeSchedule calibrate(const TrapGeometry& geometry, int n, double ratio) {
    return MergeSchedule(geometry, n, ratio);
}

Coefficients sample(const MergeSchedule& schedule, double t) {
    return {schedule.u_at(t), schedule.j_at(t)};
}

}  // namespace becmerge
