#pragma once

// Test-only 3D tensor-product Gauss-Legendre quadrature and the Gaussian
// wavepacket pair it integrates. Independent route for checking the closed
// forms in the schedule module: no code shared with raw_u_shape/raw_j_shape.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "becmerge/schedule.hpp"

namespace becmerge::testing {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Newton iteration on P_n; standard construction.
inline GaussLegendreRule gauss_legendre(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

// Integrate f over [ax,bx] x [ay,by] x [az,bz], n nodes per axis.
inline double integrate_box(const std::function<double(double, double, double)>& f,
                            double ax, double bx, double ay, double by, double az,
                            double bz, int n) {
    const GaussLegendreRule rule = gauss_legendre(n);
    auto map = [](double t, double a, double b) { return 0.5 * (b - a) * t + 0.5 * (a + b); };
    const double jac = 0.125 * (bx - ax) * (by - ay) * (bz - az);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = map(rule.nodes[i], ax, bx);
        for (int j = 0; j < n; ++j) {
            const double y = map(rule.nodes[j], ay, by);
            double inner = 0.0;
            for (int k = 0; k < n; ++k) {
                const double z = map(rule.nodes[k], az, bz);
                inner += rule.weights[k] * f(x, y, z);
            }
            sum += rule.weights[i] * rule.weights[j] * inner;
        }
    }
    return jac * sum;
}

// Normalized cigar-shaped wavepacket centered at `center` along the merge
// axis (x for radial merges, z for axial ones).
inline double wavepacket(const TrapGeometry& g, double center, double x, double y,
                         double z) {
    const double norm =
        1.0 / (std::pow(std::numbers::pi, 0.75) * g.sigma_r * std::sqrt(g.sigma_z));
    double rx = x, rz = z;
    if (g.direction == MergeDirection::Radial) {
        rx -= center;
    } else {
        rz -= center;
    }
    return norm *
           std::exp(-(rx * rx + y * y) / (2.0 * g.sigma_r * g.sigma_r)) *
           std::exp(-rz * rz / (2.0 * g.sigma_z * g.sigma_z));
}

struct QuadratureBox {
    double ax, bx, ay, by, az, bz;
};

inline QuadratureBox wavepacket_box(const TrapGeometry& g, double d) {
    constexpr double kSigmas = 8.5;
    QuadratureBox box{};
    const double rx = kSigmas * g.sigma_r;
    const double rz = kSigmas * g.sigma_z;
    if (g.direction == MergeDirection::Radial) {
        box.ax = -(0.5 * d + rx);
        box.bx = 0.5 * d + rx;
        box.az = -rz;
        box.bz = rz;
    } else {
        box.ax = -rx;
        box.bx = rx;
        box.az = -(0.5 * d + rz);
        box.bz = 0.5 * d + rz;
    }
    box.ay = -rx;
    box.by = rx;
    return box;
}

// (1/2) Int (phi1^2 - phi2^2)^2 dr for packets a distance d apart; the
// interaction-coefficient shape with the coupling constant set to 1.
inline double u_shape_by_quadrature(const TrapGeometry& g, double d, int nodes = 96) {
    const QuadratureBox box = wavepacket_box(g, d);
    return integrate_box(
        [&](double x, double y, double z) {
            const double p1 = wavepacket(g, 0.5 * d, x, y, z);
            const double p2 = wavepacket(g, -0.5 * d, x, y, z);
            const double diff = p1 * p1 - p2 * p2;
            return 0.5 * diff * diff;
        },
        box.ax, box.bx, box.ay, box.by, box.az, box.bz, nodes);
}

// Int phi1 phi2 dr.
inline double overlap_by_quadrature(const TrapGeometry& g, double d, int nodes = 96) {
    const QuadratureBox box = wavepacket_box(g, d);
    return integrate_box(
        [&](double x, double y, double z) {
            return wavepacket(g, 0.5 * d, x, y, z) * wavepacket(g, -0.5 * d, x, y, z);
        },
        box.ax, box.bx, box.ay, box.by, box.az, box.bz, nodes);
}

}  // namespace becmerge::testing
