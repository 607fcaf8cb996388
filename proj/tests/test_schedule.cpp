#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "becmerge/schedule.hpp"
#include "support/quadrature.hpp"

using namespace becmerge;

namespace {

double rel_diff(double a, double b, double scale) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), scale});
}

}  // namespace

TEST_CASE("separation shrinks linearly") {
    const TrapGeometry g = make_geometry(MergeDirection::Radial, 8.0);
    CHECK(separation(g, 0.0) == doctest::Approx(6.0));
    CHECK(separation(g, 8.0) == doctest::Approx(0.0));
    CHECK(separation(g, 4.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(separation(g, -0.1), std::domain_error);
    CHECK_THROWS_AS(separation(g, 8.1), std::domain_error);
}

TEST_CASE("interaction shape endpoints") {
    const TrapGeometry g = make_geometry(MergeDirection::Radial, 1.0);
    const double prefactor =
        1.0 / (2.0 * std::sqrt(2.0) * std::pow(std::numbers::pi, 1.5) * g.sigma_r * g.sigma_r *
               g.sigma_z);
    CHECK(raw_u_shape(g, 0.0) == 0.0);
    CHECK(raw_u_shape(g, 1e6) == doctest::Approx(prefactor).epsilon(1e-12));
    const double sm = g.sigma_merge();
    CHECK(raw_u_shape(g, sm * std::sqrt(2.0)) ==
          doctest::Approx(prefactor * (1.0 - std::exp(-1.0))).epsilon(1e-12));
    CHECK_THROWS_AS(raw_u_shape(g, -1.0), std::domain_error);
}

TEST_CASE("tunneling shape endpoints") {
    const TrapGeometry g = make_geometry(MergeDirection::Axial, 1.0);
    const double sm = g.sigma_merge();
    CHECK(raw_j_shape(g, 0.0) == 1.0);
    CHECK(raw_j_shape(g, 2.0 * sm) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(raw_j_shape(g, 6.0 * sm) == doctest::Approx(std::exp(-9.0)).epsilon(1e-14));
    CHECK_THROWS_AS(raw_j_shape(g, -1.0), std::domain_error);
}

TEST_CASE("closed-form shapes match 3D quadrature") {
    // Independent route: tensor Gauss-Legendre over the wavepacket pair.
    for (MergeDirection dir : {MergeDirection::Radial, MergeDirection::Axial}) {
        const TrapGeometry g = make_geometry(dir, 1.0);
        const double sm = g.sigma_merge();
        const double scale = raw_u_shape(g, 1e9);  // separated-trap plateau
        for (double mult : {0.0, 0.5, 1.0, 2.0, 4.0, 6.0}) {
            const double d = mult * sm;
            const double quad = becmerge::testing::u_shape_by_quadrature(g, d);
            CHECK(rel_diff(raw_u_shape(g, d), quad, scale) <= 1e-8);
            const double ovl = becmerge::testing::overlap_by_quadrature(g, d);
            CHECK(rel_diff(raw_j_shape(g, d), ovl, 1e-6) <= 1e-10);
        }
    }
}

TEST_CASE("calibration constants") {
    const TrapGeometry g = make_geometry(MergeDirection::Radial, 4.0);
    const MergeSchedule s = calibrate(g, 100, 4.0);
    CHECK(s.j0() == doctest::Approx(25.0));
    CHECK(s.u_at(0.0) == 1.0);
    CHECK(s.u_at(4.0) == 0.0);
    CHECK(s.j_at(4.0) == doctest::Approx(25.0));
    CHECK(s.j_at(0.0) == doctest::Approx(25.0 * std::exp(-9.0)).epsilon(1e-12));
    CHECK(100.0 * s.u0() == doctest::Approx(s.ratio() * s.j_at(4.0)));
    CHECK_FALSE(s.separation_warning());
}

TEST_CASE("calibration input errors") {
    const TrapGeometry g = make_geometry(MergeDirection::Radial, 4.0);
    CHECK_THROWS_AS(calibrate(g, 1, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(calibrate(g, 100, 0.0), std::invalid_argument);
    TrapGeometry bad = g;
    bad.sigma_r = 0.0;
    CHECK_THROWS_AS(calibrate(bad, 100, 4.0), std::invalid_argument);
    TrapGeometry close = g;
    close.separation0 = 2.0 * close.sigma_merge();
    CHECK(calibrate(close, 100, 4.0).separation_warning());
}

TEST_CASE("sampled coefficients are monotone and bounded") {
    const TrapGeometry g = make_geometry(MergeDirection::Radial, 4.0);
    const MergeSchedule s = calibrate(g, 80, 4.0);
    double prev_u = 2.0, prev_j = -1.0;
    for (int i = 0; i <= 400; ++i) {
        const double t = 4.0 * i / 400;
        const Coefficients c = sample(s, t);
        CHECK(c.u <= prev_u);
        CHECK(c.j >= prev_j);
        CHECK(c.u >= 0.0);
        CHECK(c.u <= 1.0);
        CHECK(c.j >= 0.0);
        CHECK(c.j <= s.j0() * (1.0 + 1e-14));
        prev_u = c.u;
        prev_j = c.j;
    }
    CHECK_THROWS_AS(sample(s, 4.5), std::domain_error);
}

TEST_CASE("recalibration reproduces identical samples") {
    const TrapGeometry g = make_geometry(MergeDirection::Axial, 2.5);
    const MergeSchedule a = calibrate(g, 60, 4.0);
    const MergeSchedule b = calibrate(a.geometry(), a.n_cal(), a.ratio());
    for (int i = 0; i <= 37; ++i) {
        const double t = 2.5 * i / 37;
        CHECK(a.u_at(t) == b.u_at(t));
        CHECK(a.j_at(t) == b.j_at(t));
    }
}

TEST_CASE("directions coincide when separation is given in sigma_m units") {
    const TrapGeometry r = make_geometry(MergeDirection::Radial, 3.0);
    const TrapGeometry a = make_geometry(MergeDirection::Axial, 3.0);
    const MergeSchedule sr = calibrate(r, 100, 4.0);
    const MergeSchedule sa = calibrate(a, 100, 4.0);
    for (int i = 0; i <= 50; ++i) {
        const double t = 3.0 * i / 50;
        CHECK(sr.u_at(t) == doctest::Approx(sa.u_at(t)).epsilon(1e-13));
        CHECK(sr.j_at(t) == doctest::Approx(sa.j_at(t)).epsilon(1e-13));
    }
}

TEST_CASE("geometry validation") {
    CHECK_THROWS_AS(make_geometry(MergeDirection::Radial, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_geometry(MergeDirection::Radial, 1.0, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(make_geometry(MergeDirection::Radial, 1.0, 6.0, 0.0),
                    std::invalid_argument);
    const TrapGeometry g = make_geometry(MergeDirection::Axial, 1.0);
    CHECK(g.sigma_z == doctest::Approx(10.0 * g.sigma_r));
    CHECK(g.separation0 == doctest::Approx(6.0 * g.sigma_z));
}
