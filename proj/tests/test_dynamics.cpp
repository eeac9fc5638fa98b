#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "windsim/dynamics.hpp"
#include "windsim/field.hpp"
#include "windsim/rng.hpp"

using namespace windsim;
using namespace windsim::dynamics;

namespace {

field::FeatureSet single_unit() { return field::FeatureSet({field::PointFeature{{0, 0, 0}, 1.0}}); }

double energy(const field::FeatureSet& fs, const TrajectorySample& s) {
    return 0.5 * norm2(s.velocity) + field::potential(fs, s.position);
}

}  // namespace

TEST_CASE("free motion is a straight line") {
    StateEuclid s0;
    s0.xi = {1, 2, 3};
    s0.xidot = {0.5, -0.25, 1.0};
    IntegratorConfig cfg{1e-2, 100, Scheme::leapfrog};
    auto traj = integrate_newtonian(field::FeatureSet{}, s0, cfg);
    const auto& last = traj.samples.back();
    CHECK(last.position.x == doctest::Approx(1.0 + 0.5 * 1.0).epsilon(1e-12));
    CHECK(last.position.y == doctest::Approx(2.0 - 0.25 * 1.0).epsilon(1e-12));
    CHECK(last.velocity.z == 1.0);
}

TEST_CASE("circular orbit holds its radius") {
    StateEuclid s0;
    s0.xi = {1, 0, 0};
    s0.xidot = {0, 1, 0};  // speed sqrt(mu/r) = 1
    IntegratorConfig cfg{1e-3, 1000, Scheme::leapfrog};
    auto traj = integrate_newtonian(single_unit(), s0, cfg);
    double worst = 0.0;
    for (const auto& s : traj.samples) worst = std::max(worst, std::fabs(norm(s.position) - 1.0));
    CHECK(worst < 1e-6);
}

TEST_CASE("energy conservation on a radial drop") {
    auto fs = single_unit();
    StateEuclid s0;
    s0.xi = {2, 0, 0};
    IntegratorConfig cfg{1e-4, 5000, Scheme::leapfrog};
    auto traj = integrate_newtonian(fs, s0, cfg);
    double e0 = energy(fs, traj.samples.front());
    for (const auto& s : traj.samples) CHECK(std::fabs(energy(fs, s) - e0) <= 1e-8);
}

TEST_CASE("long Kepler run stays within the energy budget") {
    auto fs = single_unit();
    StateEuclid s0;
    s0.xi = {1, 0, 0};
    s0.xidot = {0, 1, 0};
    IntegratorConfig cfg{1e-3, 10000, Scheme::leapfrog};
    auto traj = integrate_newtonian(fs, s0, cfg);
    double e0 = energy(fs, traj.samples.front());
    for (const auto& s : traj.samples)
        CHECK(std::fabs(energy(fs, s) - e0) <= 1e-6 * std::fabs(e0));
}

TEST_CASE("falling into the source is a capture error") {
    StateEuclid s0;
    s0.xi = {2, 0, 0};
    IntegratorConfig cfg{1e-3, 4000, Scheme::leapfrog};
    CHECK_THROWS_AS(integrate_newtonian(single_unit(), s0, cfg), capture_error);
}

TEST_CASE("leapfrog and rk4 agree") {
    StateEuclid s0;
    s0.xi = {1.2, 0, 0};
    s0.xidot = {0, 0.8, 0};
    IntegratorConfig lf{1e-4, 2000, Scheme::leapfrog};
    IntegratorConfig rk{1e-4, 2000, Scheme::rk4};
    auto a = integrate_newtonian(single_unit(), s0, lf);
    auto b = integrate_newtonian(single_unit(), s0, rk);
    CHECK(norm(a.samples.back().position - b.samples.back().position) < 1e-6);
}

TEST_CASE("constant unit field gives exactly quadratic motion") {
    geometry::MinkowskiEvent X0;
    Vec4 V0{{1, 0.2, 0, 0}};
    Vec4 c{{1, 0, 0, 0}};
    IntegratorConfig cfg{1e-2, 100, Scheme::leapfrog};
    auto traj = integrate_minkowski(field::FeatureSet{}, X0, V0, cfg, c);
    double T = cfg.dt * cfg.steps;
    const auto& last = traj.samples.back();
    for (int i = 0; i < 4; ++i)
        CHECK(last.position[i] ==
              doctest::Approx(V0[i] * T + 0.5 * c[i] * T * T).epsilon(1e-10));
    // The integrated time component grows monotonically under a positive
    // time-component field.
    for (std::size_t k = 1; k < traj.samples.size(); ++k)
        CHECK(traj.samples[k].velocity[0] > traj.samples[k - 1].velocity[0]);
}

TEST_CASE("weak-field 4-vector dynamics projects onto the Newtonian track") {
    field::FeatureSet fs({field::PointFeature{{0, 0, 0}, 1e-4}});
    geometry::MinkowskiEvent X0{{0, 1, 0, 0}};
    Vec4 V0{{1, 0, 0, 0}};
    IntegratorConfig cfg{1e-3, 1000, Scheme::leapfrog};
    auto full = integrate_minkowski(fs, X0, V0, cfg);

    StateEuclid s0;
    s0.xi = {1, 0, 0};
    auto flat = integrate_newtonian(fs, s0, cfg);

    for (std::size_t k = 0; k < full.samples.size(); k += 100) {
        Vec3 a = spatial(full.samples[k].position);
        Vec3 b = flat.samples[k].position;
        CHECK(norm(a - b) <= 1e-3 * std::max(1.0, norm(b)));
    }
}

TEST_CASE("flat geodesics are straight") {
    IntegratorConfig cfg{1e-3, 1000, Scheme::rk4};
    auto traj = geodesic_weakfield([](double) { return 0.0;}, 2.0, -0.25, cfg);
    // dr/ds is constant; the clock rate tdot = sqrt(1 + rdot^2) is too.
    for (const auto& s : traj.samples) {
        CHECK(s.r == doctest::Approx(2.0 - 0.25 * s.s).epsilon(1e-9));
        CHECK(s.tdot == doctest::Approx(std::sqrt(1.0625)).epsilon(1e-9));
    }
}

TEST_CASE("weak-field geodesic acceleration is Newtonian") {
    double mu = 1e-6;
    auto phi = [mu](double r) { return -mu / r; };
    IntegratorConfig cfg{1e-3, 10, Scheme::rk4};
    auto traj = geodesic_weakfield(phi, 1.0, 0.0, cfg);
    const auto& s = traj.samples;
    double d2r = (s[2].r - 2 * s[1].r + s[0].r) / (cfg.dt * cfg.dt);
    CHECK(std::fabs(d2r - (-mu)) <= 0.01 * mu);
}

TEST_CASE("geodesic deviation from Newtonian scales with the field strength") {
    auto deviation = [](double mu) {
        auto phi = [mu](double r) { return -mu / r; };
        IntegratorConfig cfg{1e-3, 1000, Scheme::rk4};
        auto geo = geodesic_weakfield(phi, 1.0, 0.0, cfg);
        field::FeatureSet fs({field::PointFeature{{0, 0, 0}, mu}});
        StateEuclid s0;
        s0.xi = {1, 0, 0};
        auto newton = integrate_newtonian(fs, s0, cfg);
        double worst = 0.0;
        for (std::size_t k = 0; k < geo.samples.size(); ++k)
            worst = std::max(worst,
                             std::fabs(geo.samples[k].r - newton.samples[k].position.x));
        return worst;
    };
    double d_small = deviation(1e-6);
    double d_large = deviation(1e-3);
    CHECK(d_large > 50.0 * d_small);  // roughly linear over three decades
}

TEST_CASE("line action of an aligned constant field") {
    Vec4 c{{1, 0, 0, 0}};
    Trajectory4 traj;
    traj.dt = 1e-2;
    for (int k = 0; k <= 100; ++k) {
        Trajectory4Sample s;
        s.tau = k * traj.dt;
        s.position = Vec4{{s.tau, 0, 0, 0}};
        s.velocity = c;
        traj.samples.push_back(s);
    }
    double a = action_line(field::FeatureSet{}, traj, c);
    CHECK(a == doctest::Approx(1.0).epsilon(1e-12));

    // Orientation reversal flips the sign.
    Trajectory4 rev = traj;
    for (auto& s : rev.samples) s.velocity = s.velocity * -1.0;
    CHECK(action_line(field::FeatureSet{}, rev, c) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("discrete Lagrangian action is stationary on integrated orbits") {
    auto fs = single_unit();
    StateEuclid s0;
    s0.xi = {1, 0, 0};
    s0.xidot = {0, 1, 0};
    IntegratorConfig cfg{1e-3, 2000, Scheme::leapfrog};
    auto traj = integrate_newtonian(fs, s0, cfg);
    double base = lagrangian_action(fs, traj);

    auto perturbed_action = [&](double eps) {
        Trajectory p = traj;
        std::size_t n = p.samples.size();
        for (std::size_t k = 1; k + 1 < n; ++k) {
            double bump = std::sin(geometry::kPi * static_cast<double>(k) /
                                   static_cast<double>(n - 1));
            p.samples[k].position.y += eps * bump;
        }
        return lagrangian_action(fs, p);
    };

    double d1 = std::fabs(perturbed_action(1e-2) - base);
    double d2 = std::fabs(perturbed_action(1e-3) - base);
    double slope = std::log10(d1 / d2);
    CHECK(slope >= 1.9);
}

TEST_CASE("field action") {
    GridRegion shell{{{0.5, 2.0, 12}, {0.5, 2.0, 12}, {0.5, 2.0, 12}}};
    CHECK(field_action(field::FeatureSet{}, shell) == 0.0);

    auto fs = single_unit();
    double coarse = field_action(fs, shell);
    GridRegion fine{{{0.5, 2.0, 24}, {0.5, 2.0, 24}, {0.5, 2.0, 24}}};
    double refined = field_action(fs, fine);
    CHECK(std::fabs(refined - coarse) <= 0.01 * std::fabs(refined));
    CHECK(refined < 0.0);  // -|grad phi|^2 integrand

    GridRegion overlapping{{{-1.0, 1.0, 8}, {-1.0, 1.0, 8}, {-1.0, 1.0, 8}}};
    CHECK_THROWS_AS(field_action(fs, overlapping), field::singularity_error);
}

TEST_CASE("2d flow-geometry action") {
    GridRegion square{{{0.0, 1.0, 32}, {0.0, 1.0, 32}}};
    auto zero = [](double, double) { return 0.0; };
    CHECK(riemann_action_2d(zero, square) == doctest::Approx(1.0).epsilon(1e-12));

    // Constant deformation leaves the measure untouched (|det| = 1).
    auto constant = [](double, double) { return 0.7; };
    CHECK(riemann_action_2d(constant, square) == doctest::Approx(1.0).epsilon(1e-10));

    auto wavy = [](double a, double b) { return 0.1 * std::sin(a + 2 * b); };
    double coarse = riemann_action_2d(wavy, square);
    GridRegion finer{{{0.0, 1.0, 64}, {0.0, 1.0, 64}}};
    double refined = riemann_action_2d(wavy, finer);
    CHECK(std::fabs(refined - coarse) <= 0.01 * std::fabs(refined));
}

TEST_CASE("4-volume flux identity") {
    GridRegion box{{{0.0, 1.0, 4}, {2.0, 3.0, 4}, {0.0, 1.0, 4}, {0.0, 1.0, 4}}};
    auto empty = flux_action_4d(field::FeatureSet{}, box);
    CHECK(empty.flux_integral == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(empty.volume_integral == doctest::Approx(1.0).epsilon(1e-12));

    field::FeatureSet weak({field::PointFeature{{0, 0, 0}, 1e-3}});
    auto fa = flux_action_4d(weak, box);
    // The two discretizations agree (checked internally to 1e-10 relative).
    CHECK(std::fabs(fa.flux_integral - fa.volume_integral) <=
          1e-10 * std::fabs(fa.flux_integral));

    GridRegion doubled{{{0.0, 2.0, 8}, {2.0, 3.0, 4}, {0.0, 1.0, 4}, {0.0, 1.0, 4}}};
    auto fb = flux_action_4d(field::FeatureSet{}, doubled);
    CHECK(fb.flux_integral == doctest::Approx(2.0 * empty.flux_integral).epsilon(1e-12));
}

TEST_CASE("config validation") {
    IntegratorConfig bad_dt{0.0, 10, Scheme::leapfrog};
    CHECK_THROWS_AS(bad_dt.validate(), std::invalid_argument);
    IntegratorConfig bad_steps{1e-3, 0, Scheme::leapfrog};
    CHECK_THROWS_AS(bad_steps.validate(), std::invalid_argument);
    GridRegion inverted{{{1.0, 0.0, 4}}};
    CHECK_THROWS_AS(inverted.validate(), std::invalid_argument);
}
