#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "windsim/field.hpp"
#include "windsim/frames.hpp"
#include "windsim/rng.hpp"

using namespace windsim;
using namespace windsim::field;

namespace {

FeatureSet single_unit() { return FeatureSet({PointFeature{{0, 0, 0}, 1.0}}); }

FeatureSet pair_units() {
    return FeatureSet({PointFeature{{1, 0, 0}, 1.0}, PointFeature{{-1, 0, 0}, 1.0}});
}

Vec3 random_point_clear(SplitMix64& rng, const FeatureSet& fs, double min_dist) {
    for (;;) {
        Vec3 x{rng.next_uniform(-4.0, 4.0), rng.next_uniform(-4.0, 4.0),
               rng.next_uniform(-4.0, 4.0)};
        if (fs.min_distance(x) >= min_dist) return x;
    }
}

}  // namespace

TEST_CASE("potential values") {
    CHECK(potential(FeatureSet{}, {3, 1, 4}) == 0.0);
    CHECK(potential(single_unit(), {1, 0, 0}) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(potential(pair_units(), {0, 0, 0}) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK_THROWS_AS(potential(single_unit(), {0, 0, 1e-10}), singularity_error);
}

TEST_CASE("superposition is exact") {
    FeatureSet a({PointFeature{{0, 0, 0}, 2.0}});
    FeatureSet b({PointFeature{{3, 0, 0}, 0.5}});
    FeatureSet both({PointFeature{{0, 0, 0}, 2.0}, PointFeature{{3, 0, 0}, 0.5}});
    SplitMix64 rng(1);
    for (int i = 0; i < 200; ++i) {
        Vec3 x = random_point_clear(rng, both, 0.05);
        CHECK(potential(both, x) == potential(a, x) + potential(b, x));
    }
}

TEST_CASE("spherical symmetry of a single source") {
    SplitMix64 rng(2);
    for (int i = 0; i < 200; ++i) {
        double r = rng.next_uniform(0.2, 5.0);
        Vec3 dir = rng.next_unit_vector3();
        double base = potential(single_unit(), {r, 0, 0});
        CHECK(std::fabs(potential(single_unit(), dir * r) - base) <= 1e-12 * std::fabs(base));
    }
}

TEST_CASE("gradient: analytic vs finite differences") {
    auto fs = pair_units();
    Vec3 g = grad_potential(single_unit(), {1, 0, 0});
    CHECK(g.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.y == 0.0);
    CHECK(g.z == 0.0);

    // Midpoint of a symmetric pair: zero by symmetry.
    Vec3 mid = grad_potential(fs, {0, 0.5, 0});
    CHECK(mid.x == doctest::Approx(0.0).epsilon(1e-14));

    SplitMix64 rng(3);
    for (int i = 0; i < 300; ++i) {
        Vec3 x = random_point_clear(rng, fs, 0.1);
        Vec3 an = grad_potential(fs, x);
        Vec3 fd = grad_potential_fd(fs, x);
        double scale = std::max(1.0, norm(an));
        CHECK(norm(an - fd) <= 1e-6 * scale);
    }
}

TEST_CASE("laplacian vanishes away from sources") {
    CHECK(laplacian(FeatureSet{}, {1, 2, 3}) == 0.0);
    CHECK(std::fabs(laplacian(single_unit(), {2, 0, 0})) < 1e-5);
    CHECK(std::fabs(laplacian(pair_units(), {0, 0, 0})) < 1e-5);

    auto fs = pair_units();
    SplitMix64 rng(4);
    for (int i = 0; i < 1000; ++i) {
        Vec3 x = random_point_clear(rng, fs, 0.1);
        double md = fs.min_distance(x);
        double bound = 1e-4 * std::max(1.0, norm(grad_potential(fs, x)) / md);
        CHECK(std::fabs(laplacian(fs, x)) <= bound);
    }
}

TEST_CASE("unit field") {
    Vec4 c{{1, 0, 0, 0}};
    Vec4 flat = unit_field(FeatureSet{}, {1, 2, 3}, c);
    for (int i = 0; i < 4; ++i) CHECK(flat[i] == c[i]);

    // Radial direction: spatial part points toward the feature, norm 1.
    Vec4 g = unit_field(single_unit(), {2, 0, 0}, c);
    CHECK(g[1] < 0.0);
    CHECK(frames::minkowski_inner(g, g) == doctest::Approx(1.0).epsilon(1e-12));

    auto fs = pair_units();
    SplitMix64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        // Clearance keeps |phi| moderate so cosh^2 - sinh^2 stays near 1 in
        // floating point.
        Vec3 x = random_point_clear(rng, fs, 0.5);
        if (norm(grad_potential(fs, x)) < 1e-8) continue;
        Vec4 u = unit_field(fs, x, c);
        CHECK(std::fabs(frames::minkowski_inner(u, u) - 1.0) <= 1e-12);
        // Spatial part anti-parallel to grad phi (toward the sources).
        Vec3 s = spatial(u);
        if (norm(s) > 1e-12) CHECK(dot(s, grad_potential(fs, x)) < 0.0);
    }

    // Zero gradient with nonzero potential: direction undefined.
    CHECK_THROWS_AS(unit_field(pair_units(), {0, 0, 0}, c), direction_undefined_error);
}

TEST_CASE("closedness residual") {
    CHECK(closedness_residual(FeatureSet{}, {1, 1, 1}) == 0.0);

    auto fs = pair_units();
    SplitMix64 rng(6);
    for (int i = 0; i < 200; ++i) {
        Vec3 x = random_point_clear(rng, fs, 0.2);
        CHECK(closedness_residual(fs, x) < 1e-6);
    }

    // Negative control: the swirl field (-y, x, 0) has curl (0, 0, 2).
    VectorField3 swirl = [](const Vec3& p) { return Vec3{-p.y, p.x, 0.0}; };
    CHECK(closedness_residual(swirl, {0.3, -0.7, 0.2}) > 0.1);
}

TEST_CASE("feature set validation and JSON loading") {
    CHECK_THROWS_AS(FeatureSet({PointFeature{{0, 0, 0}, -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(FeatureSet({PointFeature{{0, 0, 0}, 1.0}, PointFeature{{0, 0, 1e-12}, 1.0}}),
                    std::invalid_argument);

    auto fs = FeatureSet::from_json_text(
        R"({"features":[{"pos":[1.0,0.0,0.0],"mu":2.0},{"pos":[0.0,1.0,0.0]}]})");
    CHECK(fs.size() == 2);
    CHECK(fs.features()[0].mu == 2.0);
    CHECK(fs.features()[1].mu == 1.0);  // default strength
    CHECK(fs.features()[0].position.x == 1.0);

    CHECK_THROWS(FeatureSet::from_json_text("{not json"));
}
