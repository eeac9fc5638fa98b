#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "windsim/geometry.hpp"
#include "windsim/stochastic.hpp"

using namespace windsim;
using namespace windsim::stochastic;
using geometry::kPi;

TEST_CASE("circular expectation closed forms") {
    auto d = circular_expectation(CircularDistribution::make_delta(0.25));
    CHECK(d.p == 1.0);
    CHECK(d.alpha == doctest::Approx(0.25).epsilon(1e-15));

    auto u = circular_expectation(CircularDistribution::make_uniform_line());
    CHECK(u.p == 0.0);

    for (double sigma : {0.1, 0.5, 1.0}) {
        auto g = circular_expectation(CircularDistribution::make_gaussian(0.0, sigma));
        CHECK(g.p == doctest::Approx(std::exp(-kPi * kPi * sigma * sigma / 2)).epsilon(1e-12));
    }

    // Uniform over [center - w, center + w]: modulus sin(pi w)/(pi w).
    auto box = circular_expectation(CircularDistribution::make_uniform(0.3, 0.5));
    CHECK(box.p == doctest::Approx(2.0 / kPi).epsilon(1e-12));
    CHECK(box.alpha == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("table density quadrature") {
    // Uniform density 1 on [-1/2, 1/2]: expectation sin(pi/2)/(pi/2) = 2/pi.
    std::vector<std::pair<double, double>> flat;
    int n = 400;
    for (int i = 0; i <= n; ++i) flat.emplace_back(-0.5 + static_cast<double>(i) / n, 1.0);
    auto a = circular_expectation(CircularDistribution::make_table(flat));
    CHECK(a.p == doctest::Approx(2.0 / kPi).epsilon(1e-6));
    // Symmetric density: phase 0 up to quadrature noise (alpha wraps mod 2).
    CHECK(std::min(a.alpha, 2.0 - a.alpha) <= 1e-6);

    // Unnormalized densities are rejected.
    std::vector<std::pair<double, double>> bad = {{-1.0, 1.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(CircularDistribution::make_table(bad), std::invalid_argument);
}

TEST_CASE("modulus never exceeds one") {
    for (double sigma : {0.05, 0.3, 2.0})
        CHECK(circular_expectation(CircularDistribution::make_gaussian(1.3, sigma)).p <= 1.0);
    for (double w : {0.1, 0.9, 3.7})
        CHECK(circular_expectation(CircularDistribution::make_uniform(0.0, w)).p <= 1.0);
}

TEST_CASE("monte carlo estimator") {
    std::size_t n = 100000;
    auto u = circular_expectation_mc(CircularDistribution::make_uniform_line(), n, 17);
    CHECK(std::abs(u.mean) < 3.0 / std::sqrt(static_cast<double>(n)));

    auto g = circular_expectation_mc(CircularDistribution::make_gaussian(0.0, 0.5), n, 18);
    double exact = std::exp(-kPi * kPi * 0.25 / 2);
    CHECK(std::abs(std::abs(g.mean) - exact) <= 3.0 * g.stderr_est);
}

TEST_CASE("phase rate") {
    CHECK(phase_rate(1.0, kPi) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(phase_rate(0.0, 2.0) == 0.0);
    CHECK(phase_rate(1.7, 4.0) == doctest::Approx(2.0 * phase_rate(1.7, 8.0)).epsilon(1e-15));
    CHECK_THROWS_AS(phase_rate(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("walk sampling") {
    WalkConfig cfg;
    cfg.h = 1.0;
    cfg.T = 1.0;
    cfg.mean_passage = 0.1;
    cfg.seed = 42;
    LagrangianFn free = [](const Vec3&, const Vec3& v) { return 0.5 * norm2(v); };

    auto p1 = sample_walk(cfg, free, 7);
    auto p2 = sample_walk(cfg, free, 7);
    REQUIRE(p1.passages.size() == p2.passages.size());
    for (std::size_t i = 0; i < p1.passages.size(); ++i) {
        CHECK(p1.passages[i].dtau == p2.passages[i].dtau);
        CHECK(p1.passages[i].dxi.x == p2.passages[i].dxi.x);
    }

    // Durations sum to T.
    for (std::uint64_t idx = 0; idx < 200; ++idx) {
        auto p = sample_walk(cfg, free, idx);
        double total = 0.0;
        for (const auto& pas : p.passages) {
            CHECK(pas.dtau > 0.0);
            total += pas.dtau;
        }
        CHECK(std::fabs(total - cfg.T) <= 1e-9);
    }

    // Passage durations are exponential with the configured mean. A long walk
    // keeps the end-truncation bias far below the statistical resolution.
    WalkConfig longcfg = cfg;
    longcfg.T = 1000.0;
    auto lp = sample_walk(longcfg, free, 0);
    double mean_acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i + 1 < lp.passages.size(); ++i) {
        mean_acc += lp.passages[i].dtau;
        ++count;
    }
    REQUIRE(count > 5000);
    double mean = mean_acc / static_cast<double>(count);
    double sigma = longcfg.mean_passage / std::sqrt(static_cast<double>(count));
    CHECK(std::fabs(mean - longcfg.mean_passage) <= 3.0 * sigma);
}

TEST_CASE("path amplitude product law") {
    WalkPath trivial;
    trivial.passages = {{1.0, {0, 0, 0}}};
    trivial.phase_increments = {0.0};
    CHECK(path_amplitude(trivial) == std::complex<double>(1.0, 0.0));

    WalkPath two;
    two.passages = {{0.5, {0, 0, 0}}, {0.5, {0, 0, 0}}};
    two.phase_increments = {0.3, 0.9};
    auto amp = path_amplitude(two);
    CHECK(std::abs(amp) == doctest::Approx(std::exp(-1.2)).epsilon(1e-14));
    CHECK(std::arg(amp) == doctest::Approx(1.2).epsilon(1e-12));

    // Concatenation multiplies amplitudes.
    WalkPath first, second;
    first.phase_increments = {0.3};
    second.phase_increments = {0.9};
    first.passages = {{0.5, {0, 0, 0}}};
    second.passages = {{0.5, {0, 0, 0}}};
    auto prod = path_amplitude(first) * path_amplitude(second);
    CHECK(std::abs(prod - amp) <= 1e-12);
}

TEST_CASE("amplitude sum over the ensemble") {
    WalkConfig cfg;
    cfg.h = 1.0;
    cfg.T = 1.0;
    cfg.mean_passage = 0.05;
    cfg.seed = 9;
    cfg.paths = 2000;

    // Constant Lagrangian: every path carries the same total phase
    // (pi/h) * L * T, so the mean amplitude keeps full modulus.
    double L0 = 0.4;
    LagrangianFn constant = [L0](const Vec3&, const Vec3&) { return L0; };
    auto s = amplitude_sum(cfg, constant);
    double phase = kPi * L0 * cfg.T / cfg.h;
    CHECK(s.modulus == doctest::Approx(std::exp(-phase)).epsilon(1e-10));
    CHECK(s.phase == doctest::Approx(phase).epsilon(1e-10));
    CHECK(s.paths_kept == cfg.paths);
    CHECK(s.negative_phase_paths == 0);

    // Bitwise reproducibility.
    auto s2 = amplitude_sum(cfg, constant);
    CHECK(s.sum.real() == s2.sum.real());
    CHECK(s.sum.imag() == s2.sum.imag());

    WalkConfig tiny = cfg;
    tiny.paths = 50;
    CHECK_THROWS_AS(amplitude_sum(tiny, constant), std::invalid_argument);

    EndpointFilter nowhere{{1e6, 0, 0}, 1e-3};
    CHECK_THROWS_AS(amplitude_sum(cfg, constant, nowhere), insufficient_sample_error);
}

TEST_CASE("standard error shrinks with the ensemble") {
    WalkConfig cfg;
    cfg.h = 1.0;
    cfg.T = 1.0;
    cfg.mean_passage = 0.05;
    cfg.seed = 4;
    cfg.paths = 4000;
    // Position-dependent term so path amplitudes actually vary (the walk's
    // speed is fixed, so a pure kinetic term is constant along every path).
    LagrangianFn well = [](const Vec3& x, const Vec3& v) {
        return 0.5 * norm2(v) + 0.5 * norm2(x);
    };
    auto small = amplitude_sum(cfg, well);
    cfg.paths = 16000;
    auto large = amplitude_sum(cfg, well);
    double ratio = large.stderr_est / small.stderr_est;
    CHECK(ratio > 0.3);
    CHECK(ratio < 0.7);  // expect ~ 1/2 for 4x the paths
}

TEST_CASE("action histogram") {
    WalkConfig cfg;
    cfg.h = 1.0;
    cfg.T = 1.0;
    cfg.mean_passage = 0.05;
    cfg.seed = 77;
    cfg.paths = 5000;

    // Constant Lagrangian: all actions identical, histogram collapses.
    LagrangianFn constant = [](const Vec3&, const Vec3&) { return 0.25; };
    auto flat = action_histogram(cfg, constant, 16);
    CHECK(flat.bins.size() == 1);
    CHECK(flat.bins[0].count == cfg.paths);

    // Random-phase control: no bin dominates. The quadratic well spreads the
    // actions across bins.
    LagrangianFn well = [](const Vec3& x, const Vec3& v) {
        return 0.5 * norm2(v) + 0.5 * norm2(x);
    };
    auto control = action_histogram(cfg, well, 16, std::nullopt,
                                    AmplitudeMode::random_phase_control);
    std::vector<double> mods;
    for (const auto& b : control.bins)
        if (b.count > 0) mods.push_back(b.modulus_sum / std::sqrt(static_cast<double>(b.count)));
    REQUIRE(mods.size() > 4);
    std::sort(mods.begin(), mods.end());
    double median = mods[mods.size() / 2];
    CHECK(mods.back() / median < 3.0);
}
