#include "windsim/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "windsim/frames.hpp"

namespace windsim::dynamics {

namespace {

// Distance from point p to the segment [a, b].
double segment_distance(const Vec3& a, const Vec3& b, const Vec3& p) {
    Vec3 d = b - a;
    double len2 = norm2(d);
    if (len2 == 0.0) return norm(p - a);
    double t = dot(p - a, d) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + t * d));
}

// A discrete sample essentially never lands inside the tiny singularity
// radius, so capture is detected on the swept segment between samples.
void check_capture(const field::FeatureSet& fs, const Vec3& from, const Vec3& to) {
    for (const auto& f : fs.features())
        if (segment_distance(from, to, f.position) < field::kSingularityRadius)
            throw capture_error("integrate: trajectory entered a feature's singularity radius");
}

}  // namespace

Trajectory integrate(const AccelFn& accel, const StateEuclid& s0, const IntegratorConfig& cfg,
                     const StepGuard& guard) {
    cfg.validate();
    Trajectory traj;
    traj.dt = cfg.dt;
    traj.samples.reserve(static_cast<std::size_t>(cfg.steps) + 1);

    Vec3 x = s0.xi;
    Vec3 v = s0.xidot;
    double tau = s0.tau;
    traj.samples.push_back({tau, x, v});

    if (cfg.scheme == Scheme::leapfrog) {
        Vec3 a = accel(x);
        for (long k = 0; k < cfg.steps; ++k) {
            Vec3 prev = x;
            Vec3 vh = v + 0.5 * cfg.dt * a;
            x += cfg.dt * vh;
            if (guard) guard(prev, x);
            a = accel(x);
            v = vh + 0.5 * cfg.dt * a;
            tau = s0.tau + (k + 1) * cfg.dt;
            traj.samples.push_back({tau, x, v});
        }
    } else {
        for (long k = 0; k < cfg.steps; ++k) {
            Vec3 prev = x;
            Vec3 k1x = v, k1v = accel(x);
            Vec3 k2x = v + 0.5 * cfg.dt * k1v, k2v = accel(x + 0.5 * cfg.dt * k1x);
            Vec3 k3x = v + 0.5 * cfg.dt * k2v, k3v = accel(x + 0.5 * cfg.dt * k2x);
            Vec3 k4x = v + cfg.dt * k3v, k4v = accel(x + cfg.dt * k3x);
            x += (cfg.dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
            v += (cfg.dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            if (guard) guard(prev, x);
            tau = s0.tau + (k + 1) * cfg.dt;
            traj.samples.push_back({tau, x, v});
        }
    }
    return traj;
}

Trajectory integrate_newtonian(const field::FeatureSet& fs, const StateEuclid& s0,
                               const IntegratorConfig& cfg) {
    AccelFn accel = [&fs](const Vec3& x) {
        try {
            return -1.0 * field::grad_potential(fs, x);
        } catch (const field::singularity_error&) {
            throw capture_error("integrate: trajectory entered a feature's singularity radius");
        }
    };
    if (fs.empty()) accel = [](const Vec3&) { return Vec3{}; };
    StepGuard guard = [&fs](const Vec3& from, const Vec3& to) { check_capture(fs, from, to); };
    return integrate(accel, s0, cfg, guard);
}

Trajectory4 integrate_minkowski(const field::FeatureSet& fs, const geometry::MinkowskiEvent& X0,
                                const Vec4& V0, const IntegratorConfig& cfg, const Vec4& c) {
    cfg.validate();
    if (!finite(V0)) throw std::invalid_argument("integrate_minkowski: non-finite initial velocity");

    auto accel = [&fs, &c](const Vec4& X) -> Vec4 {
        try {
            return field::unit_field(fs, spatial(X), c);
        } catch (const field::singularity_error&) {
            throw capture_error("integrate_minkowski: trajectory entered a singularity radius");
        }
    };

    Trajectory4 traj;
    traj.dt = cfg.dt;
    traj.samples.reserve(static_cast<std::size_t>(cfg.steps) + 1);

    Vec4 X{{X0.x[0], X0.x[1], X0.x[2], X0.x[3]}};
    Vec4 V = V0;
    traj.samples.push_back({0.0, X, V});

    if (cfg.scheme == Scheme::leapfrog) {
        Vec4 A = accel(X);
        for (long k = 0; k < cfg.steps; ++k) {
            Vec4 Vh = V + 0.5 * cfg.dt * A;
            X += cfg.dt * Vh;
            A = accel(X);
            V = Vh + 0.5 * cfg.dt * A;
            traj.samples.push_back({(k + 1) * cfg.dt, X, V});
        }
    } else {
        for (long k = 0; k < cfg.steps; ++k) {
            Vec4 k1x = V, k1v = accel(X);
            Vec4 k2x = V + 0.5 * cfg.dt * k1v, k2v = accel(X + 0.5 * cfg.dt * k1x);
            Vec4 k3x = V + 0.5 * cfg.dt * k2v, k3v = accel(X + 0.5 * cfg.dt * k2x);
            Vec4 k4x = V + cfg.dt * k3v, k4v = accel(X + cfg.dt * k3x);
            X += (cfg.dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
            V += (cfg.dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            traj.samples.push_back({(k + 1) * cfg.dt, X, V});
        }
    }
    return traj;
}

GeodesicTrajectory geodesic_weakfield(const std::function<double(double)>& phi_of_r, double r0,
                                      double rdot0, const IntegratorConfig& cfg,
                                      const std::function<double(double)>& dphi_of_r) {
    cfg.validate();
    std::function<double(double)> dphi = dphi_of_r;
    if (!dphi) {
        dphi = [&phi_of_r](double r) {
            double h = 1e-6 * std::max(1.0, std::fabs(r));
            return (phi_of_r(r + h) - phi_of_r(r - h)) / (2.0 * h);
        };
    }

    struct S {
        double t, tdot, r, rdot;
    };
    auto deriv = [&](const S& s) -> S {
        double phi = phi_of_r(s.r);
        double dp = dphi(s.r);
        double A = std::exp(2.0 * phi);
        double B = std::exp(-2.0 * phi);
        double tddot = -2.0 * dp * s.rdot * s.tdot;
        double rddot = -dp * (A * s.tdot * s.tdot - B * s.rdot * s.rdot) / B;
        return {s.tdot, tddot, s.rdot, rddot};
    };

    double phi0 = phi_of_r(r0);
    double A0 = std::exp(2.0 * phi0);
    double B0 = std::exp(-2.0 * phi0);
    // Timelike normalization A tdot^2 - B rdot^2 = 1 fixes the initial clock
    // rate.
    S s{0.0, std::sqrt((1.0 + B0 * rdot0 * rdot0) / A0), r0, rdot0};

    GeodesicTrajectory traj;
    traj.dt = cfg.dt;
    traj.samples.reserve(static_cast<std::size_t>(cfg.steps) + 1);
    traj.samples.push_back({0.0, s.t, s.tdot, s.r, s.rdot});

    // RK4 throughout: the geodesic force is velocity-dependent, which a plain
    // leapfrog kick does not accommodate.
    for (long k = 0; k < cfg.steps; ++k) {
        S k1 = deriv(s);
        S s2{s.t + 0.5 * cfg.dt * k1.t, s.tdot + 0.5 * cfg.dt * k1.tdot,
             s.r + 0.5 * cfg.dt * k1.r, s.rdot + 0.5 * cfg.dt * k1.rdot};
        S k2 = deriv(s2);
        S s3{s.t + 0.5 * cfg.dt * k2.t, s.tdot + 0.5 * cfg.dt * k2.tdot,
             s.r + 0.5 * cfg.dt * k2.r, s.rdot + 0.5 * cfg.dt * k2.rdot};
        S k3 = deriv(s3);
        S s4{s.t + cfg.dt * k3.t, s.tdot + cfg.dt * k3.tdot, s.r + cfg.dt * k3.r,
             s.rdot + cfg.dt * k3.rdot};
        S k4 = deriv(s4);
        s.t += (cfg.dt / 6.0) * (k1.t + 2.0 * k2.t + 2.0 * k3.t + k4.t);
        s.tdot += (cfg.dt / 6.0) * (k1.tdot + 2.0 * k2.tdot + 2.0 * k3.tdot + k4.tdot);
        s.r += (cfg.dt / 6.0) * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r);
        s.rdot += (cfg.dt / 6.0) * (k1.rdot + 2.0 * k2.rdot + 2.0 * k3.rdot + k4.rdot);
        traj.samples.push_back({(k + 1) * cfg.dt, s.t, s.tdot, s.r, s.rdot});
    }
    return traj;
}

double action_line(const field::FeatureSet& fs, const Trajectory4& traj, const Vec4& c) {
    if (traj.samples.size() < 2) throw std::invalid_argument("action_line: need at least 2 samples");
    double acc = 0.0;
    const auto& samples = traj.samples;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        Vec4 g = fs.empty() ? c : field::unit_field(fs, spatial(samples[k].position), c);
        double integrand = frames::minkowski_inner(g, samples[k].velocity);
        double w = (k == 0 || k + 1 == samples.size()) ? 0.5 : 1.0;
        acc += w * integrand;
    }
    return acc * traj.dt;
}

double lagrangian_action(const field::FeatureSet& fs, const Trajectory& traj) {
    if (traj.samples.size() < 2)
        throw std::invalid_argument("lagrangian_action: need at least 2 samples");
    double acc = 0.0;
    const auto& s = traj.samples;
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        Vec3 dx = s[k + 1].position - s[k].position;
        double kinetic = 0.5 * norm2(dx) / (traj.dt * traj.dt);
        double pot = fs.empty() ? 0.0 : field::potential(fs, s[k].position);
        acc += (kinetic - pot) * traj.dt;
    }
    return acc;
}

namespace {

void check_region_clear(const field::FeatureSet& fs, const GridRegion& region3) {
    for (const auto& f : fs.features()) {
        bool inside = true;
        const Vec3& p = f.position;
        double coords[3] = {p.x, p.y, p.z};
        for (int a = 0; a < 3; ++a)
            if (coords[a] < region3.axes[a].lo || coords[a] > region3.axes[a].hi) inside = false;
        if (inside)
            throw field::singularity_error("field_action: a feature lies inside the region");
    }
}

template <typename F>
void for_each_cell_center_3d(const GridRegion& region3, F&& fn) {
    const auto& ax = region3.axes;
    double hx = (ax[0].hi - ax[0].lo) / ax[0].n;
    double hy = (ax[1].hi - ax[1].lo) / ax[1].n;
    double hz = (ax[2].hi - ax[2].lo) / ax[2].n;
    for (long i = 0; i < ax[0].n; ++i)
        for (long j = 0; j < ax[1].n; ++j)
            for (long k = 0; k < ax[2].n; ++k)
                fn(Vec3{ax[0].lo + (i + 0.5) * hx, ax[1].lo + (j + 0.5) * hy,
                        ax[2].lo + (k + 0.5) * hz});
}

}  // namespace

double field_action(const Grad3Fn& grad, const GridRegion& region3, double time_extent) {
    if (region3.axes.size() != 3) throw std::invalid_argument("field_action: need a 3-axis region");
    region3.validate();
    double cell = region3.cell_volume();
    double acc = 0.0;
    // Static field: the (dphi/dt)^2 term vanishes, leaving -|grad phi|^2.
    for_each_cell_center_3d(region3, [&](const Vec3& x) { acc -= norm2(grad(x)) * cell; });
    return acc * time_extent;
}

double field_action(const field::FeatureSet& fs, const GridRegion& region3, double time_extent) {
    if (region3.axes.size() != 3) throw std::invalid_argument("field_action: need a 3-axis region");
    region3.validate();
    check_region_clear(fs, region3);
    if (fs.empty()) return 0.0;
    return field_action([&fs](const Vec3& x) { return field::grad_potential(fs, x); }, region3,
                        time_extent);
}

double riemann_action_2d(const std::function<double(double, double)>& varphi_profile,
                         const GridRegion& region2) {
    if (region2.axes.size() != 2) throw std::invalid_argument("riemann_action_2d: need a 2-axis region");
    region2.validate();
    const auto& ax = region2.axes;
    double h0 = (ax[0].hi - ax[0].lo) / ax[0].n;
    double h1 = (ax[1].hi - ax[1].lo) / ax[1].n;
    double cell = h0 * h1;
    double acc = 0.0;
    for (long i = 0; i < ax[0].n; ++i)
        for (long j = 0; j < ax[1].n; ++j) {
            double varphi = varphi_profile(ax[0].lo + (i + 0.5) * h0, ax[1].lo + (j + 0.5) * h1);
            double up = std::exp(varphi);
            double dn = std::exp(-varphi);
            if (!std::isfinite(up) || !std::isfinite(dn))
                throw std::range_error("riemann_action_2d: e^{varphi} outside double range");
            // Gram matrix of the deformed tangent pair (e^phi g, e^-phi g1)
            // under the (+,-) form.
            double g2x2[4] = {up * up, 0.0, 0.0, -dn * dn};
            double det = frames::lu_determinant(g2x2, 2);
            if (det >= 0.0) throw std::domain_error("riemann_action_2d: degenerate Gram matrix");
            // Unit field, so g^2(x') = 1.
            acc += std::sqrt(-det) * cell;
        }
    return acc;
}

namespace {

// Complete a unit timelike c to an orthonormal frame (c, c1, c2, c3) by
// Minkowski Gram-Schmidt over the spatial basis vectors.
frames::Frame4 complete_frame(const Vec4& c) {
    frames::Frame4 f;
    f.vectors[0] = c;
    int out = 1;
    for (int i = 1; i < 4 && out < 4; ++i) {
        Vec4 v{};
        v[i] = 1.0;
        for (int j = 0; j < out; ++j) {
            const Vec4& b = f.vectors[j];
            double bb = frames::minkowski_inner(b, b);
            v -= (frames::minkowski_inner(v, b) / bb) * b;
        }
        double n2 = -frames::minkowski_inner(v, v);
        if (n2 > 1e-20) f.vectors[out++] = v * (1.0 / std::sqrt(n2));
    }
    if (out != 4) throw std::invalid_argument("flux_action_4d: cannot complete frame around c");
    return f;
}

}  // namespace

FluxAction flux_action_4d(const field::FeatureSet& fs, const GridRegion& region4, const Vec4& c) {
    if (region4.axes.size() != 4) throw std::invalid_argument("flux_action_4d: need a 4-axis region");
    region4.validate();
    GridRegion spatial3{{region4.axes[0], region4.axes[1], region4.axes[2]}};
    check_region_clear(fs, spatial3);

    frames::Frame4 base = complete_frame(c);
    double time_extent = region4.axes[3].hi - region4.axes[3].lo;
    double cell3 = spatial3.cell_volume();
    double weight = cell3 * time_extent;

    FluxAction out;
    for_each_cell_center_3d(spatial3, [&](const Vec3& x) {
        Vec4 g = fs.empty() ? c : field::unit_field(fs, x, c);
        out.flux_integral += frames::flux_density(g, c) * weight;
        frames::Frame4 fr = base;
        fr.vectors[0] = g;
        out.volume_integral += std::sqrt(std::fabs(frames::gram(fr).determinant())) * weight;
    });

    double scale = std::max(std::fabs(out.flux_integral), std::fabs(out.volume_integral));
    if (std::fabs(out.flux_integral - out.volume_integral) > 1e-10 * std::max(1.0, scale))
        throw std::runtime_error("flux_action_4d: flux/volume integrals disagree beyond tolerance");
    return out;
}

}  // namespace windsim::dynamics
