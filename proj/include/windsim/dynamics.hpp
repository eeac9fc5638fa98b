#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "windsim/field.hpp"
#include "windsim/geometry.hpp"
#include "windsim/vec.hpp"

namespace windsim::dynamics {

struct capture_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Scheme { leapfrog, rk4 };

struct IntegratorConfig {
    double dt = 1e-3;
    long steps = 1000;
    Scheme scheme = Scheme::leapfrog;

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("IntegratorConfig: dt must be > 0");
        if (steps < 1) throw std::invalid_argument("IntegratorConfig: steps must be >= 1");
    }
};

struct StateEuclid {
    Vec3 xi{};
    Vec3 xidot{};
    double tau = 0.0;
};

struct TrajectorySample {
    double tau = 0.0;
    Vec3 position{};
    Vec3 velocity{};
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double dt = 0.0;
};

struct Trajectory4Sample {
    double tau = 0.0;
    Vec4 position{};
    Vec4 velocity{};
};

struct Trajectory4 {
    std::vector<Trajectory4Sample> samples;
    double dt = 0.0;
};

struct GeodesicSample {
    double s = 0.0;  // affine parameter
    double t = 0.0;  // coordinate time
    double tdot = 0.0;
    double r = 0.0;
    double rdot = 0.0;
};

struct GeodesicTrajectory {
    std::vector<GeodesicSample> samples;
    double dt = 0.0;
};

// Axis-aligned integration region: per-axis bounds and midpoint resolution.
struct GridAxis {
    double lo = 0.0;
    double hi = 1.0;
    long n = 1;
};

struct GridRegion {
    std::vector<GridAxis> axes;

    void validate() const {
        for (const auto& a : axes)
            if (!(a.hi > a.lo) || a.n < 1)
                throw std::invalid_argument("GridRegion: axes need positive extent and resolution");
    }
    double cell_volume() const {
        double v = 1.0;
        for (const auto& a : axes) v *= (a.hi - a.lo) / static_cast<double>(a.n);
        return v;
    }
};

using AccelFn = std::function<Vec3(const Vec3&)>;
// Called with (previous, new) positions after each drift; may throw to abort.
using StepGuard = std::function<void(const Vec3&, const Vec3&)>;

// Second-order integrator over an arbitrary acceleration field. Leapfrog is
// kick-drift-kick; positions satisfy the Stormer-Verlet recurrence exactly,
// so the discrete action built on the samples is stationary at this solution.
Trajectory integrate(const AccelFn& accel, const StateEuclid& s0, const IntegratorConfig& cfg,
                     const StepGuard& guard = nullptr);

// Feature-field point dynamics. The acceleration is -grad phi (attraction
// toward the features), the projected form of the unit-field dynamics below;
// no mass parameter exists anywhere in the call chain.
Trajectory integrate_newtonian(const field::FeatureSet& fs, const StateEuclid& s0,
                               const IntegratorConfig& cfg);

// Full 4-vector dynamics Xdotdot = g(X) with g from field::unit_field.
Trajectory4 integrate_minkowski(const field::FeatureSet& fs, const geometry::MinkowskiEvent& X0,
                                const Vec4& V0, const IntegratorConfig& cfg,
                                const Vec4& c = Vec4{{1.0, 0.0, 0.0, 0.0}});

// Radial geodesics of the diagonal metric e^{2*phi(r)} dt^2 - e^{-2*phi(r)} dr^2.
// dphi defaults to a central difference of phi_of_r.
GeodesicTrajectory geodesic_weakfield(const std::function<double(double)>& phi_of_r,
                                      double r0, double rdot0, const IntegratorConfig& cfg,
                                      const std::function<double(double)>& dphi_of_r = nullptr);

// Trapezoidal discretization of the line action integral of (g(X), Xdot).
double action_line(const field::FeatureSet& fs, const Trajectory4& traj,
                   const Vec4& c = Vec4{{1.0, 0.0, 0.0, 0.0}});

// Discrete Lagrangian action sum_k (|dxi/dt|^2/2 - phi(xi_k)) dt on a sampled
// trajectory; the potential is evaluated at the nodes so leapfrog solutions
// are its exact discrete stationary points.
double lagrangian_action(const field::FeatureSet& fs, const Trajectory& traj);

using Grad3Fn = std::function<Vec3(const Vec3&)>;

// Midpoint-rule field action over a static 3-region times a time extent:
// integral of [(dphi/dt)^2 - |grad phi|^2], with the time term vanishing.
double field_action(const Grad3Fn& grad, const GridRegion& region3, double time_extent);
double field_action(const field::FeatureSet& fs, const GridRegion& region3,
                    double time_extent = 1.0);

// Midpoint discretization of the 2-region action: unit field norm times
// sqrt(-det G) with G the Gram matrix of the deformed tangent pair.
double riemann_action_2d(const std::function<double(double, double)>& varphi_profile,
                         const GridRegion& region2);

struct FluxAction {
    double flux_integral = 0.0;    // integral of (g(x), c)
    double volume_integral = 0.0;  // integral of |det G(x)|^(1/2)
};

// Both sides of the 4-volume flux identity on a (3 space + 1 time)-axis
// region; throws std::runtime_error if they disagree beyond 1e-10 relative.
FluxAction flux_action_4d(const field::FeatureSet& fs, const GridRegion& region4,
                          const Vec4& c = Vec4{{1.0, 0.0, 0.0, 0.0}});

}  // namespace windsim::dynamics
