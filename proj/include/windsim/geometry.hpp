#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "windsim/vec.hpp"

namespace windsim::geometry {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Reduce v into [0, 2*pi); ties at the period boundary resolve to 0.
double mod_two_pi(double v);
// Reduce v into [0, pi).
double mod_pi(double v);

// Polar coordinates on the Euclidean plane: angle in [0, 2*pi), radius >= 0.
struct PolarPoint2 {
    double varphi = 0.0;
    double rho = 0.0;

    PolarPoint2() = default;
    PolarPoint2(double varphi_, double rho_);
};

// Spherical coordinates with latitude measured modulo 2*pi and longitudes
// modulo pi.
struct SphericalPoint {
    double phi = 0.0;                 // latitude-like, in [0, 2*pi)
    std::array<double, 2> thetas{};   // longitude-like, each in [0, pi)
    int n_thetas = 1;
};

// Coordinates on the pseudo-Euclidean plane, signature (+,-).
struct PseudoPlanePoint {
    double x0 = 0.0;  // timelike
    double x1 = 0.0;  // spacelike
};

struct CylinderPoint {
    double phi = 0.0;  // in [0, 2*pi)
    double r = 0.0;    // signed length along the element
};

// Preimage information discarded by the modular reduction: integer winding
// count plus the sign of the wound combination. Together with CylinderPoint
// this makes the winding map exactly invertible.
struct Branch {
    std::int64_t turns = 0;
    int sign = +1;  // sign of (x0 + x1); +1 for zero
};

struct MinkowskiEvent {
    std::array<double, 4> x{};  // signature (+,-,-,-)
};

struct R6Point {
    std::array<double, 6> x{};  // signature (+,+,+,-,-,-)
};

// The four sectors cut out by the isotropic lines x0 = +-x1.
enum class Sector { timelike_pos, timelike_neg, spacelike_pos, spacelike_neg };

struct HyperbolicCoords {
    double rho = 0.0;     // |(x0+x1)(x0-x1)|^(1/2)
    double varphi = 0.0;  // -ln|(x0+x1)/rho|
    Sector sector = Sector::timelike_pos;

    int sign_sum() const;   // sign of x0 + x1
    int sign_diff() const;  // sign of x0 - x1
};

struct SphericalTriple {
    double vartheta = 0.0;  // in [0, pi)
    double varphi = 0.0;    // in [0, 2*pi)
    double rho = 0.0;       // >= 0
};

struct S3Point {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double phi = 0.0;
};

struct WoundCylinder {
    CylinderPoint point;
    Branch branch;
};

// One cylinder chart per ordered (Euclidean axis k, anti-Euclidean axis p)
// pair of R^6; 3x3 of them in total.
struct R3S3Winding {
    std::array<std::array<WoundCylinder, 3>, 3> planes{};
    const WoundCylinder& at(int k, int p) const { return planes[k][p]; }
};

struct R3S1Winding {
    double phi = 0.0;            // from the (x0, x1) plane
    std::array<double, 3> r{};   // r_p = x0 - x_p, p = 1..3
    Branch branch;
};

// Argument of e^{i*pi*x} on the unit circle.
double wind_line_to_circle(double x);

// Plane -> sphere modular congruences; the sign branch flips on varphi in
// [pi, 2*pi).
SphericalPoint wind_plane_to_sphere(const PolarPoint2& p);

// R^3 (spherical triple) -> S^3; the quadrant sign rule follows the plane case.
S3Point wind_r3_to_s3(const SphericalTriple& p);

WoundCylinder wind_pseudoplane_to_cylinder(const PseudoPlanePoint& p);

// Exact inverse on the fundamental domain recorded by Branch.
PseudoPlanePoint unwind_cylinder(const CylinderPoint& c, const Branch& b);

// Length/hyperbolic-angle decomposition of an off-isotropic point.
// Throws std::domain_error on (near-)isotropic input.
HyperbolicCoords hyperbolic_decomposition(const PseudoPlanePoint& p);

// Pseudo-Euclidean length of a plane vector; 0 on the isotropic lines.
double pseudo_length(const PseudoPlanePoint& p);

R3S3Winding wind_r6_to_r3s3(const R6Point& p);

R3S1Winding wind_minkowski_to_r3s1(const MinkowskiEvent& e);

}  // namespace windsim::geometry
