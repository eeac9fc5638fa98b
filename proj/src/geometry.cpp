#include "windsim/geometry.hpp"

#include <cmath>

namespace windsim::geometry {

double mod_two_pi(double v) {
    double r = std::fmod(v, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double mod_pi(double v) {
    double r = std::fmod(v, kPi);
    if (r < 0.0) r += kPi;
    if (r >= kPi) r = 0.0;
    return r;
}

PolarPoint2::PolarPoint2(double varphi_, double rho_) : varphi(varphi_), rho(rho_) {
    if (!(varphi >= 0.0 && varphi < kTwoPi)) throw std::invalid_argument("PolarPoint2: varphi out of [0, 2*pi)");
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw std::invalid_argument("PolarPoint2: rho must be finite and >= 0");
}

int HyperbolicCoords::sign_sum() const {
    return (sector == Sector::timelike_pos || sector == Sector::spacelike_pos) ? +1 : -1;
}

int HyperbolicCoords::sign_diff() const {
    return (sector == Sector::timelike_pos || sector == Sector::spacelike_neg) ? +1 : -1;
}

double wind_line_to_circle(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("wind_line_to_circle: non-finite input");
    return mod_two_pi(kPi * x);
}

SphericalPoint wind_plane_to_sphere(const PolarPoint2& p) {
    SphericalPoint s;
    s.n_thetas = 1;
    s.thetas[0] = mod_pi(p.varphi);
    double sign = (p.varphi < kPi) ? 1.0 : -1.0;  // negative branch on [pi, 2*pi)
    s.phi = mod_two_pi(sign * kPi * p.rho);
    return s;
}

S3Point wind_r3_to_s3(const SphericalTriple& p) {
    if (!(p.vartheta >= 0.0 && p.vartheta < kPi)) throw std::invalid_argument("wind_r3_to_s3: vartheta out of [0, pi)");
    if (!(p.varphi >= 0.0 && p.varphi < kTwoPi)) throw std::invalid_argument("wind_r3_to_s3: varphi out of [0, 2*pi)");
    if (!(p.rho >= 0.0)) throw std::invalid_argument("wind_r3_to_s3: rho must be >= 0");
    S3Point out;
    out.theta1 = p.vartheta;
    out.theta2 = mod_pi(p.varphi);
    double sign = (p.varphi < kPi) ? 1.0 : -1.0;  // same quadrant rule as the plane chart
    out.phi = mod_two_pi(sign * kPi * p.rho);
    return out;
}

WoundCylinder wind_pseudoplane_to_cylinder(const PseudoPlanePoint& p) {
    double u = p.x0 + p.x1;
    double au = std::fabs(u);
    // Peel off whole turns before touching pi, so the residue (and hence the
    // round trip through Branch) carries no large-argument fmod error.
    double turns_f = std::floor(au / 2.0);
    double rem = au - 2.0 * turns_f;
    if (rem >= 2.0) {
        rem -= 2.0;
        turns_f += 1.0;
    }
    WoundCylinder out;
    out.point.phi = mod_two_pi(kPi * rem);
    out.point.r = p.x0 - p.x1;
    out.branch.turns = static_cast<std::int64_t>(turns_f);
    out.branch.sign = (u < 0.0) ? -1 : +1;
    return out;
}

PseudoPlanePoint unwind_cylinder(const CylinderPoint& c, const Branch& b) {
    double au = c.phi / kPi + 2.0 * static_cast<double>(b.turns);
    double u = b.sign * au;
    return {0.5 * (u + c.r), 0.5 * (u - c.r)};
}

double pseudo_length(const PseudoPlanePoint& p) {
    return std::sqrt(std::fabs((p.x0 + p.x1) * (p.x0 - p.x1)));
}

HyperbolicCoords hyperbolics_impl(double u, double v) {
    HyperbolicCoords h;
    h.rho = std::sqrt(std::fabs(u * v));
    h.varphi = -std::log(std::fabs(u) / h.rho);
    if (u > 0.0)
        h.sector = (v > 0.0) ? Sector::timelike_pos : Sector::spacelike_pos;
    else
        h.sector = (v < 0.0) ? Sector::timelike_neg : Sector::spacelike_neg;
    return h;
}

HyperbolicCoords hyperbolic_decomposition(const PseudoPlanePoint& p) {
    double u = p.x0 + p.x1;
    double v = p.x0 - p.x1;
    double q = p.x0 * p.x0 - p.x1 * p.x1;  // = u * v
    double scale = std::max(1.0, p.x0 * p.x0 + p.x1 * p.x1);
    if (std::fabs(q) <= 1e-12 * scale)
        throw std::domain_error("hyperbolic_decomposition: point on an isotropic line (degenerate norm)");
    return hyperbolics_impl(u, v);
}

R3S3Winding wind_r6_to_r3s3(const R6Point& p) {
    R3S3Winding out;
    for (int k = 0; k < 3; ++k)
        for (int q = 0; q < 3; ++q)
            out.planes[k][q] = wind_pseudoplane_to_cylinder({p.x[k], p.x[3 + q]});
    return out;
}

R3S1Winding wind_minkowski_to_r3s1(const MinkowskiEvent& e) {
    // The distinguished timelike axis is paired with x1 for the circle
    // coordinate; each spatial axis contributes its own element coordinate.
    WoundCylinder plane01 = wind_pseudoplane_to_cylinder({e.x[0], e.x[1]});
    R3S1Winding out;
    out.phi = plane01.point.phi;
    out.branch = plane01.branch;
    for (int p = 1; p <= 3; ++p) out.r[p - 1] = e.x[0] - e.x[p];
    return out;
}

}  // namespace windsim::geometry
