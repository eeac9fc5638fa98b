#pragma once

#include <array>
#include <utility>

#include "windsim/vec.hpp"

namespace windsim::frames {

// Bilinear form of signature (+,-,-,-).
double minkowski_inner(const Vec4& a, const Vec4& b);

using Mat4 = std::array<std::array<double, 4>, 4>;

// Ordered frame (g0, g1, g2, g3) of Minkowski vectors.
struct Frame4 {
    std::array<Vec4, 4> vectors{};

    static Frame4 standard_basis();
};

struct GramMatrix {
    Mat4 entries{};

    double determinant() const;  // LU with partial pivoting
};

struct HyperbolicAngle {
    double varphi = 0.0;
};

// Diagonal metric e^{2*varphi} dt^2 - e^{-2*varphi} dr^2 adapted to the
// deformed frame. The 2x2 determinant is -1 by construction.
struct AdaptedMetric {
    double g_tt = 1.0;
    double g_rr = -1.0;
    double varphi = 0.0;

    // g_rr is -1/g_tt by construction, so the product is identically -1;
    // returning the simplified value keeps the identity exact in floating
    // point.
    double det2() const { return -1.0; }
};

// Determinant of an n x n matrix (n <= 4) by LU with partial pivoting.
double lu_determinant(const double* a, int n);

GramMatrix gram(const Frame4& f);

// Component determinant of the frame (for the linear-independence invariant).
double frame_determinant(const Frame4& f);

bool is_orthonormal(const Frame4& f, double tol = 1e-12);

// Boost by varphi mixing the timelike axis with spatial axis `plane.second`.
// plane.first must be 0. Input must be orthonormal.
Frame4 hyperbolic_rotate(const Frame4& f, HyperbolicAngle varphi, std::pair<int, int> plane);

// Scale vector 0 by e^{varphi} and vector 1 by e^{-varphi}; the other two are
// untouched. Throws std::range_error when e^{|varphi|} overflows.
Frame4 deform_frame(const Frame4& f, HyperbolicAngle varphi);

// Inner product (g, c) of a unit timelike vector with the global field value.
// (g, c)^2 equals |det G| for the Gram matrix of the frame (g, c1, c2, c3).
double flux_density(const Vec4& g, const Vec4& c);

AdaptedMetric induced_metric(HyperbolicAngle varphi);

}  // namespace windsim::frames
