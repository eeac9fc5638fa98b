#include "windsim/frames.hpp"

#include <cmath>
#include <stdexcept>

namespace windsim::frames {

double minkowski_inner(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

Frame4 Frame4::standard_basis() {
    Frame4 f;
    for (int i = 0; i < 4; ++i) f.vectors[i][i] = 1.0;
    return f;
}

double lu_determinant(const double* a, int n) {
    double m[4][4];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = a[i * n + j];

    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::fabs(m[row][col]) > std::fabs(m[pivot][col])) pivot = row;
        if (m[pivot][col] == 0.0) return 0.0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(m[pivot][j], m[col][j]);
            det = -det;
        }
        det *= m[col][col];
        for (int row = col + 1; row < n; ++row) {
            double factor = m[row][col] / m[col][col];
            for (int j = col; j < n; ++j) m[row][j] -= factor * m[col][j];
        }
    }
    return det;
}

double GramMatrix::determinant() const {
    double flat[16];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) flat[i * 4 + j] = entries[i][j];
    return lu_determinant(flat, 4);
}

GramMatrix gram(const Frame4& f) {
    GramMatrix g;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            double v = minkowski_inner(f.vectors[i], f.vectors[j]);
            g.entries[i][j] = v;
            g.entries[j][i] = v;
        }
    return g;
}

double frame_determinant(const Frame4& f) {
    double flat[16];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) flat[i * 4 + j] = f.vectors[i][j];
    return lu_determinant(flat, 4);
}

bool is_orthonormal(const Frame4& f, double tol) {
    GramMatrix g = gram(f);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double want = (i != j) ? 0.0 : (i == 0 ? 1.0 : -1.0);
            if (std::fabs(g.entries[i][j] - want) > tol) return false;
        }
    return true;
}

Frame4 hyperbolic_rotate(const Frame4& f, HyperbolicAngle varphi, std::pair<int, int> plane) {
    if (plane.first != 0 || plane.second < 1 || plane.second > 3)
        throw std::invalid_argument("hyperbolic_rotate: plane must pair the timelike axis with a spatial axis");
    if (!is_orthonormal(f, 1e-9))
        throw std::invalid_argument("hyperbolic_rotate: input frame is not orthonormal");
    double ch = std::cosh(varphi.varphi);
    double sh = std::sinh(varphi.varphi);
    int t = plane.first, s = plane.second;
    Frame4 out = f;
    for (int k = 0; k < 4; ++k) {
        double vt = f.vectors[k][t];
        double vs = f.vectors[k][s];
        out.vectors[k][t] = ch * vt + sh * vs;
        out.vectors[k][s] = sh * vt + ch * vs;
    }
    return out;
}

Frame4 deform_frame(const Frame4& f, HyperbolicAngle varphi) {
    double up = std::exp(varphi.varphi);
    double dn = std::exp(-varphi.varphi);
    if (!std::isfinite(up) || !std::isfinite(dn))
        throw std::range_error("deform_frame: e^{varphi} outside double range");
    Frame4 out = f;
    out.vectors[0] *= up;
    out.vectors[1] *= dn;
    return out;
}

double flux_density(const Vec4& g, const Vec4& c) {
    if (minkowski_inner(g, g) <= 0.0)
        throw std::invalid_argument("flux_density: g must be timelike");
    return minkowski_inner(g, c);
}

AdaptedMetric induced_metric(HyperbolicAngle varphi) {
    double gtt = std::exp(2.0 * varphi.varphi);
    if (!std::isfinite(gtt) || gtt == 0.0)
        throw std::range_error("induced_metric: e^{2*varphi} outside double range");
    AdaptedMetric m;
    m.g_tt = gtt;
    m.g_rr = -1.0 / gtt;  // makes g_tt * |g_rr| = 1 identically
    m.varphi = varphi.varphi;
    return m;
}

}  // namespace windsim::frames
