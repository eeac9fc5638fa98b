#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace windsim {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }

    double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }
inline bool finite(const Vec3& a) {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

// Four-component vector used with the (+,-,-,-) bilinear form.
struct Vec4 {
    std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

    double& operator[](std::size_t i) { return c[i]; }
    double operator[](std::size_t i) const { return c[i]; }

    Vec4& operator+=(const Vec4& o) {
        for (std::size_t i = 0; i < 4; ++i) c[i] += o.c[i];
        return *this;
    }
    Vec4& operator-=(const Vec4& o) {
        for (std::size_t i = 0; i < 4; ++i) c[i] -= o.c[i];
        return *this;
    }
    Vec4& operator*=(double s) {
        for (double& v : c) v *= s;
        return *this;
    }

    friend Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
    friend Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
    friend Vec4 operator*(Vec4 a, double s) { return a *= s; }
    friend Vec4 operator*(double s, Vec4 a) { return a *= s; }
};

inline Vec3 spatial(const Vec4& v) { return {v[1], v[2], v[3]}; }
inline Vec4 make_vec4(double t, const Vec3& s) { return Vec4{{t, s.x, s.y, s.z}}; }
inline bool finite(const Vec4& v) {
    for (double x : v.c)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace windsim
