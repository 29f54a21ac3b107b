#pragma once

// Small fixed-size vector and matrix helpers for ambient space.
//
// Spheres of dimension 1 and 2 are embedded in R^2 and R^3.  Everything here
// uses a 3-component representation; on the circle the z component is zero.

#include <array>
#include <cmath>
#include <cstddef>

namespace spherecalc {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double& operator[](std::size_t i) { return (&x)[i]; }
    double operator[](std::size_t i) const { return (&x)[i]; }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline Vec3 operator*(Vec3 v, double s) { return s * v; }
inline Vec3 operator/(Vec3 v, double s) { return {v.x / s, v.y / s, v.z / s}; }
inline Vec3& operator+=(Vec3& a, Vec3 b) { a = a + b; return a; }
inline Vec3& operator-=(Vec3& a, Vec3 b) { a = a - b; return a; }

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }
inline double norm_squared(Vec3 v) { return dot(v, v); }

// Row-major 3x3 matrix; used for ambient second moments and rotations.
struct Mat3 {
    std::array<double, 9> m{};

    double& operator()(std::size_t r, std::size_t c) { return m[3 * r + c]; }
    double operator()(std::size_t r, std::size_t c) const { return m[3 * r + c]; }

    static Mat3 identity() {
        Mat3 out;
        out(0, 0) = out(1, 1) = out(2, 2) = 1.0;
        return out;
    }
};

inline Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 out;
    for (std::size_t i = 0; i < 9; ++i) out.m[i] = a.m[i] + b.m[i];
    return out;
}

inline Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 out;
    for (std::size_t i = 0; i < 9; ++i) out.m[i] = a.m[i] - b.m[i];
    return out;
}

inline Mat3 operator*(double s, const Mat3& a) {
    Mat3 out;
    for (std::size_t i = 0; i < 9; ++i) out.m[i] = s * a.m[i];
    return out;
}

inline Vec3 operator*(const Mat3& a, Vec3 v) {
    return {a(0, 0) * v.x + a(0, 1) * v.y + a(0, 2) * v.z,
            a(1, 0) * v.x + a(1, 1) * v.y + a(1, 2) * v.z,
            a(2, 0) * v.x + a(2, 1) * v.y + a(2, 2) * v.z};
}

inline Mat3 outer(Vec3 a, Vec3 b) {
    Mat3 out;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) out(r, c) = a[r] * b[c];
    return out;
}

inline Vec3 transpose_times(const Mat3& a, Vec3 v) {
    return {a(0, 0) * v.x + a(1, 0) * v.y + a(2, 0) * v.z,
            a(0, 1) * v.x + a(1, 1) * v.y + a(2, 1) * v.z,
            a(0, 2) * v.x + a(1, 2) * v.y + a(2, 2) * v.z};
}

inline double max_abs_entry(const Mat3& a, int ambient_dim) {
    double m = 0.0;
    for (int r = 0; r < ambient_dim; ++r)
        for (int c = 0; c < ambient_dim; ++c) m = std::max(m, std::abs(a(r, c)));
    return m;
}

// Symmetric 2x2 matrix [[tt, tp], [tp, pp]] in an orthonormal tangent frame.
// On the circle only tt is meaningful; tp and pp stay zero.
struct SymMat2 {
    double tt = 0.0;
    double tp = 0.0;
    double pp = 0.0;

    double trace_1d() const { return tt; }
    double trace_2d() const { return tt + pp; }
    double det_2d() const { return tt * pp - tp * tp; }

    double min_eigenvalue_2d() const {
        const double half_gap = 0.5 * std::sqrt((tt - pp) * (tt - pp) + 4.0 * tp * tp);
        return 0.5 * (tt + pp) - half_gap;
    }
};

}  // namespace spherecalc
