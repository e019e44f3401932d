#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace tiltbend {

struct Vec3 {
    std::array<double, 3> c{0.0, 0.0, 0.0};

    constexpr Vec3() = default;
    constexpr Vec3(double x, double y, double z) : c{x, y, z} {}

    constexpr double operator[](std::size_t i) const { return c[i]; }
    constexpr double& operator[](std::size_t i) { return c[i]; }
};

constexpr Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
constexpr Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
constexpr Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
constexpr Vec3 operator*(const Vec3& a, double s) { return s * a; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a[0] / s, a[1] / s, a[2] / s}; }
constexpr Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }

constexpr double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
constexpr double norm2(const Vec3& a) { return dot(a, a); }
inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

/// Row-major 3x3 matrix. Rows are vector components: (M v)_i = sum_j M(i,j) v_j.
struct Mat3 {
    std::array<double, 9> m{};

    constexpr double operator()(std::size_t i, std::size_t j) const { return m[3 * i + j]; }
    constexpr double& operator()(std::size_t i, std::size_t j) { return m[3 * i + j]; }

    static constexpr Mat3 identity() {
        Mat3 r;
        r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
        return r;
    }
    static constexpr Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
        Mat3 r;
        for (std::size_t j = 0; j < 3; ++j) {
            r(0, j) = r0[j];
            r(1, j) = r1[j];
            r(2, j) = r2[j];
        }
        return r;
    }
    static constexpr Mat3 diag(double a, double b, double c) {
        Mat3 r;
        r(0, 0) = a;
        r(1, 1) = b;
        r(2, 2) = c;
        return r;
    }

    constexpr Vec3 row(std::size_t i) const { return {(*this)(i, 0), (*this)(i, 1), (*this)(i, 2)}; }
    constexpr Vec3 col(std::size_t j) const { return {(*this)(0, j), (*this)(1, j), (*this)(2, j)}; }
};

constexpr Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
}
constexpr Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = a.m[i] - b.m[i];
    return r;
}
constexpr Mat3 operator*(double s, const Mat3& a) {
    Mat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = s * a.m[i];
    return r;
}
constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}
constexpr Vec3 operator*(const Mat3& a, const Vec3& v) {
    return {dot(a.row(0), v), dot(a.row(1), v), dot(a.row(2), v)};
}

constexpr Mat3 transpose(const Mat3& a) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(j, i);
    return r;
}
constexpr double trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

/// Outer product a b^T.
constexpr Mat3 outer(const Vec3& a, const Vec3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = a[i] * b[j];
    return r;
}

constexpr double frobenius(const Mat3& a, const Mat3& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < 9; ++i) s += a.m[i] * b.m[i];
    return s;
}
inline double frobenius_norm(const Mat3& a) { return std::sqrt(frobenius(a, a)); }

inline double max_abs(const Mat3& a) {
    double r = 0.0;
    for (double v : a.m) r = std::max(r, std::abs(v));
    return r;
}
inline double max_abs(const Vec3& a) {
    return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

/// Relative residual convention used by every identity check in this project:
/// |a - b| / max(1, |a|, |b|).
inline double rel_residual(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// A unit vector orthogonal to u (|u| = 1), chosen deterministically from the
/// axis with the smallest |component| so the result is frame independent.
inline Vec3 stable_orthogonal(const Vec3& u) {
    std::size_t k = 0;
    if (std::abs(u[1]) < std::abs(u[k])) k = 1;
    if (std::abs(u[2]) < std::abs(u[k])) k = 2;
    Vec3 e;
    e[k] = 1.0;
    return normalized(cross(u, e));
}

}  // namespace tiltbend
