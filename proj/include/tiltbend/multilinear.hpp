#pragma once

#include <array>
#include <string>
#include <vector>

#include "tiltbend/geom3.hpp"

namespace tiltbend {

/// Alternating 2-tensor on R^3, stored in the fixed basis order
/// (e1^e2, e1^e3, e2^e3).
struct Bivector3 {
    double c12 = 0.0, c13 = 0.0, c23 = 0.0;
};

constexpr Bivector3 operator+(const Bivector3& a, const Bivector3& b) {
    return {a.c12 + b.c12, a.c13 + b.c13, a.c23 + b.c23};
}
constexpr Bivector3 operator-(const Bivector3& a, const Bivector3& b) {
    return {a.c12 - b.c12, a.c13 - b.c13, a.c23 - b.c23};
}
constexpr Bivector3 operator*(double s, const Bivector3& a) {
    return {s * a.c12, s * a.c13, s * a.c23};
}
constexpr double dot(const Bivector3& a, const Bivector3& b) {
    return a.c12 * b.c12 + a.c13 * b.c13 + a.c23 * b.c23;
}
constexpr double norm2(const Bivector3& a) { return dot(a, a); }
inline double norm(const Bivector3& a) { return std::sqrt(norm2(a)); }

/// a ^ b with components (a^b)_{ij} = a_i b_j - a_j b_i, i < j.
constexpr Bivector3 wedge3(const Vec3& a, const Vec3& b) {
    return {a[0] * b[1] - a[1] * b[0], a[0] * b[2] - a[2] * b[0], a[1] * b[2] - a[2] * b[1]};
}

/// Hodge star: *(a,b,c) = c e1^e2 - b e1^e3 + a e2^e3.
constexpr Bivector3 hodge_star(const Vec3& v) { return {v[2], -v[1], v[0]}; }
constexpr Vec3 hodge_unstar(const Bivector3& w) { return {w.c23, -w.c13, w.c12}; }

/// Antisymmetric matrix representation: row i, column j holds the (i,j)
/// component of the bivector extended by w_{ji} = -w_{ij}.
constexpr Mat3 antisym_matrix(const Bivector3& w) {
    Mat3 r;
    r(0, 1) = w.c12;
    r(1, 0) = -w.c12;
    r(0, 2) = w.c13;
    r(2, 0) = -w.c13;
    r(1, 2) = w.c23;
    r(2, 1) = -w.c23;
    return r;
}

/// Axis matrix B(y)_{ij} = sum_k eps_{ijk} y_k (equals antisym_matrix(hodge_star(y))).
constexpr Mat3 axis_matrix(const Vec3& y) { return antisym_matrix(hodge_star(y)); }

/// Cofactor matrix: cof(A)_{ij} = (-1)^{i+j} * minor_{ij}(A), so that
/// A * cof(A)^T = det(A) * I.
constexpr Mat3 cofactor_matrix(const Mat3& a) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t i1 = (i + 1) % 3, i2 = (i + 2) % 3;
        for (std::size_t j = 0; j < 3; ++j) {
            const std::size_t j1 = (j + 1) % 3, j2 = (j + 2) % 3;
            // cyclic index pairs make the sign (+1)^{i+j} implicit
            r(i, j) = a(i1, j1) * a(i2, j2) - a(i1, j2) * a(i2, j1);
        }
    }
    return r;
}

constexpr double trace_cofactor(const Mat3& a) {
    return a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1) + a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) +
           a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
}

/// Determinant by cofactor expansion along the first row.
constexpr double det_cofactor_expansion(const Mat3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

/// Determinant from traces of powers: (tr^3 - 3 tr tr(A^2) + 2 tr(A^3)) / 6.
constexpr double det_trace_formula(const Mat3& a) {
    const double t1 = trace(a);
    const double t2 = trace(a * a);
    const double t3 = trace(a * a * a);
    return (t1 * t1 * t1 - 3.0 * t1 * t2 + 2.0 * t3) / 6.0;
}

/// Curvature quadratic: (1/4) tr(A)^2 - (1/6) tr cof(A).
constexpr double bending_form(const Mat3& a) {
    const double t = trace(a);
    return 0.25 * t * t - trace_cofactor(a) / 6.0;
}

/// Same quadratic expressed through the two nonzero eigenvalues of a symmetric
/// matrix whose third eigenvalue vanishes:
/// (1/6)(l1+l2)^2 + (1/12)(l1^2+l2^2).
constexpr double bending_form_eigen(double l1, double l2) {
    const double s = l1 + l2;
    return s * s / 6.0 + (l1 * l1 + l2 * l2) / 12.0;
}

/// Contraction sum_{i,k,l} eps_{ikl} y_i M^{kl}; equals the Frobenius pairing
/// of M with the axis matrix B(y).
constexpr double axial_pairing(const Vec3& y, const Mat3& m) {
    return y[0] * (m(1, 2) - m(2, 1)) + y[1] * (m(2, 0) - m(0, 2)) + y[2] * (m(0, 1) - m(1, 0));
}

/// Bending form in graph variables: for the mixed stratum zeta at unit
/// director y, (1/4)(axial_pairing)^2 - (1/6) y.cof(zeta)y. Reproduces
/// bending_form of the shape operator when zeta is the mixed stratum of a
/// graph tangent 2-vector, scaled by (theta.nu)^2.
constexpr double graph_bend_form(const Mat3& zeta, const Vec3& y) {
    const double p = axial_pairing(y, zeta);
    return 0.25 * p * p - dot(y, cofactor_matrix(zeta) * y) / 6.0;
}

/// Vector in R^3 x R^3 split into position and fiber blocks.
struct Vec6 {
    Vec3 x;
    Vec3 y;
};

/// Alternating 2-tensor on R^6 stratified by block degree:
///   part0 - both slots from the position block (x-x),
///   part1 - one slot each (x-y); entry (i,j) multiplies e_i ^ f_j,
///   part2 - both slots from the fiber block (y-y).
struct TwoVector6 {
    Bivector3 part0;
    Mat3 part1;
    Bivector3 part2;
};

constexpr TwoVector6 operator+(const TwoVector6& a, const TwoVector6& b) {
    return {a.part0 + b.part0, a.part1 + b.part1, a.part2 + b.part2};
}
constexpr TwoVector6 operator*(double s, const TwoVector6& a) {
    return {s * a.part0, s * a.part1, s * a.part2};
}

constexpr double norm2(const TwoVector6& w) {
    return norm2(w.part0) + frobenius(w.part1, w.part1) + norm2(w.part2);
}
inline double norm(const TwoVector6& w) { return std::sqrt(norm2(w)); }

TwoVector6 wedge6(const Vec6& a, const Vec6& b);

/// Raw coordinates enumerate the basis 2-vectors g_i ^ g_j, i < j,
/// lexicographically over the concatenated basis (e1,e2,e3,f1,f2,f3).
using Raw15 = std::array<double, 15>;

TwoVector6 stratify(const Raw15& raw);
Raw15 flatten(const TwoVector6& w);

/// Named residuals for the determinant/cofactor identity family. All values
/// use the rel_residual convention.
struct MatrixIdentityResiduals {
    double axis_product;       // y.cof(A)y  vs  tr cof(B(y) A)
    double axis_split;         // y.cof(A)y  vs  sum_k tr cof(B(y)(y_k A + A e_k y^T))
    double projected_trace;    // on the two-sided projection of A: y.cof y vs tr cof
    double projected_split;    // on the projection: vs sum_k tr cof(-(y_k A + A e_k y^T))
    double rank_one_update;    // det(M + y y^T) = det M + y.cof(M) y
    double trace_determinant;  // cofactor-expansion det vs trace-powers det
};

/// pre: |y| = 1 (checked to 1e-12; throws std::invalid_argument otherwise).
/// The two projected identities are evaluated on (I-yy^T) A (I-yy^T).
MatrixIdentityResiduals matrix_identity_residuals(const Mat3& a, const Vec3& y);

}  // namespace tiltbend
