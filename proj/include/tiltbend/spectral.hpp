#pragma once

#include <array>
#include <string>

#include "tiltbend/geom3.hpp"

namespace tiltbend {

using Vec9 = std::array<double, 9>;

double dot9(const Vec9& a, const Vec9& b);
double norm9_sq(const Vec9& a);
Vec9 add9(const Vec9& a, const Vec9& b);
Vec9 sub9(const Vec9& a, const Vec9& b);
Vec9 scale9(const Vec9& a, double c);

/// Row-major flattening u = (z11, z12, z13, z21, z22, z23, z31, z32, z33).
Vec9 flatten_matrix(const Mat3& z);
Mat3 unflatten_matrix(const Vec9& u);

struct Mat9 {
    std::array<double, 81> a{};

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(9 * i + j)]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(9 * i + j)]; }
};

Vec9 mat9_mul(const Mat9& m, const Vec9& u);

/// The 9x9 coefficient matrix of the graph-variable bending form at unit
/// director y: u . A u is proportional to graph_bend_form(unflatten(u), y)
/// with the fixed constant quad_form_scale(). Entries are a one-time
/// transcription; build_spectral_basis guards it with the full eigenvector
/// suite on every construction.
Mat9 graph_form_matrix(const Vec3& y);

/// Eigenstructure of graph_form_matrix(y). Eigenvalues are exactly
/// {-1, 0, 1, 5}; the zero eigenspace is spanned by the six (linearly
/// dependent, rank-5) vectors v0, the -1 and 5 spaces are lines, and the
/// +1 space is the 2-dimensional remainder.
struct SpectralBasis {
    Vec3 y;
    Mat9 A;
    Vec9 v_m1;                 // eigenvalue -1: flatten(y y^T - I), norm^2 = 2
    Vec9 v_5;                  // eigenvalue 5: norm^2 = 2
    Vec9 v_1a, v_1b;           // eigenvalue 1 (v_1b degenerates to 0 at some y)
    std::array<Vec9, 6> v0;    // eigenvalue 0: v0[0..2] = rows e_i y^T, v0[3..5] = y e_i^T
    // pseudo-inverse of the 6x6 Gram matrix of v0, used by project_pi0
    std::array<double, 36> gram_pinv{};
    int gram_rank = 0;
};

/// Builds and validates the basis: every eigen-relation residual must be
/// <= 1e-10 and the zero span must have rank 5, else VerifyError.
/// pre: |y| = 1 (to 1e-12).
SpectralBasis build_spectral_basis(const Vec3& y);

/// Same validation applied to a caller-supplied matrix; exists so tests can
/// demonstrate that a corrupted entry is caught at construction.
SpectralBasis build_spectral_basis_with_matrix(const Vec3& y, const Mat9& A);

Vec9 project_pi0(const Vec9& u, const SpectralBasis& b);
Vec9 project_pi_minus1(const Vec9& u, const SpectralBasis& b);
Vec9 project_pi_five(const Vec9& u, const SpectralBasis& b);
/// Completeness remainder u - pi_m1 - pi_0 - pi_5; used because the stored
/// +1 eigenvectors can degenerate at isolated y.
Vec9 project_pi_one(const Vec9& u, const SpectralBasis& b);

/// Residuals of the admissible-space constraints for zeta at y:
/// each row of zeta orthogonal to y, and trace zero.
struct MembershipResiduals {
    std::array<double, 3> row{};
    double trace = 0.0;
    double max_abs() const;
};
MembershipResiduals membership_residuals(const Mat3& zeta, const Vec3& y);

/// |pi0 u|^2 via the three dot products with v0[3..5]; valid only on the
/// admissible space, so membership is checked first (residual tolerance
/// 1e-10 relative to max(1, |u|)); violations throw VerifyError naming the
/// constraint.
double norm_pi0_fast(const Vec9& u, const SpectralBasis& b);

double quad_form(const Vec9& u, const SpectralBasis& b);  // u . A u

/// Convexified integrand u.Au + |pi0 u|^{3/2} + 2|pi_{-1} u|^2.
double convexified_form(const Vec9& u, const SpectralBasis& b);
/// Same value through the eigen-decomposition
/// |pi_{-1}u|^2 + |pi_1 u|^2 + 5|pi_5 u|^2 + |pi0 u|^{3/2}; independent path.
double convexified_form_eigen(const Vec9& u, const SpectralBasis& b);
/// Lower bound |u - pi0 u|^2 + |pi0 u|^{3/2} that convexified_form must
/// dominate.
double growth_lower_bound(const Vec9& u, const SpectralBasis& b);

/// Proportionality constant between quad_form and the graph bending form.
/// Measured by an independent oracle and pinned; energies never consume it
/// (they use graph_bend_form directly), which set_quad_form_scale lets a
/// test demonstrate.
double quad_form_scale();
void set_quad_form_scale(double c);

struct QuadraticConsistency {
    double ratio = 0.0;     // (u.Au) / graph_bend_form(zeta, y)
    double residual = 0.0;  // rel. residual of u.Au vs quad_form_scale()*form
};
/// pre: graph_bend_form(zeta, y) != 0.
QuadraticConsistency quadratic_consistency(const Mat3& zeta, const Vec3& y);

}  // namespace tiltbend
