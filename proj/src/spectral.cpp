#include "tiltbend/spectral.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "tiltbend/errors.hpp"
#include "tiltbend/multilinear.hpp"

namespace tiltbend {

double dot9(const Vec9& a, const Vec9& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < 9; ++i) s += a[i] * b[i];
    return s;
}

double norm9_sq(const Vec9& a) { return dot9(a, a); }

Vec9 add9(const Vec9& a, const Vec9& b) {
    Vec9 r;
    for (std::size_t i = 0; i < 9; ++i) r[i] = a[i] + b[i];
    return r;
}

Vec9 sub9(const Vec9& a, const Vec9& b) {
    Vec9 r;
    for (std::size_t i = 0; i < 9; ++i) r[i] = a[i] - b[i];
    return r;
}

Vec9 scale9(const Vec9& a, double c) {
    Vec9 r;
    for (std::size_t i = 0; i < 9; ++i) r[i] = c * a[i];
    return r;
}

Vec9 flatten_matrix(const Mat3& z) {
    Vec9 u;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) u[3 * i + j] = z(i, j);
    return u;
}

Mat3 unflatten_matrix(const Vec9& u) {
    Mat3 z;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) z(i, j) = u[3 * i + j];
    return z;
}

Vec9 mat9_mul(const Mat9& m, const Vec9& u) {
    Vec9 r{};
    for (int i = 0; i < 9; ++i) {
        double s = 0.0;
        for (int j = 0; j < 9; ++j) s += m(i, j) * u[static_cast<std::size_t>(j)];
        r[static_cast<std::size_t>(i)] = s;
    }
    return r;
}

Mat9 graph_form_matrix(const Vec3& y) {
    const double y1 = y[0], y2 = y[1], y3 = y[2];
    const double y11 = y1 * y1, y22 = y2 * y2, y33 = y3 * y3;
    const double y12 = y1 * y2, y13 = y1 * y3, y23 = y2 * y3;
    // Fixed coefficient table; guarded by the eigenvector suite in
    // build_spectral_basis.
    const std::array<double, 81> rows = {
        // clang-format off
        0.0,        0.0,        0.0,        0.0,       -y33,        y23,        0.0,        y23,       -y22,
        0.0,        3.0 * y33, -3.0 * y23, -2.0 * y33,  0.0,        2.0 * y13,  2.0 * y23, -3.0 * y13,  y12,
        0.0,       -3.0 * y23,  3.0 * y22,  2.0 * y23,  y13,       -3.0 * y12, -2.0 * y22,  2.0 * y12,  0.0,
        0.0,       -2.0 * y33,  2.0 * y23,  3.0 * y33,  0.0,       -3.0 * y13, -3.0 * y23,  2.0 * y13,  y12,
       -y33,        0.0,        y13,        0.0,        0.0,        0.0,        y13,        0.0,       -y11,
        y23,        2.0 * y13, -3.0 * y12, -3.0 * y13,  0.0,        3.0 * y11,  2.0 * y12, -2.0 * y11,  0.0,
        0.0,        2.0 * y23, -2.0 * y22, -3.0 * y23,  y13,        2.0 * y12,  3.0 * y22, -3.0 * y12,  0.0,
        y23,       -3.0 * y13,  2.0 * y12,  2.0 * y13,  0.0,       -2.0 * y11, -3.0 * y12,  3.0 * y11,  0.0,
       -y22,        y12,        0.0,        y12,       -y11,        0.0,        0.0,        0.0,        0.0,
        // clang-format on
    };
    Mat9 m;
    m.a = rows;
    return m;
}

namespace {

// Cyclic Jacobi eigendecomposition of a symmetric 6x6 matrix; fixed sweep
// order keeps the result independent of input history.
void jacobi_sym6(std::array<double, 36>& a, std::array<double, 36>& v) {
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) v[static_cast<std::size_t>(6 * i + j)] = (i == j) ? 1.0 : 0.0;
    auto at = [&a](int i, int j) -> double& { return a[static_cast<std::size_t>(6 * i + j)]; };
    auto vt = [&v](int i, int j) -> double& { return v[static_cast<std::size_t>(6 * i + j)]; };
    double scale = 0.0;
    for (double x : a) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 6; ++p)
            for (int q = p + 1; q < 6; ++q) off = std::max(off, std::abs(at(p, q)));
        if (off <= 1e-15 * scale) break;
        for (int p = 0; p < 6; ++p) {
            for (int q = p + 1; q < 6; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) <= 1e-18 * scale) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 6; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < 6; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < 6; ++k) {
                    const double vkp = vt(k, p), vkq = vt(k, q);
                    vt(k, p) = c * vkp - s * vkq;
                    vt(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
}

double eigen_residual(const Mat9& a, const Vec9& v, double lambda) {
    const Vec9 av = mat9_mul(a, v);
    double r = 0.0;
    for (std::size_t i = 0; i < 9; ++i) r = std::max(r, std::abs(av[i] - lambda * v[i]));
    return r;
}

constexpr double kEigenGuard = 1e-10;
constexpr double kGramSvThreshold = 1e-8;  // relative singular-value cutoff

double g_quad_form_scale = 12.0;

}  // namespace

SpectralBasis build_spectral_basis_with_matrix(const Vec3& y, const Mat9& A) {
    if (std::abs(norm(y) - 1.0) > 1e-12)
        throw std::invalid_argument("build_spectral_basis: director must be unit length");
    const double y1 = y[0], y2 = y[1], y3 = y[2];

    SpectralBasis b;
    b.y = y;
    b.A = A;
    b.v_m1 = flatten_matrix(outer(y, y) - Mat3::identity());
    b.v_5 = {0.0, -y3, y2, y3, 0.0, -y1, -y2, y1, 0.0};
    b.v_1a = {2.0 * y1 * y2 * y3,       y2 * y2 * y3 - y3,       y2 * y3 * y3 - y1 * y1 * y2,
              y2 * y2 * y3 - y3,        0.0,                     y1 - y1 * y2 * y2,
              y2 * y3 * y3 - y1 * y1 * y2, y1 - y1 * y2 * y2,    -2.0 * y1 * y2 * y3};
    b.v_1b = {y1 * (y2 * y2 - y3 * y3), y2 * y2 * y2 - y2,       y2 * y2 * y3 + y1 * y1 * y3,
              y2 * y2 * y2 - y2,        y1 - y1 * y2 * y2,       0.0,
              y2 * y2 * y3 + y1 * y1 * y3, 0.0,                  -y1 * y1 * y1 - y1 * y2 * y2};
    b.v0[0] = {y1, y2, y3, 0, 0, 0, 0, 0, 0};
    b.v0[1] = {0, 0, 0, y1, y2, y3, 0, 0, 0};
    b.v0[2] = {0, 0, 0, 0, 0, 0, y1, y2, y3};
    b.v0[3] = {y1, 0, 0, y2, 0, 0, y3, 0, 0};
    b.v0[4] = {0, y1, 0, 0, y2, 0, 0, y3, 0};
    b.v0[5] = {0, 0, y1, 0, 0, y2, 0, 0, y3};

    // transcription guard: the full eigenvector suite must hold
    struct Check {
        const Vec9* v;
        double lambda;
        const char* name;
    };
    const Check checks[] = {
        {&b.v_m1, -1.0, "v(-1)"}, {&b.v_5, 5.0, "v(5)"},    {&b.v_1a, 1.0, "v(1)a"},
        {&b.v_1b, 1.0, "v(1)b"},  {&b.v0[0], 0.0, "v(0)1"}, {&b.v0[1], 0.0, "v(0)2"},
        {&b.v0[2], 0.0, "v(0)3"}, {&b.v0[3], 0.0, "v(0)4"}, {&b.v0[4], 0.0, "v(0)5"},
        {&b.v0[5], 0.0, "v(0)6"},
    };
    for (const auto& c : checks) {
        const double r = eigen_residual(b.A, *c.v, c.lambda);
        if (!(r <= kEigenGuard))
            throw VerifyError("spectral basis eigen-relation failed for " + std::string(c.name) +
                              ": residual " + std::to_string(r));
    }

    // Gram pseudo-inverse over the six zero-mode vectors (rank must be 5)
    std::array<double, 36> gram{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            gram[static_cast<std::size_t>(6 * i + j)] =
                dot9(b.v0[static_cast<std::size_t>(i)], b.v0[static_cast<std::size_t>(j)]);
    std::array<double, 36> evec{};
    jacobi_sym6(gram, evec);
    double lam_max = 0.0;
    for (int i = 0; i < 6; ++i) lam_max = std::max(lam_max, gram[static_cast<std::size_t>(7 * i)]);
    b.gram_rank = 0;
    b.gram_pinv.fill(0.0);
    for (int k = 0; k < 6; ++k) {
        const double lam = gram[static_cast<std::size_t>(7 * k)];
        if (lam <= kGramSvThreshold * lam_max) continue;
        ++b.gram_rank;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                b.gram_pinv[static_cast<std::size_t>(6 * i + j)] +=
                    evec[static_cast<std::size_t>(6 * i + k)] *
                    evec[static_cast<std::size_t>(6 * j + k)] / lam;
    }
    if (b.gram_rank != 5)
        throw VerifyError("spectral basis zero span has rank " + std::to_string(b.gram_rank) +
                          ", expected 5");
    return b;
}

SpectralBasis build_spectral_basis(const Vec3& y) {
    return build_spectral_basis_with_matrix(y, graph_form_matrix(y));
}

Vec9 project_pi0(const Vec9& u, const SpectralBasis& b) {
    std::array<double, 6> c{};
    for (std::size_t i = 0; i < 6; ++i) c[i] = dot9(b.v0[i], u);
    std::array<double, 6> alpha{};
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) alpha[i] += b.gram_pinv[6 * i + j] * c[j];
    Vec9 out{};
    for (std::size_t i = 0; i < 6; ++i) out = add9(out, scale9(b.v0[i], alpha[i]));
    return out;
}

Vec9 project_pi_minus1(const Vec9& u, const SpectralBasis& b) {
    // |v(-1)|^2 = 2 for unit y
    return scale9(b.v_m1, dot9(b.v_m1, u) / norm9_sq(b.v_m1));
}

Vec9 project_pi_five(const Vec9& u, const SpectralBasis& b) {
    return scale9(b.v_5, dot9(b.v_5, u) / norm9_sq(b.v_5));
}

Vec9 project_pi_one(const Vec9& u, const SpectralBasis& b) {
    return sub9(sub9(sub9(u, project_pi_minus1(u, b)), project_pi0(u, b)),
                project_pi_five(u, b));
}

double MembershipResiduals::max_abs() const {
    return std::max({std::abs(row[0]), std::abs(row[1]), std::abs(row[2]), std::abs(trace)});
}

MembershipResiduals membership_residuals(const Mat3& zeta, const Vec3& y) {
    MembershipResiduals r;
    for (std::size_t k = 0; k < 3; ++k) r.row[k] = dot(zeta.row(k), y);
    r.trace = trace(zeta);
    return r;
}

double norm_pi0_fast(const Vec9& u, const SpectralBasis& b) {
    const MembershipResiduals m = membership_residuals(unflatten_matrix(u), b.y);
    const double tol = 1e-10 * std::max(1.0, std::sqrt(norm9_sq(u)));
    for (std::size_t k = 0; k < 3; ++k)
        if (!(std::abs(m.row[k]) <= tol))
            throw VerifyError("norm_pi0_fast: row " + std::to_string(k + 1) +
                              " not orthogonal to the director (residual " +
                              std::to_string(m.row[k]) + ")");
    if (!(std::abs(m.trace) <= tol))
        throw VerifyError("norm_pi0_fast: trace not zero (residual " + std::to_string(m.trace) +
                          ")");
    double s = 0.0;
    for (std::size_t i = 3; i < 6; ++i) {
        const double d = dot9(b.v0[i], u);
        s += d * d;
    }
    return s;
}

double quad_form(const Vec9& u, const SpectralBasis& b) { return dot9(u, mat9_mul(b.A, u)); }

double convexified_form(const Vec9& u, const SpectralBasis& b) {
    const double p0 = norm9_sq(project_pi0(u, b));
    const double pm1 = norm9_sq(project_pi_minus1(u, b));
    return quad_form(u, b) + std::pow(p0, 0.75) + 2.0 * pm1;
}

double convexified_form_eigen(const Vec9& u, const SpectralBasis& b) {
    const double p0 = norm9_sq(project_pi0(u, b));
    const double pm1 = norm9_sq(project_pi_minus1(u, b));
    const double p1 = norm9_sq(project_pi_one(u, b));
    const double p5 = norm9_sq(project_pi_five(u, b));
    return pm1 + p1 + 5.0 * p5 + std::pow(p0, 0.75);
}

double growth_lower_bound(const Vec9& u, const SpectralBasis& b) {
    const Vec9 p0 = project_pi0(u, b);
    const double p0n2 = norm9_sq(p0);
    return norm9_sq(sub9(u, p0)) + std::pow(p0n2, 0.75);
}

double quad_form_scale() { return g_quad_form_scale; }
void set_quad_form_scale(double c) { g_quad_form_scale = c; }

QuadraticConsistency quadratic_consistency(const Mat3& zeta, const Vec3& y) {
    const double f = graph_bend_form(zeta, y);
    if (f == 0.0)
        throw std::invalid_argument("quadratic_consistency: bending form vanishes at this input");
    const Vec9 u = flatten_matrix(zeta);
    const double q = dot9(u, mat9_mul(graph_form_matrix(y), u));
    QuadraticConsistency out;
    out.ratio = q / f;
    out.residual = rel_residual(q, quad_form_scale() * f);
    return out;
}

}  // namespace tiltbend
