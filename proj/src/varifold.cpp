#include "tiltbend/varifold.hpp"

#include <cmath>
#include <stdexcept>

#include "tiltbend/errors.hpp"
#include "tiltbend/reduce.hpp"

namespace tiltbend {

CurvatureTensorA operator-(const CurvatureTensorA& t) {
    CurvatureTensorA r;
    for (std::size_t i = 0; i < 27; ++i) r.a[i] = -t.a[i];
    return r;
}

double max_abs_diff(const CurvatureTensorA& s, const CurvatureTensorA& t) {
    double m = 0.0;
    for (std::size_t i = 0; i < 27; ++i) m = std::max(m, std::abs(s.a[i] - t.a[i]));
    return m;
}

SecondFundamentalResult second_fundamental_A(const Mat3& L, const Vec3& nu) {
    SecondFundamentalResult out;
    out.precondition_residual =
        std::max(max_abs(L - transpose(L)), max_abs(L * nu));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                out.A(i, j, k) = L(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) *
                                     nu[static_cast<std::size_t>(k)] +
                                 L(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) *
                                     nu[static_cast<std::size_t>(j)];
    return out;
}

MeanGauss hk_from_A(const CurvatureTensorA& A, const Vec3& nu) {
    MeanGauss out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.H += A(i, j, i) * nu[static_cast<std::size_t>(j)];
    for (int k = 0; k < 3; ++k) {
        Mat3 slice;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                slice(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = A(i, j, k);
        out.K += trace_cofactor(slice);
    }
    return out;
}

Mat3 combine_xi1(double beta_plus, const Mat3& xi1_plus, double beta_minus,
                 const Mat3& xi1_minus, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("combine_xi1: gamma must be positive");
    return (1.0 / gamma) * (beta_plus * xi1_plus + beta_minus * xi1_minus);
}

GraphVarifoldData varifold_A_from_graph(const Bivector3& xi0, const Mat3& xi1b, const Vec3& y) {
    const Mat3 x0 = antisym_matrix(xi0);
    GraphVarifoldData out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double s = 0.0;
                for (int r = 0; r < 3; ++r)
                    s += x0(static_cast<std::size_t>(i), static_cast<std::size_t>(r)) *
                         (xi1b(static_cast<std::size_t>(r), static_cast<std::size_t>(j)) *
                              y[static_cast<std::size_t>(k)] +
                          xi1b(static_cast<std::size_t>(r), static_cast<std::size_t>(k)) *
                              y[static_cast<std::size_t>(j)]);
                out.A(i, j, k) = s;
            }
    const double t = frobenius(x0, transpose(xi1b));  // sum_{i,r} xi0^{ir} xi1b^{ri}
    out.H_vec = t * y;
    return out;
}

namespace {

// Analytic shape operator (outward normal, positive sphere convention) of the
// tagged surface at a point.
struct SmoothFrame {
    Vec3 nu;
    Mat3 L;
};

SmoothFrame analytic_frame(const AnalyticTag& tag, const Vec3& p) {
    if (tag.kind == AnalyticTag::Kind::sphere) {
        const Vec3 n = normalized(p);
        return {n, (1.0 / tag.radius) * (Mat3::identity() - outer(n, n))};
    }
    if (tag.kind == AnalyticTag::Kind::torus) {
        const double d = std::sqrt(p[0] * p[0] + p[1] * p[1]);
        if (d < 1e-12) throw MeshError("analytic_frame: torus point on the axis");
        const Vec3 ring{tag.major_radius * p[0] / d, tag.major_radius * p[1] / d, 0.0};
        const Vec3 nu = normalized(p - ring);
        const Vec3 e_phi{-p[1] / d, p[0] / d, 0.0};
        const Vec3 t_tube = cross(nu, e_phi);
        const double k_tube = 1.0 / tag.minor_radius;
        const double k_phi = (d - tag.major_radius) / (tag.minor_radius * d);
        return {nu, k_tube * outer(t_tube, t_tube) + k_phi * outer(e_phi, e_phi)};
    }
    throw MeshError("analytic_frame: mesh carries no analytic surface tag");
}

}  // namespace

double graph_smooth_consistency(const TriMesh& mesh, const std::vector<FaceFrame>& frames) {
    const auto data = face_director_data_normal(mesh, frames);
    std::vector<double> per_face(frames.size(), 0.0);
    parallel_for(frames.size(), 0, [&](std::size_t f) {
        const Vec3 lt1 = data[f].shape * frames[f].t1;
        const Vec3 lt2 = data[f].shape * frames[f].t2;
        const Mat3 xi1 = outer(frames[f].t1, lt2) - outer(frames[f].t2, lt1);
        const GraphVarifoldData g =
            varifold_A_from_graph(hodge_star(frames[f].nu), xi1, data[f].theta);
        const SmoothFrame sm = analytic_frame(mesh.tag, frames[f].centroid);
        const CurvatureTensorA smooth_inward = -second_fundamental_A(sm.L, sm.nu).A;
        per_face[f] = max_abs_diff(g.A, smooth_inward);
    });
    double m = 0.0;
    for (double v : per_face) m = std::max(m, v);
    return m;
}

std::vector<FirstVariationRow> first_variation_residual(const TriMesh& mesh,
                                                        const std::vector<FaceFrame>& frames) {
    const auto data = face_director_data_normal(mesh, frames);
    const auto& catalog = test_function_catalog();

    std::vector<FirstVariationRow> rows;
    rows.reserve(catalog.size());
    for (const auto& fn : catalog) {
        std::array<Poly, 3> dx;
        std::array<Poly, 9> ds;
        for (int i = 0; i < 3; ++i) dx[static_cast<std::size_t>(i)] = fn.phi.derivative(var_x(i));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                ds[static_cast<std::size_t>(3 * i + j)] = fn.phi.derivative(var_s(i, j));

        std::array<std::vector<double>, 3> terms;
        for (auto& t : terms) t.assign(frames.size(), 0.0);
        parallel_for(frames.size(), 0, [&](std::size_t f) {
            const Vec3& nu = frames[f].nu;
            const Vec3& x = frames[f].centroid;
            const Mat3 P = Mat3::identity() - outer(nu, nu);
            // divergence-compatible (inward) sign of the curvature coefficients
            const CurvatureTensorA A = -second_fundamental_A(data[f].shape, nu).A;
            const double phi = fn.phi.eval(x, nu, P);
            Vec3 grad_x;
            for (int j = 0; j < 3; ++j)
                grad_x[static_cast<std::size_t>(j)] = dx[static_cast<std::size_t>(j)].eval(x, nu, P);
            Mat3 grad_s;
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    grad_s(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) =
                        ds[static_cast<std::size_t>(3 * j + k)].eval(x, nu, P);
            for (int i = 0; i < 3; ++i) {
                double v = dot(P.row(static_cast<std::size_t>(i)), grad_x);
                double curv = 0.0;
                for (int j = 0; j < 3; ++j) {
                    for (int k = 0; k < 3; ++k)
                        v += A(i, j, k) * grad_s(static_cast<std::size_t>(j),
                                                 static_cast<std::size_t>(k));
                    curv += A(j, i, j);
                }
                v += curv * phi;
                terms[static_cast<std::size_t>(i)][f] = v * frames[f].area;
            }
        });
        FirstVariationRow row;
        row.fn_id = fn.id;
        for (std::size_t i = 0; i < 3; ++i) {
            row.residual[i] = pairwise_sum(std::span<const double>(terms[i].data(), terms[i].size()));
        }
        row.max_component = max_abs(row.residual);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace tiltbend
