#include "tiltbend/gauss_graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tiltbend/errors.hpp"
#include "tiltbend/reduce.hpp"
#include "tiltbend/spectral.hpp"

namespace tiltbend {

namespace {

double integrate(std::vector<double>& terms) {
    return pairwise_sum(std::span<const double>(terms.data(), terms.size()));
}

}  // namespace

GraphFaceData graph_xi(const FaceFrame& frame, const FaceDirectorData& data) {
    const Vec3 lt1 = data.shape * frame.t1;
    const Vec3 lt2 = data.shape * frame.t2;
    const Vec6 a{frame.t1, lt1};
    const Vec6 b{frame.t2, lt2};

    GraphFaceData g;
    g.xi = wedge6(a, b);
    g.jac = norm(g.xi);
    g.theta_dot_nu = data.cos_tilt;
    g.f_y_value = graph_bend_form(g.xi.part1, data.theta);
    g.defect = verticality_defect(frame, data);

    // closed-form cross-checks; a violation is an internal bug
    const double tol = 1e-10;
    const Bivector3 xi0_closed = hodge_star(frame.nu);
    if (norm(g.xi.part0 - xi0_closed) > tol)
        throw VerifyError("graph_xi: position stratum disagrees with *nu");
    const Mat3 xi1_closed = outer(frame.t1, lt2) - outer(frame.t2, lt1);
    if (frobenius_norm(g.xi.part1 - xi1_closed) > tol)
        throw VerifyError("graph_xi: mixed stratum disagrees with its closed form");
    const Bivector3 xi2_closed =
        data.lam1 * data.lam2 * data.cos_tilt * hodge_star(data.theta);
    if (norm(g.xi.part2 - xi2_closed) > tol)
        throw VerifyError("graph_xi: fiber stratum disagrees with its closed form");
    const double gram_det =
        (1.0 + norm2(lt1)) * (1.0 + norm2(lt2)) - dot(lt1, lt2) * dot(lt1, lt2);
    if (rel_residual(g.jac * g.jac, gram_det) > tol)
        throw VerifyError("graph_xi: |xi| disagrees with the Gram-determinant Jacobian");
    return g;
}

double verticality_defect(const FaceFrame& frame, const FaceDirectorData& data) {
    const Vec3 lt1 = data.shape * frame.t1;
    const Vec3 lt2 = data.shape * frame.t2;
    const Vec3 v = dot(data.theta, frame.t1) * lt2 - dot(data.theta, frame.t2) * lt1;
    return norm(v);
}

GraphAreaCertificate graph_area(const TriMesh& mesh, const std::vector<FaceFrame>& frames,
                                const std::vector<FaceDirectorData>& data) {
    if (frames.size() != data.size())
        throw std::invalid_argument("graph_area: frames/data size mismatch");
    GraphAreaCertificate cert;
    std::vector<double> graph_terms(frames.size());
    std::vector<double> bend_terms(frames.size());
    int violations = 0;
    for (std::size_t f = 0; f < frames.size(); ++f) {
        const GraphFaceData g = graph_xi(frames[f], data[f]);
        graph_terms[f] = g.jac * frames[f].area;
        bend_terms[f] = bending_form(data[f].shape) * frames[f].area;
        const double cap =
            1.0 + data[f].lam1 * data[f].lam1 + data[f].lam2 * data[f].lam2;
        if (g.jac > cap + 1e-12) ++violations;
    }
    cert.area_graph = integrate(graph_terms);
    cert.area_surface = total_area(mesh);
    cert.bending = integrate(bend_terms);
    cert.per_face_violations = violations;
    cert.global_bound_ok =
        cert.area_graph <= cert.area_surface + 12.0 * cert.bending + 1e-9;
    return cert;
}

double XiTraceResiduals::max() const {
    return std::max({trace_pairing, cof_pairing, row_orthogonality, trace_free});
}

XiTraceResiduals xi_trace_identities(const FaceFrame& frame, const FaceDirectorData& data) {
    const Vec3 lt1 = data.shape * frame.t1;
    const Vec3 lt2 = data.shape * frame.t2;
    const Mat3 xi1 = outer(frame.t1, lt2) - outer(frame.t2, lt1);
    const double c = data.cos_tilt;

    XiTraceResiduals r;
    r.trace_pairing = rel_residual(c * trace(data.shape), axial_pairing(data.theta, xi1));
    r.cof_pairing = rel_residual(c * c * trace_cofactor(data.shape),
                                 dot(data.theta, cofactor_matrix(xi1) * data.theta));
    r.row_orthogonality = max_abs(xi1 * data.theta);
    r.trace_free = std::abs(trace(xi1));
    return r;
}

GraphEnergyResult graph_energy(const TriMesh& mesh, const std::vector<FaceFrame>& frames,
                               const std::vector<FaceDirectorData>& data) {
    (void)mesh;
    if (frames.size() != data.size())
        throw std::invalid_argument("graph_energy: frames/data size mismatch");
    GraphEnergyResult out;
    std::vector<double> terms(frames.size(), 0.0);
    for (std::size_t f = 0; f < frames.size(); ++f) {
        const FaceDirectorData& d = data[f];
        if (d.cos_tilt < kGraphTiltExclusion) {
            ++out.excluded_low_tilt;
            continue;
        }
        const GraphFaceData g = graph_xi(frames[f], d);
        // graph-side composition, kept factor by factor
        const TwoVector6 eta = (1.0 / g.jac) * g.xi;
        const double eta0_norm = norm(eta.part0);
        if (eta0_norm <= kEta0Threshold) {
            ++out.excluded_vertical;
            continue;
        }
        const Vec3 plane_normal = hodge_unstar((1.0 / eta0_norm) * eta.part0);
        const double wedge_with_director = dot(plane_normal, d.theta);
        const Mat3 zeta = (1.0 / eta0_norm) * eta.part1;
        out.max_membership_residual = std::max(
            out.max_membership_residual, membership_residuals(zeta, d.theta).max_abs());
        const double integrand = graph_bend_form(zeta, d.theta) /
                                 (wedge_with_director * wedge_with_director) * eta0_norm;
        const double graph_measure = g.jac * frames[f].area;
        terms[f] = integrand * graph_measure;
    }
    out.value = integrate(terms);
    return out;
}

PairingResult current_pairings(const TriMesh& mesh, const std::vector<FaceFrame>& frames,
                               const std::vector<FaceDirectorData>& data, const Poly& g,
                               const Form1R6& omega) {
    (void)mesh;
    if (frames.size() != data.size())
        throw std::invalid_argument("current_pairings: frames/data size mismatch");
    const Mat3 zero{};
    PairingResult out;
    std::vector<double> star_terms(frames.size());
    std::vector<double> wedge_terms(frames.size());
    std::vector<double> tilt_terms(frames.size());
    std::vector<double> bend_terms(frames.size());
    for (std::size_t f = 0; f < frames.size(); ++f) {
        const FaceFrame& fr = frames[f];
        const FaceDirectorData& d = data[f];
        star_terms[f] = d.cos_tilt * g.eval(fr.centroid, d.theta, zero) * fr.area;

        const Vec6 w = omega.eval(fr.centroid, d.theta);
        const Vec6 dphi1{fr.t1, d.shape * fr.t1};
        const Vec6 dphi2{fr.t2, d.shape * fr.t2};
        const auto pair6 = [](const Vec6& a, const Vec6& b) {
            return dot(a.x, b.x) + dot(a.y, b.y);
        };
        wedge_terms[f] = (dot(d.theta, fr.t1) * pair6(w, dphi2) -
                          dot(d.theta, fr.t2) * pair6(w, dphi1)) *
                         fr.area;
        out.omega_norm =
            std::max(out.omega_norm, std::sqrt(dot(w.x, w.x) + dot(w.y, w.y)));
        tilt_terms[f] = (1.0 - d.cos_tilt * d.cos_tilt) * fr.area;
        bend_terms[f] = (1.0 + bending_form(d.shape)) * fr.area;
    }
    out.pair_phi_star = integrate(star_terms);
    out.pair_phi_wedge = integrate(wedge_terms);
    out.bound_product = out.omega_norm * std::sqrt(std::max(0.0, integrate(tilt_terms))) *
                        std::sqrt(std::max(0.0, integrate(bend_terms)));
    out.ratio = out.bound_product > 0.0 ? std::abs(out.pair_phi_wedge) / out.bound_product : 0.0;
    return out;
}

std::vector<GraphFaceData> graph_face_table(const std::vector<FaceFrame>& frames,
                                            const std::vector<FaceDirectorData>& data) {
    if (frames.size() != data.size())
        throw std::invalid_argument("graph_face_table: frames/data size mismatch");
    std::vector<GraphFaceData> rows(frames.size());
    parallel_for(frames.size(), 0, [&](std::size_t f) { rows[f] = graph_xi(frames[f], data[f]); });
    return rows;
}

}  // namespace tiltbend
