#include "tiltbend/energy.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "tiltbend/multilinear.hpp"
#include "tiltbend/reduce.hpp"

namespace tiltbend {

namespace {

// All integrals collect per-face terms first and reduce with pairwise_sum so
// results do not depend on traversal batching.
double integrate(const std::vector<double>& terms) {
    return pairwise_sum(std::span<const double>(terms.data(), terms.size()));
}

}  // namespace

double tilt_energy(const std::vector<FaceFrame>& frames, const std::vector<FaceDirectorData>& data,
                   double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("tilt_energy: eps must be positive");
    if (frames.size() != data.size())
        throw std::invalid_argument("tilt_energy: frames/data size mismatch");
    std::vector<double> terms(frames.size());
    for (std::size_t f = 0; f < frames.size(); ++f)
        terms[f] = (1.0 / data[f].cos_tilt - 1.0) * frames[f].area;
    return integrate(terms) / (eps * eps);
}

double bending_energy(const std::vector<FaceFrame>& frames,
                      const std::vector<FaceDirectorData>& data) {
    if (frames.size() != data.size())
        throw std::invalid_argument("bending_energy: frames/data size mismatch");
    std::vector<double> terms(frames.size());
    for (std::size_t f = 0; f < frames.size(); ++f)
        terms[f] = bending_form(data[f].shape) * frames[f].area;
    return integrate(terms);
}

double bending_energy_eigen(const std::vector<FaceFrame>& frames,
                            const std::vector<FaceDirectorData>& data) {
    if (frames.size() != data.size())
        throw std::invalid_argument("bending_energy_eigen: frames/data size mismatch");
    std::vector<double> terms(frames.size());
    for (std::size_t f = 0; f < frames.size(); ++f)
        terms[f] = bending_form_eigen(data[f].lam1, data[f].lam2) * frames[f].area;
    return integrate(terms);
}

CurvatureIntegrals curvature_integrals(const std::vector<FaceFrame>& frames,
                                       const std::vector<FaceDirectorData>& data) {
    if (frames.size() != data.size())
        throw std::invalid_argument("curvature_integrals: frames/data size mismatch");
    std::vector<double> h2(frames.size());
    std::vector<double> k(frames.size());
    for (std::size_t f = 0; f < frames.size(); ++f) {
        const double h = trace(data[f].shape);
        h2[f] = 0.25 * h * h * frames[f].area;
        k[f] = trace_cofactor(data[f].shape) * frames[f].area;
    }
    CurvatureIntegrals out;
    out.willmore_quarter = integrate(h2);
    out.total_gauss = integrate(k);
    return out;
}

EnergyBreakdown energy_breakdown(const TriMesh& mesh, const std::vector<FaceFrame>& frames,
                                 const std::vector<FaceDirectorData>& data, double eps) {
    EnergyBreakdown e;
    e.tilt = tilt_energy(frames, data, eps);
    e.bending = bending_energy(frames, data);
    e.total = e.tilt + e.bending;
    e.area = total_area(mesh);
    const auto normal = face_director_data_normal(mesh, frames);
    const auto ci = curvature_integrals(frames, normal);
    e.willmore_quarter = ci.willmore_quarter;
    e.total_gauss = ci.total_gauss;
    return e;
}

double limit_energy(const TriMesh& mesh, const std::vector<FaceFrame>& frames) {
    return bending_energy(frames, face_director_data_normal(mesh, frames));
}

double tilt_energy(const TriMesh& mesh, const DirectorField& field, double eps) {
    const auto frames = face_frames(mesh);
    return tilt_energy(frames, face_director_data(mesh, frames, field), eps);
}

double bending_energy(const TriMesh& mesh, const DirectorField& field) {
    const auto frames = face_frames(mesh);
    return bending_energy(frames, face_director_data(mesh, frames, field));
}

EnergyBreakdown q_epsilon(const TriMesh& mesh, const DirectorField& field, double eps) {
    const auto frames = face_frames(mesh);
    return energy_breakdown(mesh, frames, face_director_data(mesh, frames, field), eps);
}

double q_zero(const TriMesh& mesh) { return limit_energy(mesh, face_frames(mesh)); }

CurvatureIntegrals curvature_integrals(const TriMesh& mesh) {
    const auto frames = face_frames(mesh);
    return curvature_integrals(frames, face_director_data_normal(mesh, frames));
}

nlohmann::json to_json(const EnergyBreakdown& e) {
    return nlohmann::json{{"tilt", e.tilt},
                          {"bending", e.bending},
                          {"total", e.total},
                          {"area", e.area},
                          {"willmore_quarter", e.willmore_quarter},
                          {"total_gauss", e.total_gauss}};
}

}  // namespace tiltbend
