#include "tiltbend/director.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tiltbend/errors.hpp"
#include "tiltbend/reduce.hpp"

namespace tiltbend {

DirectorField make_director_field(const TriMesh& mesh, std::vector<Vec3> values) {
    if (values.size() != mesh.vertices.size())
        throw ParseError("director field has " + std::to_string(values.size()) +
                         " entries for a mesh with " + std::to_string(mesh.vertices.size()) +
                         " vertices");
    const std::vector<Vec3> normals = vertex_normals(mesh);
    for (std::size_t v = 0; v < values.size(); ++v) {
        if (std::abs(norm(values[v]) - 1.0) > 1e-12)
            throw ParseError("director at vertex " + std::to_string(v) + " is not unit length");
        if (dot(values[v], normals[v]) <= 0.0)
            throw FoldoverError("director at vertex " + std::to_string(v) +
                                    " points into or past the tangent plane",
                                static_cast<long>(v), true);
    }
    return DirectorField{std::move(values)};
}

DirectorField normal_director(const TriMesh& mesh) {
    return make_director_field(mesh, vertex_normals(mesh));
}

DirectorField tilted_director(const TriMesh& mesh, std::vector<Vec3> w, double eps) {
    if (w.size() != mesh.vertices.size())
        throw ParseError("perturbation field size does not match vertex count");
    const std::vector<Vec3> normals = vertex_normals(mesh);
    std::vector<Vec3> values(w.size());
    for (std::size_t v = 0; v < w.size(); ++v) {
        const Vec3 wt = w[v] - dot(w[v], normals[v]) * normals[v];
        values[v] = normalized(normals[v] + eps * wt);
    }
    return make_director_field(mesh, std::move(values));
}

std::vector<Vec3> tangential_axis_field(const TriMesh& mesh, int axis) {
    if (axis < 0 || axis > 2) throw ParseError("axis index out of range");
    Vec3 e;
    e[static_cast<std::size_t>(axis)] = 1.0;
    const std::vector<Vec3> normals = vertex_normals(mesh);
    std::vector<Vec3> w(normals.size());
    for (std::size_t v = 0; v < w.size(); ++v) w[v] = e - dot(e, normals[v]) * normals[v];
    return w;
}

std::vector<Vec3> w_field_by_id(const TriMesh& mesh, const std::string& id) {
    if (id == "zero") return std::vector<Vec3>(mesh.vertices.size());
    if (id == "e1") return tangential_axis_field(mesh, 0);
    if (id == "e2") return tangential_axis_field(mesh, 1);
    if (id == "e3") return tangential_axis_field(mesh, 2);
    throw ParseError("unknown perturbation field id '" + id + "'");
}

namespace {

void fill_eigen(FaceDirectorData& d);

FaceDirectorData build_face_data(const FaceFrame& fr, const std::array<Vec3, 3>& pos,
                                 const std::array<Vec3, 3>& th, std::size_t face,
                                 bool use_face_normal) {
    FaceDirectorData d;

    if (use_face_normal) {
        // exact untilted convention: theta . nu = 1 by the unit-normal
        // frame invariant, making the tilt integrand vanish identically
        d.theta = fr.nu;
        d.cos_tilt = 1.0;
    } else {
        const Vec3 avg = (th[0] + th[1] + th[2]) / 3.0;
        const double n = norm(avg);
        if (n < 1e-12)
            throw FoldoverError("face " + std::to_string(face) + ": director average vanishes",
                                static_cast<long>(face), false);
        d.theta = avg / n;
        d.cos_tilt = dot(d.theta, fr.nu);
    }
    if (d.cos_tilt <= 0.0)
        throw FoldoverError("face " + std::to_string(face) +
                                ": director folds past the face plane (theta . nu <= 0)",
                            static_cast<long>(face), false);

    // Hat-function gradients lie in the face plane; grad . nu = 0 follows.
    const double inv2a = 1.0 / (2.0 * fr.area);
    const Vec3 g[3] = {inv2a * cross(fr.nu, pos[2] - pos[1]), inv2a * cross(fr.nu, pos[0] - pos[2]),
                       inv2a * cross(fr.nu, pos[1] - pos[0])};
    d.grad = outer(th[0], g[0]) + outer(th[1], g[1]) + outer(th[2], g[2]);

    // Extend along the splitting R^3 = span(theta) + tangent plane so the
    // director sits in the kernel, then force the range into theta-perp.
    const Mat3 oblique = d.grad - (1.0 / d.cos_tilt) * outer(d.grad * d.theta, fr.nu);
    const Mat3 perp = Mat3::identity() - outer(d.theta, d.theta);
    const Mat3 pre = perp * oblique;
    d.asym = frobenius_norm(pre - transpose(pre));
    d.shape = 0.5 * (pre + transpose(pre));

    fill_eigen(d);
    return d;
}

// Eigenstructure on theta-perp via a deterministic in-plane basis.
void fill_eigen(FaceDirectorData& d) {
    const Vec3 a = stable_orthogonal(d.theta);
    const Vec3 b = cross(d.theta, a);
    const Vec3 la = d.shape * a, lb = d.shape * b;
    const double s11 = dot(a, la), s22 = dot(b, lb), s12 = dot(a, lb);
    const double mean = 0.5 * (s11 + s22), diff = 0.5 * (s11 - s22);
    const double disc = std::sqrt(diff * diff + s12 * s12);
    d.lam1 = mean + disc;
    d.lam2 = mean - disc;

    const double c1 = s12, c2 = d.lam1 - s11;
    const double k1 = d.lam1 - s22, k2 = s12;
    Vec3 v1;
    if (c1 * c1 + c2 * c2 >= k1 * k1 + k2 * k2) {
        v1 = c1 * a + c2 * b;
    } else {
        v1 = k1 * a + k2 * b;
    }
    if (norm(v1) < 1e-14) {
        v1 = a;  // isotropic: any in-plane direction is principal
    }
    v1 = normalized(v1);
    std::size_t imax = 0;
    if (std::abs(v1[1]) > std::abs(v1[imax])) imax = 1;
    if (std::abs(v1[2]) > std::abs(v1[imax])) imax = 2;
    if (v1[imax] < 0.0) v1 = -v1;
    d.dir1 = v1;
    d.dir2 = cross(d.theta, v1);
}

std::vector<FaceDirectorData> build_all(const TriMesh& mesh, const std::vector<FaceFrame>& frames,
                                        const std::vector<Vec3>& theta, bool override_normal) {
    std::vector<FaceDirectorData> data(mesh.faces.size());
    parallel_for(mesh.faces.size(), 0, [&](std::size_t f) {
        const auto& t = mesh.faces[f];
        const std::array<Vec3, 3> pos = {mesh.vertices[t[0]], mesh.vertices[t[1]],
                                         mesh.vertices[t[2]]};
        const std::array<Vec3, 3> th = {theta[t[0]], theta[t[1]], theta[t[2]]};
        data[f] = build_face_data(frames[f], pos, th, f, override_normal);
    });
    return data;
}

}  // namespace

FaceDirectorData assemble_face_data(const FaceFrame& frame, const Vec3& theta,
                                    const Mat3& shape) {
    if (std::abs(norm(theta) - 1.0) > 1e-9)
        throw std::invalid_argument("assemble_face_data: director must be unit length");
    const double scale = std::max(1.0, max_abs(shape));
    if (max_abs(shape - transpose(shape)) > 1e-12 * scale)
        throw std::invalid_argument("assemble_face_data: shape operator must be symmetric");
    if (norm(shape * theta) > 1e-9 * scale)
        throw std::invalid_argument("assemble_face_data: director must span the kernel");
    FaceDirectorData d;
    d.theta = theta;
    d.cos_tilt = dot(theta, frame.nu);
    if (d.cos_tilt <= 0.0)
        throw FoldoverError("director folds past the face plane (theta . nu <= 0)", -1, false);
    d.grad = shape;
    d.shape = shape;
    d.asym = 0.0;
    fill_eigen(d);
    return d;
}

std::vector<FaceDirectorData> face_director_data(const TriMesh& mesh,
                                                 const std::vector<FaceFrame>& frames,
                                                 const DirectorField& field) {
    return build_all(mesh, frames, field.theta, false);
}

std::vector<FaceDirectorData> face_director_data_normal(const TriMesh& mesh,
                                                        const std::vector<FaceFrame>& frames) {
    return build_all(mesh, frames, normal_director(mesh).theta, true);
}

void save_director(const DirectorField& field, const std::string& path) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& v : field.theta) j.push_back({v[0], v[1], v[2]});
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out << j.dump() << "\n";
}

std::vector<Vec3> load_director_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open: " + path);
    nlohmann::json j;
    try {
        in >> j;
        if (!j.is_array()) throw ParseError("director file must be a JSON array of triples");
        std::vector<Vec3> values;
        values.reserve(j.size());
        for (const auto& e : j) {
            if (!e.is_array() || e.size() != 3)
                throw ParseError("director entries must be [x, y, z] triples");
            values.push_back({e[0].get<double>(), e[1].get<double>(), e[2].get<double>()});
        }
        return values;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed director file " + path + ": " + e.what());
    }
}

}  // namespace tiltbend
