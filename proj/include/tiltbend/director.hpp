#pragma once

#include <string>
#include <vector>

#include "tiltbend/geom3.hpp"
#include "tiltbend/mesh.hpp"

namespace tiltbend {

/// Per-vertex unit director, validated against the vertex normals:
/// |theta| = 1 to 1e-12 and theta . nu > 0 everywhere.
struct DirectorField {
    std::vector<Vec3> theta;
};

DirectorField make_director_field(const TriMesh& mesh, std::vector<Vec3> values);

/// theta = angle-weighted vertex normal.
DirectorField normal_director(const TriMesh& mesh);

/// theta = (nu + eps * w) / |nu + eps * w| with w re-projected onto the
/// vertex tangent plane first.
DirectorField tilted_director(const TriMesh& mesh, std::vector<Vec3> w, double eps);

/// Tangential projection of the coordinate axis: w = e_axis - (e_axis.nu) nu.
std::vector<Vec3> tangential_axis_field(const TriMesh& mesh, int axis);

/// Perturbation field registry used by the CLI and sweep configs:
/// "e1" | "e2" | "e3" | "zero".
std::vector<Vec3> w_field_by_id(const TriMesh& mesh, const std::string& id);

/// Face-level director data. `shape` is the tangential gradient of the
/// interpolated director, extended to all of R^3 with theta in its kernel,
/// range projected into theta-perp, then symmetrized; lam1 >= lam2 are its
/// eigenvalues on theta-perp and (dir1, dir2, theta) is right handed.
struct FaceDirectorData {
    Vec3 theta;        // renormalized face average (or the face normal when overridden)
    Mat3 grad;         // raw gradient of the piecewise-linear interpolant
    Mat3 shape;        // symmetric extension; shape * theta = 0
    double lam1 = 0.0;
    double lam2 = 0.0;
    Vec3 dir1, dir2;
    double cos_tilt = 0.0;  // theta . nu
    double asym = 0.0;      // Frobenius asymmetry of the pre-symmetrization matrix
};

/// Face data assembled from an explicit unit director and a symmetric shape
/// operator with the director in its kernel; used to feed synthetic inputs
/// into the same eigen decomposition the mesh pipeline runs. grad is set to
/// `shape` and asym to zero. Throws on invalid inputs.
FaceDirectorData assemble_face_data(const FaceFrame& frame, const Vec3& theta, const Mat3& shape);

/// Throws FoldoverError when theta . nu <= 0 on some face.
std::vector<FaceDirectorData> face_director_data(const TriMesh& mesh,
                                                 const std::vector<FaceFrame>& frames,
                                                 const DirectorField& field);

/// Same pipeline fed by the normal director, but with the face director set
/// to the exact face normal. This is the evaluation convention for the
/// untilted reference energy: the tilt integrand vanishes identically.
std::vector<FaceDirectorData> face_director_data_normal(const TriMesh& mesh,
                                                        const std::vector<FaceFrame>& frames);

/// JSON array of per-vertex [x, y, z] triples.
void save_director(const DirectorField& field, const std::string& path);
std::vector<Vec3> load_director_values(const std::string& path);

}  // namespace tiltbend
