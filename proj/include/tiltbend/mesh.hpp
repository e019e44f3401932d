#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tiltbend/geom3.hpp"

namespace tiltbend {

/// Origin of a generated mesh; lets refine() resample the exact surface
/// instead of subdividing floating-point geometry.
struct AnalyticTag {
    enum class Kind { none, sphere, torus };
    Kind kind = Kind::none;
    double radius = 0.0;        // sphere
    int level = 0;              // sphere subdivision depth
    double major_radius = 0.0;  // torus
    double minor_radius = 0.0;
    int nu = 0;  // torus grid resolution (major / minor direction)
    int nv = 0;
};

/// Triangle mesh with counterclockwise-from-outside faces. Instances are
/// treated as immutable once validated; all evaluation code takes const refs.
struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    AnalyticTag tag;
};

/// Orthonormal per-face frame. t1 is the normalized first edge, nu the face
/// normal, t2 = nu x t1, so (t1, t2, nu) is right handed.
struct FaceFrame {
    Vec3 t1, t2, nu;
    Vec3 centroid;
    double area = 0.0;
};

TriMesh make_sphere(double radius, int level);
TriMesh make_torus(double major_radius, double minor_radius, int nu, int nv);

/// One resampling step on the tagged analytic surface: spheres gain a
/// subdivision level (midpoints projected back to the radius), tori double
/// both grid resolutions. Throws MeshError for untagged meshes.
TriMesh refine(const TriMesh& mesh);

/// Structural checks: face indices in range, no degenerate faces, every
/// directed edge used exactly once, every edge matched by its reverse
/// (orientation), and - when require_closed - no boundary edges plus positive
/// enclosed volume. Throws MeshError naming the offending simplex.
void validate(const TriMesh& mesh, bool require_closed = true);

FaceFrame face_frame(const TriMesh& mesh, std::size_t f);
std::vector<FaceFrame> face_frames(const TriMesh& mesh);

double total_area(const TriMesh& mesh);
double signed_volume(const TriMesh& mesh);
int euler_characteristic(const TriMesh& mesh);

/// Angle-weighted average of incident face normals, normalized.
std::vector<Vec3> vertex_normals(const TriMesh& mesh);

/// ASCII OFF with 17 significant digits; coordinates round-trip bitwise.
/// save_off also writes `path + ".json"` with the analytic tag when present;
/// load_off picks the sidecar up again if it exists.
void save_off(const TriMesh& mesh, const std::string& path);
TriMesh load_off(const std::string& path, bool require_closed = true);

/// FNV-1a over counts, vertex coordinate bit patterns, and face indices.
std::uint64_t mesh_hash(const TriMesh& mesh);

}  // namespace tiltbend
