#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tiltbend/director.hpp"
#include "tiltbend/mesh.hpp"

namespace tiltbend {

struct EnergyBreakdown {
    double tilt = 0.0;
    double bending = 0.0;
    double total = 0.0;  // tilt + bending
    double area = 0.0;
    double willmore_quarter = 0.0;  // integral of H^2/4 in the untilted convention
    double total_gauss = 0.0;       // integral of K in the untilted convention
};

/// eps^-2 * sum_f (1/(theta.nu) - 1) * area. pre: eps > 0, no folded faces
/// (the face data constructor already rejects theta.nu <= 0).
double tilt_energy(const std::vector<FaceFrame>& frames, const std::vector<FaceDirectorData>& data,
                   double eps);

/// sum_f bending_form(shape) * area.
double bending_energy(const std::vector<FaceFrame>& frames,
                      const std::vector<FaceDirectorData>& data);

/// Same integral through the eigenvalue expression; independent code path
/// used for cross-checks.
double bending_energy_eigen(const std::vector<FaceFrame>& frames,
                            const std::vector<FaceDirectorData>& data);

struct CurvatureIntegrals {
    double willmore_quarter = 0.0;
    double total_gauss = 0.0;
};

CurvatureIntegrals curvature_integrals(const std::vector<FaceFrame>& frames,
                                       const std::vector<FaceDirectorData>& data);

/// Full functional for a director configuration. The curvature integral
/// fields always use the untilted (face-normal) convention, independent of
/// the supplied field, so they describe the underlying surface.
EnergyBreakdown energy_breakdown(const TriMesh& mesh, const std::vector<FaceFrame>& frames,
                                 const std::vector<FaceDirectorData>& data, double eps);

/// Limit functional: bending energy in the untilted convention
/// (equals willmore_quarter - total_gauss/6 face by face).
double limit_energy(const TriMesh& mesh, const std::vector<FaceFrame>& frames);

nlohmann::json to_json(const EnergyBreakdown& e);

// Mesh-level convenience wrappers: build the face frames and face data
// internally, then defer to the per-face overloads above.

double tilt_energy(const TriMesh& mesh, const DirectorField& field, double eps);
double bending_energy(const TriMesh& mesh, const DirectorField& field);

/// Full functional at tilt scale eps.
EnergyBreakdown q_epsilon(const TriMesh& mesh, const DirectorField& field, double eps);

/// Limit functional of the underlying surface (untilted convention).
double q_zero(const TriMesh& mesh);

CurvatureIntegrals curvature_integrals(const TriMesh& mesh);

}  // namespace tiltbend
