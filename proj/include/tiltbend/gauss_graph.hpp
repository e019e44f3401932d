#pragma once

#include <vector>

#include "tiltbend/director.hpp"
#include "tiltbend/mesh.hpp"
#include "tiltbend/multilinear.hpp"
#include "tiltbend/polynomial.hpp"

namespace tiltbend {

/// Per-face data of the graph map p -> (p, theta(p)): the tangent 2-vector
/// xi = (tau1, L tau1) ^ (tau2, L tau2), its Jacobian, the graph-variable
/// bending form of the mixed stratum, and the verticality defect.
struct GraphFaceData {
    TwoVector6 xi;
    double jac = 1.0;          // |xi|; 1 <= jac <= 1 + lam1^2 + lam2^2
    double f_y_value = 0.0;    // graph_bend_form(xi.part1, theta)
    double theta_dot_nu = 1.0;
    double defect = 0.0;       // |xi.part1^T theta|
};

/// Builds GraphFaceData and cross-checks every stratum against its closed
/// form (pure-position part = *nu; mixed part = tau1 (L tau2)^T - tau2 (L tau1)^T;
/// pure-fiber part = lam1 lam2 (theta.nu) *theta; |xi| against the Gram
/// determinant). A mismatch beyond 1e-10 is an internal bug and throws
/// VerifyError.
GraphFaceData graph_xi(const FaceFrame& frame, const FaceDirectorData& data);

/// |theta^T . mixed stratum| = |(theta.tau1) L tau2 - (theta.tau2) L tau1|;
/// vanishes iff theta is orthogonal to the tangent plane.
double verticality_defect(const FaceFrame& frame, const FaceDirectorData& data);

struct GraphAreaCertificate {
    double area_graph = 0.0;
    double area_surface = 0.0;
    double bending = 0.0;       // bending energy entering the global bound
    int per_face_violations = 0;  // faces with jac > 1 + lam1^2 + lam2^2 (+1e-12)
    bool global_bound_ok = false;  // area_graph <= area_surface + 12 * bending
};

GraphAreaCertificate graph_area(const TriMesh& mesh, const std::vector<FaceFrame>& frames,
                                const std::vector<FaceDirectorData>& data);

/// Residuals (rel_residual convention) of the per-face trace/cofactor
/// identities linking the mixed stratum to the shape operator.
struct XiTraceResiduals {
    double trace_pairing = 0.0;   // (theta.nu) tr L  vs  axial_pairing(theta, xi1)
    double cof_pairing = 0.0;     // (theta.nu)^2 tr cof L  vs  theta.cof(xi1) theta
    double row_orthogonality = 0.0;  // max_i |(xi1 theta)_i|
    double trace_free = 0.0;         // |tr xi1|
    double max() const;
};

XiTraceResiduals xi_trace_identities(const FaceFrame& frame, const FaceDirectorData& data);

/// Threshold below which a face counts as too tilted for graph-side
/// integrals (the 1/|eta0| factors degenerate).
inline constexpr double kGraphTiltExclusion = 0.05;
/// Unit-2-vector position-part threshold treated as a vertical tangent plane.
inline constexpr double kEta0Threshold = 1e-12;

struct GraphEnergyResult {
    double value = 0.0;
    int excluded_low_tilt = 0;   // theta.nu < kGraphTiltExclusion
    int excluded_vertical = 0;   // |eta0| <= kEta0Threshold (fold-over diagnostic)
    double max_membership_residual = 0.0;  // admissible-space residual of the integrand argument
};

/// Bending energy evaluated purely through graph quantities: per face the
/// unit 2-vector eta = xi/|xi| is formed, and the integrand
/// (1/|unit(eta0) ^ theta|^2) * graph_bend_form(eta1/|eta0|, theta) * |eta0|
/// is integrated over the graph (measure jac * area). Must equal
/// bending_energy to 1e-10 relative; kept deliberately un-simplified so the
/// code path is independent.
GraphEnergyResult graph_energy(const TriMesh& mesh, const std::vector<FaceFrame>& frames,
                               const std::vector<FaceDirectorData>& data);

struct PairingResult {
    double pair_phi_star = 0.0;   // sum (theta.nu) g(p, theta) area; >= 0 for g >= 0
    double pair_phi_wedge = 0.0;  // sum [(theta.tau1)<w,(tau2,L tau2)> - (theta.tau2)<w,(tau1,L tau1)>] area
    double omega_norm = 0.0;      // max |coefficient vector| over evaluation points
    double bound_product = 0.0;   // omega_norm * sqrt(int(1-(theta.nu)^2)) * sqrt(int(1+Q))
    double ratio = 0.0;           // |pair_phi_wedge| / bound_product (0 if bound_product = 0)
};

/// Pairings of the graph current with the two structure forms, evaluated at
/// one quadrature point per face (centroid, face director).
PairingResult current_pairings(const TriMesh& mesh, const std::vector<FaceFrame>& frames,
                               const std::vector<FaceDirectorData>& data, const Poly& g,
                               const Form1R6& omega);

/// Per-face CSV row block (face id, jac, theta_dot_nu, f_y_value, defect).
std::vector<GraphFaceData> graph_face_table(const std::vector<FaceFrame>& frames,
                                            const std::vector<FaceDirectorData>& data);

}  // namespace tiltbend
