#include "tiltbend/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tiltbend/csv.hpp"
#include "tiltbend/director.hpp"
#include "tiltbend/gauss_graph.hpp"
#include "tiltbend/mesh.hpp"
#include "tiltbend/multilinear.hpp"
#include "tiltbend/rng.hpp"
#include "tiltbend/spectral.hpp"
#include "tiltbend/varifold.hpp"

namespace tiltbend {

namespace {

constexpr int kMaxStoredFailures = 8;
constexpr double kTwoPi = 6.283185307179586476925287;

std::string vec3_str(const Vec3& v) {
    return "(" + fmt_g17(v[0]) + ", " + fmt_g17(v[1]) + ", " + fmt_g17(v[2]) + ")";
}

std::string mat3_str(const Mat3& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < 3; ++i) {
        s += vec3_str(m.row(i));
        if (i < 2) s += ", ";
    }
    return s + "]";
}

double max_abs9(const Vec9& u) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
}

double max_abs(const Bivector3& w) {
    return std::max({std::abs(w.c12), std::abs(w.c13), std::abs(w.c23)});
}

/// Synthetic per-face sample: orthonormal frame, admissible tilted director
/// (theta . nu >= 0.14 by construction), and a symmetric shape operator with
/// the director spanning its kernel.
struct Instance {
    FaceFrame frame;
    FaceDirectorData data;
};

FaceFrame draw_frame(Rng& rng) {
    FaceFrame fr;
    fr.nu = rng.unit_vec3();
    const Vec3 a = stable_orthogonal(fr.nu);
    const Vec3 b = cross(fr.nu, a);
    const double phi = rng.uniform(0.0, kTwoPi);
    fr.t1 = std::cos(phi) * a + std::sin(phi) * b;
    fr.t2 = cross(fr.nu, fr.t1);
    fr.centroid = rng.vec3(-1.0, 1.0);
    fr.area = rng.uniform(0.25, 2.0);
    return fr;
}

Mat3 draw_shape(Rng& rng, const Vec3& kernel) {
    const Vec3 a = stable_orthogonal(kernel);
    const Vec3 b = cross(kernel, a);
    const double s11 = rng.uniform(-2.0, 2.0);
    const double s12 = rng.uniform(-2.0, 2.0);
    const double s22 = rng.uniform(-2.0, 2.0);
    return s11 * outer(a, a) + s12 * (outer(a, b) + outer(b, a)) + s22 * outer(b, b);
}

Instance draw_instance(Rng& rng) {
    const FaceFrame fr = draw_frame(rng);
    const double t = rng.uniform(0.0, 0.75);
    const Vec3 theta = normalized(fr.nu + t * rng.unit_vec3());
    return Instance{fr, assemble_face_data(fr, theta, draw_shape(rng, theta))};
}

std::string instance_str(const Instance& in) {
    return "nu=" + vec3_str(in.frame.nu) + " t1=" + vec3_str(in.frame.t1) +
           " theta=" + vec3_str(in.data.theta) + " L=" + mat3_str(in.data.shape) +
           " area=" + fmt_g17(in.frame.area);
}

/// Row-orthogonal trace-free matrix at y, drawn by two-sided projection of a
/// random matrix followed by trace removal along (I - y y^T).
Mat3 draw_admissible(Rng& rng, const Vec3& y) {
    const Mat3 p = Mat3::identity() - outer(y, y);
    const Mat3 z0 = rng.mat3(-2.0, 2.0) * p;
    return z0 - (trace(z0) / 2.0) * p;
}

class Battery {
  public:
    Battery(std::uint64_t seed, int trials, double tol) : rng_(seed), trials_(trials), tol_(tol) {}

    /// fn draws its inputs from the shared stream, returns the trial
    /// residual, and appends a reproducer description to `repro` (consumed
    /// only when the trial fails).
    void family(const std::string& name, const std::function<double(Rng&, std::string&)>& fn) {
        IdentityReport rep;
        rep.name = name;
        rep.trials = trials_;
        for (int t = 0; t < trials_; ++t) {
            std::string repro;
            double residual;
            try {
                residual = fn(rng_, repro);
            } catch (const std::exception& e) {
                residual = std::numeric_limits<double>::infinity();
                repro += " exception: ";
                repro += e.what();
            }
            rep.max_residual = std::max(rep.max_residual, residual);
            if (!(residual <= tol_)) {
                ++rep.failure_count;
                if (static_cast<int>(rep.failures.size()) < kMaxStoredFailures)
                    rep.failures.push_back("trial " + std::to_string(t) + ": residual " +
                                           fmt_g17(residual) + " " + repro);
            }
        }
        reports_.push_back(std::move(rep));
    }

    std::vector<IdentityReport> take() { return std::move(reports_); }

  private:
    Rng rng_;
    int trials_;
    double tol_;
    std::vector<IdentityReport> reports_;
};

// --- identity families, one function each -------------------------------

double trial_wedge_cross_hodge(Rng& rng, std::string& repro) {
    const Vec3 x = rng.vec3(-2.0, 2.0);
    const Vec3 y = rng.vec3(-2.0, 2.0);
    const Mat3 m = rng.mat3(-2.0, 2.0);
    repro = "x=" + vec3_str(x) + " y=" + vec3_str(y) + " M=" + mat3_str(m);
    const double scale = std::max(1.0, norm(x) * norm(y));

    // wedge versus Hodge dual of the cross product, componentwise
    const Bivector3 w = wedge3(x, y);
    const Bivector3 h = hodge_star(cross(x, y));
    double r = max_abs(w - h) / scale;

    // same statement in matrix form: (x ^ y)_{ij} = sum_k eps_{ijk} (x X y)_k
    r = std::max(r, max_abs(antisym_matrix(w) - axis_matrix(cross(x, y))) / scale);

    // the star is an isometry with explicit inverse
    r = std::max(r, max_abs(hodge_unstar(hodge_star(x)) - x));

    // axial contraction of M equals the Frobenius pairing with the axis matrix
    r = std::max(r, rel_residual(axial_pairing(y, m), frobenius(axis_matrix(y), m)));
    return r;
}

double trial_cofactor_axis(Rng& rng, std::string& repro) {
    const Vec3 y = rng.unit_vec3();
    const Mat3 a = rng.mat3(-2.0, 2.0);
    repro = "y=" + vec3_str(y) + " A=" + mat3_str(a);
    const MatrixIdentityResiduals r = matrix_identity_residuals(a, y);
    return std::max({r.axis_product, r.axis_split, r.projected_trace, r.projected_split});
}

double trial_rank_one_update(Rng& rng, std::string& repro) {
    const Vec3 y = rng.unit_vec3();
    const Mat3 a = rng.mat3(-2.0, 2.0);
    repro = "y=" + vec3_str(y) + " A=" + mat3_str(a);
    return matrix_identity_residuals(a, y).rank_one_update;
}

double trial_det_trace_powers(Rng& rng, std::string& repro) {
    const Vec3 y = rng.unit_vec3();
    const Mat3 a = rng.mat3(-2.0, 2.0);
    repro = "y=" + vec3_str(y) + " A=" + mat3_str(a);
    return matrix_identity_residuals(a, y).trace_determinant;
}

double trial_graph_strata(Rng& rng, std::string& repro) {
    const Instance in = draw_instance(rng);
    repro = instance_str(in);
    const FaceFrame& fr = in.frame;
    const FaceDirectorData& d = in.data;

    const Vec3 lt1 = d.shape * fr.t1, lt2 = d.shape * fr.t2;
    const TwoVector6 xi = wedge6(Vec6{fr.t1, lt1}, Vec6{fr.t2, lt2});

    // closed forms of the three strata
    double r = max_abs(xi.part0 - hodge_star(fr.nu));
    r = std::max(r, max_abs(xi.part1 - (outer(fr.t1, lt2) - outer(fr.t2, lt1))));
    const Bivector3 fiber = (d.lam1 * d.lam2 * d.cos_tilt) * hodge_star(d.theta);
    r = std::max(r, max_abs(xi.part2 - fiber));

    // stratum norms against the eigen expressions
    const auto dev = [&](const Vec3& v) { return 1.0 - dot(v, fr.nu) * dot(v, fr.nu); };
    const double n1 = d.lam1 * d.lam1 * dev(d.dir1) + d.lam2 * d.lam2 * dev(d.dir2);
    r = std::max(r, rel_residual(frobenius(xi.part1, xi.part1), n1));
    const double c2 = d.lam1 * d.lam2 * d.cos_tilt;
    r = std::max(r, rel_residual(norm2(xi.part2), c2 * c2));
    r = std::max(r, rel_residual(norm2(xi.part0), 1.0));

    // Jacobian: norm route, Gram-determinant route, expanded route
    const double jac = norm(xi);
    const double gram = (1.0 + dot(lt1, lt1)) * (1.0 + dot(lt2, lt2)) -
                        dot(lt1, lt2) * dot(lt1, lt2);
    r = std::max(r, rel_residual(jac * jac, gram));
    r = std::max(r, rel_residual(jac * jac, 1.0 + n1 + c2 * c2));

    // two-sided bound and the area comparison with the bending density
    const double cap = 1.0 + d.lam1 * d.lam1 + d.lam2 * d.lam2;
    r = std::max(r, std::max(0.0, 1.0 - jac));
    r = std::max(r, std::max(0.0, jac - cap) / cap);
    r = std::max(r, std::max(0.0, jac - 1.0 - 12.0 * bending_form(d.shape)) / cap);
    return r;
}

double trial_mixed_traces(Rng& rng, std::string& repro) {
    const Instance in = draw_instance(rng);
    repro = instance_str(in);
    return xi_trace_identities(in.frame, in.data).max();
}

double trial_graph_energy_density(Rng& rng, std::string& repro) {
    const Instance in = draw_instance(rng);
    repro = instance_str(in);
    const GraphFaceData g = graph_xi(in.frame, in.data);

    // literal graph-side composition: normalize xi, read the plane normal off
    // the position stratum, divide the mixed stratum by |eta0|
    const Bivector3 eta0 = (1.0 / g.jac) * g.xi.part0;
    const double abs_eta0 = norm(eta0);
    const Vec3 plane_normal = hodge_unstar((1.0 / abs_eta0) * eta0);
    const double wedge_with_director = dot(plane_normal, in.data.theta);
    const Mat3 zeta = (1.0 / (g.jac * abs_eta0)) * g.xi.part1;
    const double density = graph_bend_form(zeta, in.data.theta) /
                           (wedge_with_director * wedge_with_director) * abs_eta0;
    return rel_residual(density * g.jac, bending_form(in.data.shape));
}

double trial_bending_form_routes(Rng& rng, std::string& repro) {
    const Instance in = draw_instance(rng);
    repro = instance_str(in);
    return rel_residual(bending_form(in.data.shape),
                        bending_form_eigen(in.data.lam1, in.data.lam2));
}

double trial_spectral_eigen(Rng& rng, std::string& repro) {
    const Vec3 y = rng.unit_vec3();
    repro = "y=" + vec3_str(y);
    const SpectralBasis b = build_spectral_basis(y);
    const auto pair_residual = [&](const Vec9& v, double lam) {
        return max_abs9(sub9(mat9_mul(b.A, v), scale9(v, lam)));
    };
    double r = pair_residual(b.v_m1, -1.0);
    r = std::max(r, pair_residual(b.v_5, 5.0));
    r = std::max(r, pair_residual(b.v_1a, 1.0));
    r = std::max(r, pair_residual(b.v_1b, 1.0));
    for (const auto& v : b.v0) r = std::max(r, pair_residual(v, 0.0));
    // pinned eigenvector normalizations
    r = std::max(r, rel_residual(norm9_sq(b.v_m1), 2.0));
    r = std::max(r, rel_residual(norm9_sq(b.v_5), 2.0));
    return r;
}

double trial_kernel_orthogonality(Rng& rng, std::string& repro) {
    const Vec3 y = rng.unit_vec3();
    const Mat3 zeta = draw_admissible(rng, y);
    repro = "y=" + vec3_str(y) + " zeta=" + mat3_str(zeta);
    const SpectralBasis b = build_spectral_basis(y);
    const Vec9 u = flatten_matrix(zeta);
    const double scale = std::max(1.0, std::sqrt(norm9_sq(u)));

    // rows of the admissible space are orthogonal to the row-type kernel
    // vectors and to the -1 eigenvector
    double r = 0.0;
    for (int i = 0; i < 3; ++i) r = std::max(r, std::abs(dot9(u, b.v0[static_cast<std::size_t>(i)])) / scale);
    r = std::max(r, std::abs(dot9(u, b.v_m1)) / scale);

    // the -1 eigenvector is an explicit combination of kernel vectors
    Vec9 lin = scale9(flatten_matrix(Mat3::identity()), -1.0);
    for (int i = 0; i < 3; ++i)
        lin = add9(lin, scale9(b.v0[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(i)]));
    r = std::max(r, max_abs9(sub9(b.v_m1, lin)));
    return r;
}

double trial_fast_projection(Rng& rng, std::string& repro) {
    const Vec3 y = rng.unit_vec3();
    const Mat3 zeta = draw_admissible(rng, y);
    repro = "y=" + vec3_str(y) + " zeta=" + mat3_str(zeta);
    const SpectralBasis b = build_spectral_basis(y);
    const Vec9 u = flatten_matrix(zeta);
    return rel_residual(norm_pi0_fast(u, b), norm9_sq(project_pi0(u, b)));
}

double trial_convexified_routes(Rng& rng, std::string& repro) {
    const Vec3 y = rng.unit_vec3();
    const Mat3 m = rng.mat3(-2.0, 2.0);
    repro = "y=" + vec3_str(y) + " u=" + mat3_str(m);
    const SpectralBasis b = build_spectral_basis(y);
    const Vec9 u = flatten_matrix(m);
    const double f = convexified_form(u, b);
    double r = rel_residual(f, convexified_form_eigen(u, b));
    r = std::max(r, std::max(0.0, growth_lower_bound(u, b) - f) / std::max(1.0, f));
    return r;
}

double trial_quadratic_consistency(Rng& rng, std::string& repro) {
    const Vec3 y = rng.unit_vec3();
    const Mat3 zeta = draw_admissible(rng, y);
    repro = "y=" + vec3_str(y) + " zeta=" + mat3_str(zeta);
    return quadratic_consistency(zeta, y).residual;
}

double trial_curvature_coefficients(Rng& rng, std::string& repro) {
    const Vec3 nu = rng.unit_vec3();
    const Mat3 l = draw_shape(rng, nu);
    repro = "nu=" + vec3_str(nu) + " L=" + mat3_str(l);
    const SecondFundamentalResult sf = second_fundamental_A(l, nu);
    const MeanGauss hk = hk_from_A(sf.A, nu);
    double r = sf.precondition_residual;
    r = std::max(r, rel_residual(hk.H, trace(l)));
    r = std::max(r, rel_residual(hk.K, trace_cofactor(l)));
    return r;
}

double trial_varifold_flip(Rng& rng, std::string& repro) {
    const FaceFrame fr = draw_frame(rng);
    const Mat3 l = draw_shape(rng, fr.nu);
    repro = "nu=" + vec3_str(fr.nu) + " t1=" + vec3_str(fr.t1) + " L=" + mat3_str(l);
    const FaceDirectorData d = assemble_face_data(fr, fr.nu, l);
    const GraphFaceData g = graph_xi(fr, d);
    const Mat3 xi1b = combine_xi1(1.0, g.xi.part1, 0.0, Mat3{}, 1.0);
    const GraphVarifoldData gv = varifold_A_from_graph(g.xi.part0, xi1b, fr.nu);

    // multiplicity one reproduces the negated smooth coefficients
    const double scale = std::max(1.0, max_abs(l));
    const CurvatureTensorA strict = -second_fundamental_A(l, fr.nu).A;
    double r = max_abs_diff(gv.A, strict) / scale;
    r = std::max(r, max_abs(gv.H_vec + trace(l) * fr.nu) / scale);

    // orientation flip of the position stratum and the director cancels bitwise
    const GraphVarifoldData flip =
        varifold_A_from_graph((-1.0) * g.xi.part0, xi1b, -1.0 * fr.nu);
    r = std::max(r, max_abs_diff(gv.A, flip.A));
    r = std::max(r, max_abs(gv.H_vec - flip.H_vec));
    return r;
}

}  // namespace

bool VerifyReport::ok() const {
    for (const auto& rep : identities)
        if (rep.failure_count != 0) return false;
    return true;
}

std::string VerifyReport::to_text() const {
    std::ostringstream out;
    out << "verify seed=" << seed << " trials=" << trials << " tolerance=" << fmt_g17(tolerance)
        << "\n";
    for (const auto& rep : identities) {
        out << (rep.failure_count == 0 ? "ok   " : "FAIL ") << rep.name << " trials=" << rep.trials
            << " max_residual=" << fmt_g17(rep.max_residual);
        if (rep.failure_count != 0) out << " failures=" << rep.failure_count;
        out << "\n";
        for (const auto& f : rep.failures) out << "     " << f << "\n";
    }
    out << (ok() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json ids = nlohmann::json::array();
    for (const auto& rep : identities)
        ids.push_back({{"name", rep.name},
                       {"trials", rep.trials},
                       {"max_residual", rep.max_residual},
                       {"failure_count", rep.failure_count},
                       {"failures", rep.failures}});
    return nlohmann::json{{"seed", seed},
                          {"trials", trials},
                          {"tolerance", tolerance},
                          {"identities", std::move(ids)},
                          {"ok", ok()}};
}

VerifyReport run_verify(std::uint64_t seed, int trials, double tolerance) {
    if (trials <= 0) throw std::invalid_argument("run_verify: trials must be positive");
    VerifyReport report;
    report.seed = seed;
    report.trials = trials;
    report.tolerance = tolerance;

    Battery battery(seed, trials, tolerance);
    battery.family("wedge_cross_hodge", trial_wedge_cross_hodge);
    battery.family("cofactor_axis_identities", trial_cofactor_axis);
    battery.family("rank_one_det_update", trial_rank_one_update);
    battery.family("det_trace_powers", trial_det_trace_powers);
    battery.family("graph_strata_closed_forms", trial_graph_strata);
    battery.family("mixed_stratum_traces", trial_mixed_traces);
    battery.family("graph_energy_density", trial_graph_energy_density);
    battery.family("bending_form_routes", trial_bending_form_routes);
    battery.family("spectral_eigen_relations", trial_spectral_eigen);
    battery.family("kernel_orthogonality", trial_kernel_orthogonality);
    battery.family("fast_projection_norm", trial_fast_projection);
    battery.family("convexified_form_routes", trial_convexified_routes);
    battery.family("quadratic_consistency", trial_quadratic_consistency);
    battery.family("curvature_coefficients", trial_curvature_coefficients);
    battery.family("graph_varifold_flip", trial_varifold_flip);
    report.identities = battery.take();
    return report;
}

}  // namespace tiltbend
