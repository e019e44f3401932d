// Acceptance gate: one pass/fail line per criterion, exit 0 only when all
// criteria hold. Tolerances are pinned here, next to the checks.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "tiltbend/director.hpp"
#include "tiltbend/energy.hpp"
#include "tiltbend/gauss_graph.hpp"
#include "tiltbend/mesh.hpp"
#include "tiltbend/multilinear.hpp"
#include "tiltbend/rng.hpp"
#include "tiltbend/spectral.hpp"
#include "tiltbend/sweep.hpp"
#include "tiltbend/verify.hpp"

namespace {

// Always-on requirement: never compiled out in Release.
#define REQUIRE(cond, msg)                                                      \
    do {                                                                        \
        if (!(cond)) {                                                          \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg \
                      << "\n";                                                  \
            return false;                                                       \
        }                                                                       \
    } while (0)

using namespace tiltbend;

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

double rel_err(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

// Shared expensive artifacts, computed once on first use.

// Recovery sweep: tangential e1 perturbation over the published epsilon list.
const SweepReport& recovery_sweep() {
    static const SweepReport report = [] {
        SweepConfig c;
        c.surface = "sphere";
        c.radius = 1.0;
        c.levels = {3, 4, 5};
        c.eps = {0.2, 0.1, 0.05, 0.025};
        c.w_id = "e1";
        c.seed = 1;
        return run_sweep(c);
    }();
    return report;
}

// Refinement study for the first-variation residuals, tilt switched off.
const SweepReport& refinement_sweep() {
    static const SweepReport report = [] {
        SweepConfig c;
        c.surface = "sphere";
        c.radius = 1.0;
        c.levels = {3, 4, 5, 6};
        c.eps = {0.2};
        c.w_id = "zero";
        c.seed = 1;
        return run_sweep(c);
    }();
    return report;
}

const CurvatureIntegrals& clifford_torus_integrals() {
    static const CurvatureIntegrals ci =
        curvature_integrals(make_torus(std::sqrt(2.0), 1.0, 128, 128));
    return ci;
}

// 1. Identity battery at full trial count, single-threaded, time boxed.
bool criterion_identity_battery(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    const VerifyReport report = run_verify(1, 10000);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    REQUIRE(report.ok(), "identity battery reported failures:\n" + report.to_text());
    double worst = 0.0;
    for (const auto& fam : report.identities) {
        REQUIRE(fam.trials == 10000, fam.name + ": trial count mismatch");
        REQUIRE(fam.max_residual <= 1e-9,
                fam.name + ": max residual " + fmt(fam.max_residual) + " above 1e-9");
        worst = std::max(worst, fam.max_residual);
    }
    REQUIRE(seconds <= 60.0, "battery took " + fmt(seconds) + " s, budget is 60 s");
    detail = std::to_string(report.identities.size()) + " families, max residual " + fmt(worst) +
             ", " + fmt(seconds) + " s";
    return true;
}

// 2. Sphere bending value and scale invariance.
bool criterion_sphere_bending(std::string& detail) {
    const double analytic = 10.0 * kPi / 3.0;
    const double q_unit = q_zero(make_sphere(1.0, 4));
    REQUIRE(rel_err(q_unit, analytic) <= 0.01,
            "sphere level 4 bending " + fmt(q_unit) + " vs " + fmt(analytic));

    double lo = q_unit, hi = q_unit, sum = q_unit;
    for (double r : {0.5, 2.0}) {
        const double q = q_zero(make_sphere(r, 4));
        lo = std::min(lo, q);
        hi = std::max(hi, q);
        sum += q;
    }
    const double spread = (hi - lo) / (sum / 3.0);
    REQUIRE(spread <= 0.01, "scale spread " + fmt(spread) + " above 1%");
    detail = "value " + fmt(q_unit) + " (err " + fmt(rel_err(q_unit, analytic)) +
             "), radius spread " + fmt(spread);
    return true;
}

// 3. Gauss-Bonnet on sphere and torus.
bool criterion_gauss_bonnet(std::string& detail) {
    const double sphere_k = curvature_integrals(make_sphere(1.0, 4)).total_gauss;
    REQUIRE(rel_err(sphere_k, 4.0 * kPi) <= 0.02,
            "sphere total curvature " + fmt(sphere_k) + " vs " + fmt(4.0 * kPi));
    const double torus_k = clifford_torus_integrals().total_gauss;
    REQUIRE(std::abs(torus_k) <= 0.25, "torus total curvature " + fmt(torus_k) + " above 0.25");
    detail = "sphere " + fmt(sphere_k) + " vs 4pi, torus " + fmt(torus_k);
    return true;
}

// 4. Torus Willmore value at the square-root-of-two radius ratio.
bool criterion_torus_willmore(std::string& detail) {
    const double analytic = 2.0 * kPi * kPi;
    const double value = clifford_torus_integrals().willmore_quarter;
    REQUIRE(rel_err(value, analytic) <= 0.02,
            "torus Willmore " + fmt(value) + " vs " + fmt(analytic));
    detail = "value " + fmt(value) + " vs " + fmt(analytic) + " (err " +
             fmt(rel_err(value, analytic)) + ")";
    return true;
}

// 5. Graph area value plus the area and Jacobian bounds on every sweep cell.
bool criterion_graph_area(std::string& detail) {
    const TriMesh m = make_sphere(1.0, 4);
    const auto frames = face_frames(m);
    const GraphAreaCertificate cert =
        graph_area(m, frames, face_director_data_normal(m, frames));
    REQUIRE(rel_err(cert.area_graph, 8.0 * kPi) <= 0.01,
            "graph area " + fmt(cert.area_graph) + " vs " + fmt(8.0 * kPi));
    REQUIRE(cert.per_face_violations == 0, "per-face Jacobian bound violated");
    REQUIRE(cert.global_bound_ok, "global area bound violated on the reference sphere");

    int cells = 0;
    for (const auto& cell : recovery_sweep().cells) {
        REQUIRE(cell.ok, "sweep cell failed: " + cell.error);
        REQUIRE(cell.area_bound_ok, "area bound violated at level " +
                                        std::to_string(cell.level) + ", eps " + fmt(cell.eps));
        REQUIRE(cell.jac2_violations == 0,
                "Jacobian bound violated on " + std::to_string(cell.jac2_violations) +
                    " faces at level " + std::to_string(cell.level));
        ++cells;
    }
    detail = "graph area " + fmt(cert.area_graph) + " vs 8pi, bounds hold on " +
             std::to_string(cells) + "/12 cells";
    return true;
}

// 6. Recovery sweep: energy and tilt limits, pairing and defect decay orders.
bool criterion_recovery_sweep(std::string& detail) {
    const SweepFits& fits = recovery_sweep().fits;
    REQUIRE(recovery_sweep().failed_cells == 0, "sweep reported failed cells");
    REQUIRE(fits.total.valid, "total-energy limit fit did not converge");
    REQUIRE(fits.total_rel_err <= 0.02,
            "total limit misses bending + half |w|^2 by " + fmt(fits.total_rel_err));
    REQUIRE(fits.tilt.valid, "tilt limit fit did not converge");
    REQUIRE(fits.tilt_rel_err <= 0.02,
            "tilt limit misses half |w|^2 by " + fmt(fits.tilt_rel_err));
    REQUIRE(fits.pairing_order.valid, "pairing order fit invalid");
    REQUIRE(fits.pairing_order.order >= 0.9,
            "pairing decay order " + fmt(fits.pairing_order.order) + " below 0.9");
    REQUIRE(fits.defect_order.valid, "defect order fit invalid");
    REQUIRE(fits.defect_order.order >= 0.9,
            "defect decay order " + fmt(fits.defect_order.order) + " below 0.9");
    REQUIRE(fits.liminf_ok, "minimum sweep energy dropped below the fitted limit");
    detail = "total err " + fmt(fits.total_rel_err) + ", tilt err " + fmt(fits.tilt_rel_err) +
             ", pairing order " + fmt(fits.pairing_order.order) + ", defect order " +
             fmt(fits.defect_order.order);
    return true;
}

// 7. First-variation residual decay over the full test-function catalog.
bool criterion_first_variation(std::string& detail) {
    const auto& orders = refinement_sweep().first_variation_orders;
    REQUIRE(!orders.empty(), "no first-variation orders reported");
    double slowest = 1e9;
    int floored = 0;
    for (const auto& entry : orders) {
        if (entry.at_floor) {
            // cancelled exactly by mesh symmetry at every level: converged
            ++floored;
            continue;
        }
        REQUIRE(entry.fit.valid, entry.fn_id + ": order fit invalid");
        REQUIRE(entry.fit.order >= 0.8,
                entry.fn_id + ": fitted order " + fmt(entry.fit.order) + " below 0.8");
        slowest = std::min(slowest, entry.fit.order);
    }
    REQUIRE(floored < static_cast<int>(orders.size()),
            "every catalog entry degenerated to the rounding floor");
    detail = "slowest fitted order " + fmt(slowest) + ", " + std::to_string(floored) + "/" +
             std::to_string(orders.size()) + " entries at the rounding floor";
    return true;
}

// 8. The quadratic-form constant: stable, documented, and never consumed.
bool criterion_quadratic_constant(std::string& detail) {
    Rng rng(2024);
    double worst = 0.0;
    int samples = 0;
    while (samples < 10000) {
        const Vec3 y = rng.unit_vec3();
        const Mat3 p = Mat3::identity() - outer(y, y);
        const Mat3 gp = rng.mat3(-2.0, 2.0) * p;
        const Mat3 zeta = gp - (trace(gp) / 2.0) * p;
        if (graph_bend_form(zeta, y) == 0.0) continue;
        const QuadraticConsistency qc = quadratic_consistency(zeta, y);
        worst = std::max(worst, qc.residual);
        ++samples;
    }
    REQUIRE(worst <= 1e-9, "proportionality residual " + fmt(worst) + " above 1e-9");
    // the measured constant: u . A_y u = 12 * f_y(zeta)
    REQUIRE(quad_form_scale() == 12.0, "pinned constant is not 12");

    // independence: perturbing the constant must not move any energy output
    const TriMesh m = make_sphere(1.0, 3);
    const DirectorField field = tilted_director(m, tangential_axis_field(m, 0), 0.2);
    const EnergyBreakdown before = q_epsilon(m, field, 0.1);
    set_quad_form_scale(7.0);
    const EnergyBreakdown after = q_epsilon(m, field, 0.1);
    set_quad_form_scale(12.0);
    const bool unchanged = before.tilt == after.tilt && before.bending == after.bending &&
                           before.total == after.total && before.area == after.area &&
                           before.willmore_quarter == after.willmore_quarter &&
                           before.total_gauss == after.total_gauss;
    REQUIRE(unchanged, "EnergyBreakdown moved when the constant was perturbed");
    detail = "constant 12, max residual " + fmt(worst) + " over 10000 samples, energies inert";
    return true;
}

// 9. Byte-identical sweep artifacts across thread counts.
bool criterion_determinism(std::string& detail) {
    SweepConfig c;
    c.surface = "sphere";
    c.radius = 1.0;
    c.levels = {2, 3};
    c.eps = {0.2, 0.1, 0.05, 0.025};
    c.w_id = "e1";
    c.seed = 1;

    const auto out_root = std::filesystem::temp_directory_path() / "tiltbend_acceptance_det";
    std::filesystem::remove_all(out_root);
    const std::vector<std::string> files = {"cells.csv", "first_variation.csv", "report.json"};
    const std::vector<std::string> counts = {"1", "4", "8"};
    std::vector<std::vector<std::string>> contents;

    for (const std::string& threads : counts) {
        ::setenv("TILTBEND_THREADS", threads.c_str(), 1);
        const SweepReport report = run_sweep(c);
        const auto dir = out_root / threads;
        write_sweep_outputs(report, dir.string());
        std::vector<std::string> blobs;
        for (const auto& leaf : files) {
            std::ifstream in(dir / leaf, std::ios::binary);
            REQUIRE(in.good(), "missing sweep artifact " + leaf);
            std::stringstream buf;
            buf << in.rdbuf();
            blobs.push_back(buf.str());
        }
        contents.push_back(std::move(blobs));
    }
    ::unsetenv("TILTBEND_THREADS");

    for (std::size_t run = 1; run < contents.size(); ++run)
        for (std::size_t k = 0; k < files.size(); ++k)
            REQUIRE(contents[run][k] == contents[0][k],
                    files[k] + " differs between thread counts " + counts[0] + " and " +
                        counts[run]);
    std::filesystem::remove_all(out_root);
    detail = "3 artifacts byte-identical across thread counts 1, 4, 8";
    return true;
}

struct Criterion {
    const char* label;
    bool (*fn)(std::string&);
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"identity battery", criterion_identity_battery},
        {"sphere bending value", criterion_sphere_bending},
        {"Gauss-Bonnet", criterion_gauss_bonnet},
        {"torus Willmore value", criterion_torus_willmore},
        {"graph area bounds", criterion_graph_area},
        {"recovery sweep", criterion_recovery_sweep},
        {"first-variation decay", criterion_first_variation},
        {"quadratic-form constant", criterion_quadratic_constant},
        {"thread determinism", criterion_determinism},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].fn(detail);
        } catch (const std::exception& e) {
            std::cerr << "[FAIL] " << criteria[i].label << " threw: " << e.what() << "\n";
        }
        if (ok) {
            std::cout << "[PASS] criterion " << (i + 1) << ": " << criteria[i].label << " - "
                      << detail << "\n";
        } else {
            std::cout << "[FAIL] criterion " << (i + 1) << ": " << criteria[i].label << "\n";
            ++failed;
        }
    }
    if (failed != 0) {
        std::cout << failed << "/" << criteria.size() << " criteria failed\n";
        return 1;
    }
    std::cout << "all " << criteria.size() << " criteria passed\n";
    return 0;
}
