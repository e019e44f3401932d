#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tiltbend/energy.hpp"
#include "tiltbend/varifold.hpp"

namespace tiltbend {

/// Flat key=value sweep description. Unknown keys are rejected so configs
/// stay diff-able and hashable.
struct SweepConfig {
    std::string surface = "sphere";  // sphere | torus
    double radius = 1.0;             // sphere radius
    double major_radius = 1.41421356237309505;  // torus ring radius
    double minor_radius = 1.0;                  // torus tube radius
    std::vector<int> levels = {3, 4};
    std::vector<double> eps = {0.2, 0.1, 0.05, 0.025};
    std::string w_id = "e1";  // perturbation field id; "zero" selects the
                              // exact untilted convention per cell
    std::uint64_t seed = 1;
    double liminf_tol = -1.0;  // < 0: auto-scaled from the fitted limit
};

SweepConfig parse_sweep_config(const std::string& text);
SweepConfig load_sweep_config(const std::string& path);

/// Fixed-order serialization used for hashing and the report echo.
std::string canonical_config(const SweepConfig& config);
std::uint64_t config_hash(const SweepConfig& config);

/// One (level, eps) grid cell. Cells that throw record the message and stay
/// in the report; the sweep carries on.
struct SweepCell {
    int level = 0;
    double eps = 0.0;
    std::size_t faces = 0;
    std::uint64_t mesh_hash_value = 0;
    EnergyBreakdown energy;
    double graph_area = 0.0;
    int jac2_violations = 0;    // faces breaking the two-sided Jacobian bound
    bool area_bound_ok = false; // graph area vs surface area + 12 * bending
    double max_defect = 0.0;
    double defect_32_integral = 0.0;  // integral of defect^{3/2}
    double pair_phi_star = 0.0;       // positive pairing, g = 1
    double pair_phi_wedge = 0.0;      // euclidean norm over the form catalog
    double pair_ratio = 0.0;          // worst bound ratio over the catalog
    int excluded_faces = 0;
    bool ok = false;
    std::string error;
};

/// Least-squares slope of log(value) against log(scale); valid only when
/// every value is positive and at least two points survive.
struct OrderFit {
    double order = 0.0;
    double residual = 0.0;  // rms of the log-space fit residuals
    int points = 0;
    bool valid = false;
};

/// Polynomial-in-eps fit diagnostics; `limit` is the constant term.
struct LimitFit {
    double limit = 0.0;
    double slope = 0.0;      // eps coefficient (zero for the even fit)
    double curvature = 0.0;  // eps^2 coefficient
    double residual = 0.0;
    int points = 0;
    bool valid = false;
};

struct SweepFits {
    double half_w2 = 0.0;  // (1/2) integral |w|^2 on the finest level
    LimitFit tilt;         // tilt = a + c eps^2, finest level
    double tilt_rel_err = 0.0;
    LimitFit total;  // total = a + b eps + c eps^2, finest level
    double total_rel_err = 0.0;  // vs q0(finest) + half_w2
    std::vector<double> q0_by_level;
    LimitFit q0;          // q0 = a + b 4^-level
    double q0_analytic = 0.0;
    bool has_analytic = false;
    OrderFit q0_order;       // error vs analytic, coarsest level dropped
    OrderFit pairing_order;  // |pair_phi_wedge| vs eps, finest level
    OrderFit defect_order;   // max_defect vs eps, finest level
    OrderFit defect_integral_order;
    bool liminf_ok = false;  // min over eps of total >= q0 limit - tol
    double min_total = 0.0;
    double liminf_tol = 0.0;
};

struct FirstVariationOrder {
    std::string fn_id;
    OrderFit fit;
    // true when the residual sits at the rounding floor on every level
    // (symmetric meshes cancel several catalog entries exactly); such rows
    // are converged outright and carry no fittable order
    bool at_floor = false;
};

struct SweepReport {
    SweepConfig config;
    std::uint64_t config_hash_value = 0;
    std::vector<SweepCell> cells;  // level-major, eps-minor order
    // one row per (test function, level), from the finest eps-independent data
    struct FvRow {
        std::string fn_id;
        int level = 0;
        Vec3 residual;
        double max_component = 0.0;
    };
    std::vector<FvRow> first_variation;
    std::vector<FirstVariationOrder> first_variation_orders;
    SweepFits fits;
    int failed_cells = 0;

    nlohmann::json to_json() const;
};

SweepReport run_sweep(const SweepConfig& config);

/// Writes cells.csv, first_variation.csv, and report.json into out_dir
/// (created if missing).
void write_sweep_outputs(const SweepReport& report, const std::string& out_dir);

}  // namespace tiltbend
