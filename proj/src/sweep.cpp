#include "tiltbend/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "tiltbend/csv.hpp"
#include "tiltbend/director.hpp"
#include "tiltbend/errors.hpp"
#include "tiltbend/gauss_graph.hpp"
#include "tiltbend/mesh.hpp"
#include "tiltbend/multilinear.hpp"
#include "tiltbend/polynomial.hpp"
#include "tiltbend/reduce.hpp"

namespace tiltbend {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("sweep config: bad numeric value for '" + key + "': " + s);
    }
}

int parse_int(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("sweep config: bad integer value for '" + key + "': " + s);
    }
}

void validate_config(const SweepConfig& c) {
    if (c.surface != "sphere" && c.surface != "torus")
        throw ParseError("sweep config: surface must be sphere or torus, got '" + c.surface + "'");
    if (!(c.radius > 0.0)) throw ParseError("sweep config: radius must be positive");
    if (!(c.minor_radius > 0.0) || !(c.major_radius > c.minor_radius))
        throw ParseError("sweep config: torus needs major_radius > minor_radius > 0");
    if (c.levels.empty()) throw ParseError("sweep config: levels list is empty");
    for (int l : c.levels)
        if (l < 0 || l > 9)
            throw ParseError("sweep config: level " + std::to_string(l) + " out of range 0..9");
    if (c.eps.empty()) throw ParseError("sweep config: eps list is empty");
    for (double e : c.eps)
        if (!(e > 0.0)) throw ParseError("sweep config: eps values must be positive");
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

/// Least-squares slope/intercept of y against x; returns rms residual.
struct LineFit {
    double slope = 0.0, intercept = 0.0, rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / static_cast<double>(n));
    return f;
}

/// log-log order fit of value against scale: value ~ C * scale^order.
OrderFit fit_order(const std::vector<double>& scales, const std::vector<double>& values) {
    OrderFit fit;
    if (scales.size() != values.size() || scales.size() < 2) return fit;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0) || !(values[i] > 0.0)) return fit;
        lx.push_back(std::log(scales[i]));
        ly.push_back(std::log(values[i]));
    }
    const LineFit line = fit_line(lx, ly);
    fit.order = line.slope;
    fit.residual = line.rms;
    fit.points = static_cast<int>(scales.size());
    fit.valid = true;
    return fit;
}

/// Fit values = a + c * scale^2 (two normal equations).
LimitFit fit_even_quadratic(const std::vector<double>& scales, const std::vector<double>& values) {
    LimitFit fit;
    const std::size_t n = scales.size();
    if (n < 2 || values.size() != n) return fit;
    double s0 = static_cast<double>(n), s2 = 0.0, s4 = 0.0, b0 = 0.0, b2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double q = scales[i] * scales[i];
        s2 += q;
        s4 += q * q;
        b0 += values[i];
        b2 += q * values[i];
    }
    const double det = s0 * s4 - s2 * s2;
    if (std::abs(det) < 1e-14 * std::max(1.0, s0 * s4)) return fit;
    fit.limit = (b0 * s4 - b2 * s2) / det;
    fit.curvature = (s0 * b2 - s2 * b0) / det;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double q = scales[i] * scales[i];
        const double r = values[i] - (fit.limit + fit.curvature * q);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(n));
    fit.points = static_cast<int>(n);
    fit.valid = true;
    return fit;
}

/// Fit values = a + b * scale + c * scale^2 via the 3x3 normal equations.
LimitFit fit_quadratic(const std::vector<double>& scales, const std::vector<double>& values) {
    LimitFit fit;
    const std::size_t n = scales.size();
    if (n < 3 || values.size() != n) return fit;
    double m[3][3] = {};
    double rhs[3] = {};
    for (std::size_t i = 0; i < n; ++i) {
        const double p[3] = {1.0, scales[i], scales[i] * scales[i]};
        for (int r = 0; r < 3; ++r) {
            rhs[r] += p[r] * values[i];
            for (int c = 0; c < 3; ++c) m[r][c] += p[r] * p[c];
        }
    }
    const Mat3 a = Mat3::from_rows({m[0][0], m[0][1], m[0][2]}, {m[1][0], m[1][1], m[1][2]},
                                   {m[2][0], m[2][1], m[2][2]});
    const double det = det_cofactor_expansion(a);
    if (std::abs(det) < 1e-14 * std::max(1.0, max_abs(a))) return fit;
    // cof(A)^T / det applied to the right-hand side
    const Mat3 inv = (1.0 / det) * transpose(cofactor_matrix(a));
    const Vec3 sol = inv * Vec3{rhs[0], rhs[1], rhs[2]};
    fit.limit = sol[0];
    fit.slope = sol[1];
    fit.curvature = sol[2];
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r =
            values[i] - (sol[0] + sol[1] * scales[i] + sol[2] * scales[i] * scales[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(n));
    fit.points = static_cast<int>(n);
    fit.valid = true;
    return fit;
}

double rel_error_vs(double value, double oracle) {
    const double denom = std::abs(oracle);
    return denom > 1e-12 ? std::abs(value - oracle) / denom : std::abs(value - oracle);
}

struct LevelData {
    TriMesh mesh;
    std::vector<FaceFrame> frames;
    std::vector<Vec3> w;
    double q0 = 0.0;
    std::uint64_t hash = 0;
};

TriMesh build_surface(const SweepConfig& c, int level) {
    if (c.surface == "sphere") return make_sphere(c.radius, level);
    const int grid = 1 << level;  // torus level doubles both grid resolutions
    return make_torus(c.major_radius, c.minor_radius, grid, grid);
}

double analytic_q0(const SweepConfig& c) {
    constexpr double pi = 3.14159265358979323846;
    if (c.surface == "sphere") return 10.0 * pi / 3.0;  // scale invariant
    const double t = c.major_radius / c.minor_radius;
    // Willmore integral of a ring torus plus a vanishing total Gauss term
    return pi * pi * t * t / std::sqrt(t * t - 1.0);
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& text) {
    SweepConfig c;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("sweep config line " + std::to_string(lineno) +
                             ": expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "surface") {
            c.surface = value;
        } else if (key == "radius") {
            c.radius = parse_double(key, value);
        } else if (key == "major_radius") {
            c.major_radius = parse_double(key, value);
        } else if (key == "minor_radius") {
            c.minor_radius = parse_double(key, value);
        } else if (key == "levels") {
            c.levels.clear();
            for (const auto& item : split_list(value)) c.levels.push_back(parse_int(key, item));
        } else if (key == "eps") {
            c.eps.clear();
            for (const auto& item : split_list(value)) c.eps.push_back(parse_double(key, item));
        } else if (key == "w") {
            c.w_id = value;
        } else if (key == "seed") {
            try {
                c.seed = std::stoull(value);
            } catch (const std::exception&) {
                throw ParseError("sweep config: bad seed '" + value + "'");
            }
        } else if (key == "liminf_tol") {
            c.liminf_tol = parse_double(key, value);
        } else {
            throw ParseError("sweep config line " + std::to_string(lineno) + ": unknown key '" +
                             key + "'");
        }
    }
    validate_config(c);
    return c;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open sweep config: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_sweep_config(buf.str());
}

std::string canonical_config(const SweepConfig& c) {
    std::string s;
    s += "surface=" + c.surface + "\n";
    s += "radius=" + fmt_g17(c.radius) + "\n";
    s += "major_radius=" + fmt_g17(c.major_radius) + "\n";
    s += "minor_radius=" + fmt_g17(c.minor_radius) + "\n";
    s += "levels=";
    for (std::size_t i = 0; i < c.levels.size(); ++i)
        s += (i ? "," : "") + std::to_string(c.levels[i]);
    s += "\neps=";
    for (std::size_t i = 0; i < c.eps.size(); ++i) s += (i ? "," : "") + fmt_g17(c.eps[i]);
    s += "\nw=" + c.w_id + "\n";
    s += "seed=" + std::to_string(c.seed) + "\n";
    s += "liminf_tol=" + fmt_g17(c.liminf_tol) + "\n";
    return s;
}

std::uint64_t config_hash(const SweepConfig& c) { return fnv1a64(canonical_config(c)); }

SweepReport run_sweep(const SweepConfig& config) {
    validate_config(config);
    SweepReport report;
    report.config = config;
    report.config_hash_value = config_hash(config);

    // per-level data is shared read-only by all cells of that level
    std::vector<LevelData> levels(config.levels.size());
    for (std::size_t li = 0; li < config.levels.size(); ++li) {
        LevelData& ld = levels[li];
        ld.mesh = build_surface(config, config.levels[li]);
        ld.frames = face_frames(ld.mesh);
        ld.q0 = limit_energy(ld.mesh, ld.frames);
        ld.w = w_field_by_id(ld.mesh, config.w_id);
        ld.hash = mesh_hash(ld.mesh);
    }

    const std::size_t neps = config.eps.size();
    report.cells.assign(config.levels.size() * neps, SweepCell{});
    parallel_for(report.cells.size(), 0, [&](std::size_t idx) {
        const std::size_t li = idx / neps, ei = idx % neps;
        const LevelData& ld = levels[li];
        SweepCell& cell = report.cells[idx];
        cell.level = config.levels[li];
        cell.eps = config.eps[ei];
        cell.faces = ld.mesh.faces.size();
        cell.mesh_hash_value = ld.hash;
        try {
            // the zero field selects the exact untilted convention so the
            // tilt term vanishes identically instead of at rounding level
            const std::vector<FaceDirectorData> data =
                config.w_id == "zero"
                    ? face_director_data_normal(ld.mesh, ld.frames)
                    : face_director_data(ld.mesh, ld.frames,
                                         tilted_director(ld.mesh, ld.w, cell.eps));
            cell.energy = energy_breakdown(ld.mesh, ld.frames, data, cell.eps);

            const GraphAreaCertificate cert = graph_area(ld.mesh, ld.frames, data);
            cell.graph_area = cert.area_graph;
            cell.jac2_violations = cert.per_face_violations;
            cell.area_bound_ok = cert.global_bound_ok;

            const std::vector<GraphFaceData> table = graph_face_table(ld.frames, data);
            std::vector<double> terms(table.size());
            for (std::size_t f = 0; f < table.size(); ++f) {
                cell.max_defect = std::max(cell.max_defect, table[f].defect);
                terms[f] = std::pow(table[f].defect, 1.5) * ld.frames[f].area;
            }
            cell.defect_32_integral = pairwise_sum(terms);

            const GraphEnergyResult ge = graph_energy(ld.mesh, ld.frames, data);
            cell.excluded_faces = ge.excluded_low_tilt + ge.excluded_vertical;

            const Poly g_one = Poly::constant(1.0);
            double wedge_sq = 0.0;
            for (const auto& nf : test_form_catalog()) {
                const PairingResult pr =
                    current_pairings(ld.mesh, ld.frames, data, g_one, nf.form);
                cell.pair_phi_star = pr.pair_phi_star;  // identical across forms
                wedge_sq += pr.pair_phi_wedge * pr.pair_phi_wedge;
                cell.pair_ratio = std::max(cell.pair_ratio, pr.ratio);
            }
            cell.pair_phi_wedge = std::sqrt(wedge_sq);
            cell.ok = true;
        } catch (const std::exception& e) {
            cell.ok = false;
            cell.error = e.what();
        }
    });
    for (const auto& cell : report.cells)
        if (!cell.ok) ++report.failed_cells;

    // first-variation residuals are eps independent; one table per level
    for (std::size_t li = 0; li < config.levels.size(); ++li) {
        for (const FirstVariationRow& row : first_variation_residual(levels[li].mesh,
                                                                     levels[li].frames)) {
            report.first_variation.push_back(
                {row.fn_id, config.levels[li], row.residual, row.max_component});
        }
    }

    // ---- fits ----------------------------------------------------------
    SweepFits& fits = report.fits;
    const int finest = *std::max_element(config.levels.begin(), config.levels.end());
    std::size_t finest_index = 0;
    for (std::size_t li = 0; li < config.levels.size(); ++li)
        if (config.levels[li] == finest) finest_index = li;

    {  // (1/2) integral |w|^2, one-point-per-vertex face average
        const LevelData& ld = levels[finest_index];
        std::vector<double> terms(ld.mesh.faces.size());
        for (std::size_t f = 0; f < terms.size(); ++f) {
            const auto& tri = ld.mesh.faces[f];
            double s = 0.0;
            for (int k = 0; k < 3; ++k) {
                const Vec3& wv = ld.w[static_cast<std::size_t>(tri[static_cast<std::size_t>(k)])];
                s += dot(wv, wv);
            }
            terms[f] = ld.frames[f].area * s / 3.0;
        }
        fits.half_w2 = 0.5 * pairwise_sum(terms);
    }

    std::vector<double> eps_pts, tilt_pts, total_pts, pair_pts, defect_pts, defect_int_pts;
    bool finest_ok = true;
    for (std::size_t ei = 0; ei < neps; ++ei) {
        const SweepCell& cell = report.cells[finest_index * neps + ei];
        if (!cell.ok) {
            finest_ok = false;
            continue;
        }
        eps_pts.push_back(cell.eps);
        tilt_pts.push_back(cell.energy.tilt);
        total_pts.push_back(cell.energy.total);
        pair_pts.push_back(cell.pair_phi_wedge);
        defect_pts.push_back(cell.max_defect);
        defect_int_pts.push_back(cell.defect_32_integral);
    }
    if (finest_ok) {
        fits.tilt = fit_even_quadratic(eps_pts, tilt_pts);
        fits.total = fit_quadratic(eps_pts, total_pts);
        fits.pairing_order = fit_order(eps_pts, pair_pts);
        fits.defect_order = fit_order(eps_pts, defect_pts);
        fits.defect_integral_order = fit_order(eps_pts, defect_int_pts);
    }
    if (fits.tilt.valid) fits.tilt_rel_err = rel_error_vs(fits.tilt.limit, fits.half_w2);

    for (std::size_t li = 0; li < config.levels.size(); ++li)
        fits.q0_by_level.push_back(levels[li].q0);
    {
        // limit fit q0 = a + b 4^-level; coarsest level dropped when enough
        // points remain (pre-asymptotic pollution)
        std::vector<int> order_idx(config.levels.size());
        for (std::size_t i = 0; i < order_idx.size(); ++i) order_idx[i] = static_cast<int>(i);
        std::sort(order_idx.begin(), order_idx.end(),
                  [&](int a, int b) { return config.levels[static_cast<std::size_t>(a)] <
                                             config.levels[static_cast<std::size_t>(b)]; });
        const std::size_t skip = order_idx.size() >= 3 ? 1 : 0;
        std::vector<double> xs, ys, hs, errs;
        fits.q0_analytic = analytic_q0(config);
        fits.has_analytic = true;
        for (std::size_t k = skip; k < order_idx.size(); ++k) {
            const std::size_t li = static_cast<std::size_t>(order_idx[k]);
            const int level = config.levels[li];
            xs.push_back(std::pow(4.0, -level));
            ys.push_back(levels[li].q0);
            hs.push_back(std::pow(2.0, -level));
            errs.push_back(std::abs(levels[li].q0 - fits.q0_analytic));
        }
        if (xs.size() >= 2) {
            const LineFit line = fit_line(xs, ys);
            fits.q0.limit = line.intercept;
            fits.q0.slope = 0.0;
            fits.q0.curvature = line.slope;
            fits.q0.residual = line.rms;
            fits.q0.points = static_cast<int>(xs.size());
            fits.q0.valid = true;
        }
        fits.q0_order = fit_order(hs, errs);
    }

    const double q0_reference = fits.q0.valid ? fits.q0.limit : levels[finest_index].q0;
    if (fits.total.valid)
        fits.total_rel_err = rel_error_vs(fits.total.limit, q0_reference + fits.half_w2);

    fits.liminf_tol =
        config.liminf_tol >= 0.0 ? config.liminf_tol : 0.02 * (1.0 + std::abs(q0_reference));
    if (!total_pts.empty()) {
        fits.min_total = *std::min_element(total_pts.begin(), total_pts.end());
        fits.liminf_ok = fits.min_total >= q0_reference - fits.liminf_tol;
    }

    // per-test-function refinement orders, coarsest level dropped
    {
        std::vector<int> sorted_levels = config.levels;
        std::sort(sorted_levels.begin(), sorted_levels.end());
        const std::size_t skip = sorted_levels.size() >= 3 ? 1 : 0;
        constexpr double kFloor = 1e-12;
        for (const auto& fn : test_function_catalog()) {
            std::vector<double> hs, es;
            bool at_floor = true;
            for (const auto& row : report.first_variation) {
                if (row.fn_id != fn.id) continue;
                at_floor = at_floor && row.max_component <= kFloor;
            }
            for (std::size_t k = skip; k < sorted_levels.size(); ++k) {
                for (const auto& row : report.first_variation) {
                    if (row.fn_id != fn.id || row.level != sorted_levels[k]) continue;
                    hs.push_back(std::pow(2.0, -row.level));
                    es.push_back(row.max_component);
                }
            }
            report.first_variation_orders.push_back({fn.id, fit_order(hs, es), at_floor});
        }
    }
    return report;
}

namespace {

nlohmann::json fit_json(const OrderFit& f) {
    return {{"order", f.order}, {"residual", f.residual}, {"points", f.points}, {"valid", f.valid}};
}

nlohmann::json fit_json(const LimitFit& f) {
    return {{"limit", f.limit},       {"slope", f.slope},   {"curvature", f.curvature},
            {"residual", f.residual}, {"points", f.points}, {"valid", f.valid}};
}

}  // namespace

nlohmann::json SweepReport::to_json() const {
    nlohmann::json cells_json = nlohmann::json::array();
    for (const auto& c : cells) {
        nlohmann::json jc{{"level", c.level},
                          {"eps", c.eps},
                          {"faces", c.faces},
                          {"mesh_hash", c.mesh_hash_value},
                          {"ok", c.ok},
                          {"graph_area", c.graph_area},
                          {"jac2_violations", c.jac2_violations},
                          {"area_bound_ok", c.area_bound_ok},
                          {"max_defect", c.max_defect},
                          {"defect_32_integral", c.defect_32_integral},
                          {"pair_phi_star", c.pair_phi_star},
                          {"pair_phi_wedge", c.pair_phi_wedge},
                          {"pair_ratio", c.pair_ratio},
                          {"excluded_faces", c.excluded_faces}};
        jc["energy"] = tiltbend::to_json(c.energy);
        if (!c.ok) jc["error"] = c.error;
        cells_json.push_back(std::move(jc));
    }

    nlohmann::json fv = nlohmann::json::array();
    for (const auto& row : first_variation)
        fv.push_back({{"fn_id", row.fn_id},
                      {"level", row.level},
                      {"residual", {row.residual[0], row.residual[1], row.residual[2]}},
                      {"max_component", row.max_component}});

    nlohmann::json fv_orders = nlohmann::json::array();
    for (const auto& o : first_variation_orders)
        fv_orders.push_back(
            {{"fn_id", o.fn_id}, {"fit", fit_json(o.fit)}, {"at_floor", o.at_floor}});

    nlohmann::json jfits{{"half_w2", fits.half_w2},
                         {"tilt", fit_json(fits.tilt)},
                         {"tilt_rel_err", fits.tilt_rel_err},
                         {"total", fit_json(fits.total)},
                         {"total_rel_err", fits.total_rel_err},
                         {"q0_by_level", fits.q0_by_level},
                         {"q0", fit_json(fits.q0)},
                         {"q0_analytic", fits.q0_analytic},
                         {"has_analytic", fits.has_analytic},
                         {"q0_order", fit_json(fits.q0_order)},
                         {"pairing_order", fit_json(fits.pairing_order)},
                         {"defect_order", fit_json(fits.defect_order)},
                         {"defect_integral_order", fit_json(fits.defect_integral_order)},
                         {"liminf_ok", fits.liminf_ok},
                         {"min_total", fits.min_total},
                         {"liminf_tol", fits.liminf_tol}};

    return nlohmann::json{{"config", canonical_config(config)},
                          {"config_hash", config_hash_value},
                          {"seed", config.seed},
                          {"cells", std::move(cells_json)},
                          {"first_variation", std::move(fv)},
                          {"first_variation_orders", std::move(fv_orders)},
                          {"fits", std::move(jfits)},
                          {"failed_cells", failed_cells}};
}

void write_sweep_outputs(const SweepReport& report, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    {
        std::ofstream os(dir / "cells.csv");
        if (!os) throw ParseError("cannot open for writing: " + (dir / "cells.csv").string());
        CsvWriter w(os, csv_schema("sweep_cells"));
        for (const auto& c : report.cells) {
            if (!c.ok) continue;  // failures are carried by report.json
            w.write_row({std::to_string(c.level), fmt_g17(c.eps), std::to_string(c.faces),
                         fmt_g17(c.energy.tilt), fmt_g17(c.energy.bending),
                         fmt_g17(c.energy.total), fmt_g17(c.energy.area),
                         fmt_g17(c.energy.willmore_quarter), fmt_g17(c.energy.total_gauss),
                         fmt_g17(c.graph_area), fmt_g17(c.max_defect),
                         fmt_g17(c.defect_32_integral), fmt_g17(c.pair_phi_star),
                         fmt_g17(c.pair_phi_wedge), fmt_g17(c.pair_ratio),
                         std::to_string(c.excluded_faces), std::to_string(report.config.seed),
                         std::to_string(c.mesh_hash_value),
                         std::to_string(report.config_hash_value)});
        }
    }
    {
        std::ofstream os(dir / "first_variation.csv");
        if (!os)
            throw ParseError("cannot open for writing: " + (dir / "first_variation.csv").string());
        CsvWriter w(os, csv_schema("first_variation"));
        for (const auto& row : report.first_variation)
            w.write_row({row.fn_id, std::to_string(row.level), fmt_g17(row.residual[0]),
                         fmt_g17(row.residual[1]), fmt_g17(row.residual[2]),
                         fmt_g17(row.max_component)});
    }
    {
        std::ofstream os(dir / "report.json");
        if (!os) throw ParseError("cannot open for writing: " + (dir / "report.json").string());
        os << report.to_json().dump(2) << "\n";
    }
}

}  // namespace tiltbend
