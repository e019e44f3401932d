#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tiltbend/csv.hpp"
#include "tiltbend/director.hpp"
#include "tiltbend/energy.hpp"
#include "tiltbend/errors.hpp"
#include "tiltbend/gauss_graph.hpp"
#include "tiltbend/mesh.hpp"
#include "tiltbend/sweep.hpp"
#include "tiltbend/verify.hpp"

namespace {

// exit codes: 0 ok, 1 verification failure, 2 domain error (fold-over),
// 3 I/O or parse error
constexpr int kExitVerify = 1;
constexpr int kExitDomain = 2;
constexpr int kExitIo = 3;

int cmd_meshgen(const std::string& kind, double r, int level, double major, int nu, int nv,
                const std::string& out) {
    tiltbend::TriMesh mesh;
    if (kind == "sphere") {
        mesh = tiltbend::make_sphere(r, level);
    } else if (kind == "torus") {
        mesh = tiltbend::make_torus(major, r, nu, nv);
    } else {
        throw tiltbend::ParseError("meshgen: kind must be sphere or torus, got '" + kind + "'");
    }
    tiltbend::save_off(mesh, out);
    std::cout << "vertices " << mesh.vertices.size() << "\n"
              << "faces " << mesh.faces.size() << "\n"
              << "area " << tiltbend::fmt_g17(tiltbend::total_area(mesh)) << "\n"
              << "euler_characteristic " << tiltbend::euler_characteristic(mesh) << "\n"
              << "volume " << tiltbend::fmt_g17(tiltbend::signed_volume(mesh)) << "\n"
              << "wrote " << out << "\n";
    return 0;
}

int cmd_energy(const std::string& mesh_path, const std::string& director, const std::string& w_id,
               const std::vector<double>& eps_list, const std::string& director_file,
               bool allow_open, const std::string& graph_csv, const std::string& save_director_to) {
    const tiltbend::TriMesh mesh = tiltbend::load_off(mesh_path, !allow_open);
    const std::vector<tiltbend::FaceFrame> frames = tiltbend::face_frames(mesh);

    nlohmann::json results = nlohmann::json::array();
    for (double eps : eps_list) {
        tiltbend::DirectorField field;
        if (director == "normal") {
            field = tiltbend::normal_director(mesh);
        } else if (director == "tilted") {
            field = tiltbend::tilted_director(mesh, tiltbend::w_field_by_id(mesh, w_id), eps);
        } else if (director == "file") {
            if (director_file.empty())
                throw tiltbend::ParseError("energy: --file is required with --director file");
            field = tiltbend::make_director_field(
                mesh, tiltbend::load_director_values(director_file));
        } else {
            throw tiltbend::ParseError("energy: --director must be normal, tilted, or file");
        }
        if (!save_director_to.empty()) tiltbend::save_director(field, save_director_to);

        const std::vector<tiltbend::FaceDirectorData> data =
            tiltbend::face_director_data(mesh, frames, field);
        nlohmann::json entry = tiltbend::to_json(
            tiltbend::energy_breakdown(mesh, frames, data, eps));
        entry["eps"] = eps;
        results.push_back(std::move(entry));

        if (!graph_csv.empty() && eps == eps_list.front()) {
            std::ofstream os(graph_csv);
            if (!os) throw tiltbend::ParseError("cannot open for writing: " + graph_csv);
            tiltbend::CsvWriter w(os, tiltbend::csv_schema("graph_faces"));
            const auto table = tiltbend::graph_face_table(frames, data);
            for (std::size_t f = 0; f < table.size(); ++f)
                w.write_row({std::to_string(f), tiltbend::fmt_g17(table[f].jac),
                             tiltbend::fmt_g17(table[f].theta_dot_nu),
                             tiltbend::fmt_g17(table[f].f_y_value),
                             tiltbend::fmt_g17(table[f].defect)});
        }
    }
    if (results.size() == 1)
        std::cout << results.front().dump(2) << "\n";
    else
        std::cout << results.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir) {
    const tiltbend::SweepConfig config = tiltbend::load_sweep_config(config_path);
    const tiltbend::SweepReport report = tiltbend::run_sweep(config);
    tiltbend::write_sweep_outputs(report, out_dir);
    std::cout << "cells " << report.cells.size() << "\n"
              << "failed_cells " << report.failed_cells << "\n"
              << "wrote " << out_dir << "/cells.csv, first_variation.csv, report.json\n";
    return report.failed_cells == 0 ? 0 : kExitVerify;
}

int cmd_verify(std::uint64_t seed, int trials, bool as_json) {
    const tiltbend::VerifyReport report = tiltbend::run_verify(seed, trials);
    if (as_json)
        std::cout << report.to_json().dump(2) << "\n";
    else
        std::cout << report.to_text();
    return report.ok() ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"director-tilt bending energy toolkit"};
    app.require_subcommand(1);

    // meshgen
    auto* meshgen = app.add_subcommand("meshgen", "generate a closed test surface (OFF + sidecar)");
    std::string mg_kind;
    double mg_r = 1.0, mg_major = 1.41421356237309505;
    int mg_level = 3, mg_nu = 64, mg_nv = 64;
    std::string mg_out = "mesh.off";
    meshgen->add_option("kind", mg_kind, "sphere | torus")->required();
    meshgen->add_option("--r", mg_r, "sphere radius / torus tube radius");
    meshgen->add_option("--level", mg_level, "sphere subdivision level");
    meshgen->add_option("--R", mg_major, "torus ring radius");
    meshgen->add_option("--nu", mg_nu, "torus ring resolution");
    meshgen->add_option("--nv", mg_nv, "torus tube resolution");
    meshgen->add_option("--out", mg_out, "output OFF path");

    // energy
    auto* energy = app.add_subcommand("energy", "evaluate the tilt-bending functional on a mesh");
    std::string en_mesh, en_director = "normal", en_w = "e1", en_file, en_graph_csv, en_save;
    std::vector<double> en_eps = {1.0};
    bool en_allow_open = false;
    energy->add_option("--mesh", en_mesh, "input OFF path")->required();
    energy->add_option("--director", en_director, "normal | tilted | file");
    energy->add_option("--w", en_w, "perturbation field id for --director tilted");
    energy->add_option("--eps", en_eps, "tilt scale(s)")->expected(-1);
    energy->add_option("--file", en_file, "director JSON for --director file");
    energy->add_flag("--allow-open", en_allow_open, "skip the closed-surface requirement");
    energy->add_option("--graph-csv", en_graph_csv, "write the per-face graph table here");
    energy->add_option("--save-director", en_save, "write the evaluated director field here");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run an eps x level grid from a key=value config");
    std::string sw_config, sw_out = "sweep_out";
    sweep->add_option("--config", sw_config, "config path")->required();
    sweep->add_option("--out-dir", sw_out, "output directory");

    // verify
    auto* verify = app.add_subcommand("verify", "run the seeded identity battery");
    std::uint64_t vf_seed = 1;
    int vf_trials = 10000;
    bool vf_json = false;
    verify->add_option("--seed", vf_seed, "64-bit seed");
    verify->add_option("--trials", vf_trials, "trials per identity family");
    verify->add_flag("--json", vf_json, "emit the report as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (meshgen->parsed())
            return cmd_meshgen(mg_kind, mg_r, mg_level, mg_major, mg_nu, mg_nv, mg_out);
        if (energy->parsed())
            return cmd_energy(en_mesh, en_director, en_w, en_eps, en_file, en_allow_open,
                              en_graph_csv, en_save);
        if (sweep->parsed()) return cmd_sweep(sw_config, sw_out);
        if (verify->parsed()) return cmd_verify(vf_seed, vf_trials, vf_json);
    } catch (const tiltbend::FoldoverError& e) {
        std::cerr << "fold-over: " << e.what() << "\n";
        return kExitDomain;
    } catch (const tiltbend::VerifyError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerify;
    } catch (const tiltbend::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const tiltbend::MeshError& e) {
        std::cerr << "mesh error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
