#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "tiltbend/director.hpp"
#include "tiltbend/energy.hpp"
#include "tiltbend/mesh.hpp"

using namespace tiltbend;

namespace {

constexpr double kPi = std::numbers::pi;

// Two coplanar triangles spanning the unit square in the z = 0 plane.
TriMesh flat_patch() {
    TriMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    m.faces = {{0, 1, 2}, {0, 2, 3}};
    return m;
}

// (1/2) integral |w|^2 with the same vertex-averaged face quadrature the tilt
// term uses; reference value for the tilt limit.
double half_w2(const TriMesh& mesh, const std::vector<Vec3>& w) {
    const auto frames = face_frames(mesh);
    double acc = 0.0;
    for (std::size_t f = 0; f < frames.size(); ++f) {
        double m = 0.0;
        for (int k = 0; k < 3; ++k)
            m += norm2(w[static_cast<std::size_t>(mesh.faces[f][static_cast<std::size_t>(k)])]);
        acc += frames[f].area * m / 3.0;
    }
    return 0.5 * acc;
}

}  // namespace

TEST_CASE("sphere limit energy hits the analytic value and is scale invariant") {
    const double analytic = 10.0 * kPi / 3.0;
    CHECK(q_zero(make_sphere(1.0, 4)) == doctest::Approx(analytic).epsilon(0.01));

    const double a = q_zero(make_sphere(0.5, 3));
    const double b = q_zero(make_sphere(1.0, 3));
    const double c = q_zero(make_sphere(2.0, 3));
    // same combinatorial mesh rescaled: the integral is scale free
    CHECK(rel_residual(a, b) < 1e-9);
    CHECK(rel_residual(b, c) < 1e-9);
}

TEST_CASE("torus curvature integrals: Willmore value and Gauss-Bonnet") {
    const TriMesh m = make_torus(std::sqrt(2.0), 1.0, 128, 128);
    const CurvatureIntegrals ci = curvature_integrals(m);
    CHECK(ci.willmore_quarter == doctest::Approx(2.0 * kPi * kPi).epsilon(0.02));
    CHECK(std::abs(ci.total_gauss) < 0.25);
}

TEST_CASE("sphere curvature integrals: Willmore value and Gauss-Bonnet") {
    const CurvatureIntegrals ci = curvature_integrals(make_sphere(1.0, 4));
    CHECK(ci.willmore_quarter == doctest::Approx(4.0 * kPi).epsilon(0.02));
    CHECK(ci.total_gauss == doctest::Approx(4.0 * kPi).epsilon(0.02));
}

TEST_CASE("bending energy routes agree to rounding") {
    const TriMesh m = make_sphere(1.0, 3);
    const auto frames = face_frames(m);
    const DirectorField field = tilted_director(m, tangential_axis_field(m, 0), 0.3);
    const auto data = face_director_data(m, frames, field);
    const double direct = bending_energy(frames, data);
    const double eigen = bending_energy_eigen(frames, data);
    CHECK(rel_residual(direct, eigen) < 1e-12);
}

TEST_CASE("tilt energy validates eps and vanishes in the untilted convention") {
    const TriMesh m = make_sphere(1.0, 2);
    const auto frames = face_frames(m);
    const auto data = face_director_data_normal(m, frames);
    CHECK_THROWS_AS(tilt_energy(frames, data, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(tilt_energy(frames, data, -0.1), std::invalid_argument);
    // exact convention: theta . nu = 1 bitwise, so the integrand is exactly 0
    CHECK(tilt_energy(frames, data, 0.05) == 0.0);
    CHECK(tilt_energy(frames, data, 0.2) == 0.0);
}

TEST_CASE("flat patch with a constant director carries zero energy") {
    const TriMesh m = flat_patch();
    const auto frames = face_frames(m);
    std::vector<Vec3> values(m.vertices.size(), Vec3{0.0, 0.0, 1.0});
    const DirectorField field = make_director_field(m, std::move(values));
    const auto data = face_director_data(m, frames, field);
    const EnergyBreakdown e = energy_breakdown(m, frames, data, 0.1);
    CHECK(e.tilt == 0.0);
    CHECK(e.bending == 0.0);
    CHECK(e.total == 0.0);
    CHECK(e.area == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("tilt term approaches half the squared perturbation norm") {
    const TriMesh m = make_sphere(1.0, 4);
    const auto w = tangential_axis_field(m, 0);
    const double reference = half_w2(m, w);
    // tangential projection of e1 on the unit sphere: analytic value 8 pi / 6
    CHECK(reference == doctest::Approx(8.0 * kPi / 6.0).epsilon(0.01));

    // both tilt scales sit inside the quadratic regime around the limit
    const double t1 = tilt_energy(m, tilted_director(m, w, 0.1), 0.1);
    const double t2 = tilt_energy(m, tilted_director(m, w, 0.05), 0.05);
    CHECK(t1 == doctest::Approx(reference).epsilon(0.02));
    CHECK(t2 == doctest::Approx(reference).epsilon(0.02));
}

TEST_CASE("energy breakdown composes its parts and matches the wrappers") {
    const TriMesh m = make_sphere(1.0, 3);
    const auto frames = face_frames(m);
    const auto w = tangential_axis_field(m, 0);
    const DirectorField field = tilted_director(m, w, 0.2);
    const auto data = face_director_data(m, frames, field);
    const double eps = 0.1;

    const EnergyBreakdown e = energy_breakdown(m, frames, data, eps);
    CHECK(e.total == e.tilt + e.bending);
    CHECK(e.tilt == tilt_energy(frames, data, eps));
    CHECK(e.bending == bending_energy(frames, data));
    CHECK(e.area == doctest::Approx(total_area(m)).epsilon(1e-12));
    // curvature fields describe the surface, not the tilted configuration
    const CurvatureIntegrals ci = curvature_integrals(m);
    CHECK(e.willmore_quarter == ci.willmore_quarter);
    CHECK(e.total_gauss == ci.total_gauss);

    const EnergyBreakdown w1 = q_epsilon(m, field, eps);
    CHECK(w1.tilt == e.tilt);
    CHECK(w1.bending == e.bending);
    CHECK(w1.total == e.total);
    CHECK(tilt_energy(m, field, eps) == e.tilt);
    CHECK(bending_energy(m, field) == e.bending);
    CHECK(q_zero(m) == limit_energy(m, frames));
}

TEST_CASE("limit energy equals the curvature-integral combination") {
    const TriMesh m = make_torus(std::sqrt(2.0), 1.0, 48, 48);
    const auto frames = face_frames(m);
    const CurvatureIntegrals ci = curvature_integrals(m);
    CHECK(rel_residual(limit_energy(m, frames), ci.willmore_quarter - ci.total_gauss / 6.0) <
          1e-12);
}

TEST_CASE("energy breakdown serializes with the fixed key set") {
    EnergyBreakdown e;
    e.tilt = 1.5;
    e.bending = 2.5;
    e.total = 4.0;
    e.area = 12.0;
    e.willmore_quarter = 13.0;
    e.total_gauss = 12.5;
    const nlohmann::json j = to_json(e);
    REQUIRE(j.is_object());
    CHECK(j.size() == 6);
    for (const char* key :
         {"tilt", "bending", "total", "area", "willmore_quarter", "total_gauss"})
        CHECK(j.contains(key));
    CHECK(j["tilt"].get<double>() == 1.5);
    CHECK(j["total"].get<double>() == 4.0);
}
