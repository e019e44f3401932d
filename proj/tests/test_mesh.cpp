#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <string>

#include "tiltbend/errors.hpp"
#include "tiltbend/mesh.hpp"

using namespace tiltbend;

namespace {

constexpr double kPi = std::numbers::pi;

std::string temp_path(const std::string& leaf) {
    return (std::filesystem::temp_directory_path() / leaf).string();
}

// Closed tetrahedron with outward counterclockwise faces.
TriMesh tetrahedron() {
    TriMesh m;
    m.vertices = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    m.faces = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
    return m;
}

}  // namespace

TEST_CASE("icosphere approximates sphere area, volume and Euler characteristic") {
    const TriMesh m = make_sphere(1.0, 4);
    CHECK(euler_characteristic(m) == 2);
    CHECK(m.faces.size() == 20u * (1u << 8));  // 20 * 4^4
    CHECK(total_area(m) == doctest::Approx(4.0 * kPi).epsilon(5e-3));
    CHECK(signed_volume(m) == doctest::Approx(4.0 * kPi / 3.0).epsilon(5e-3));
    // inscribed polyhedron: both measures approach from below
    CHECK(total_area(m) < 4.0 * kPi);
    CHECK(signed_volume(m) < 4.0 * kPi / 3.0);
}

TEST_CASE("torus grid approximates area and has Euler characteristic zero") {
    const double R = std::sqrt(2.0), r = 1.0;
    const TriMesh m = make_torus(R, r, 64, 64);
    CHECK(euler_characteristic(m) == 0);
    CHECK(total_area(m) == doctest::Approx(4.0 * kPi * kPi * R * r).epsilon(5e-3));
}

TEST_CASE("refine resamples the analytic surface exactly") {
    const TriMesh coarse = make_sphere(0.5, 2);
    const TriMesh fine = refine(coarse);
    CHECK(mesh_hash(fine) == mesh_hash(make_sphere(0.5, 3)));

    const TriMesh torus = make_torus(2.0, 0.5, 8, 8);
    CHECK(mesh_hash(refine(torus)) == mesh_hash(make_torus(2.0, 0.5, 16, 16)));

    TriMesh untagged = tetrahedron();
    CHECK_THROWS_AS(refine(untagged), MeshError);
}

TEST_CASE("validate accepts a closed tetrahedron and rejects structural defects") {
    TriMesh good = tetrahedron();
    CHECK_NOTHROW(validate(good));

    SUBCASE("face index out of range") {
        TriMesh m = tetrahedron();
        m.faces[0][1] = 17;
        CHECK_THROWS_AS(validate(m), MeshError);
    }
    SUBCASE("repeated vertex in a face") {
        TriMesh m = tetrahedron();
        m.faces[0] = {0, 0, 1};
        CHECK_THROWS_AS(validate(m), MeshError);
    }
    SUBCASE("one flipped face breaks directed-edge matching") {
        TriMesh m = tetrahedron();
        std::swap(m.faces[0][0], m.faces[0][1]);
        CHECK_THROWS_AS(validate(m), MeshError);
    }
    SUBCASE("globally inverted orientation gives negative volume") {
        TriMesh m = tetrahedron();
        for (auto& f : m.faces) std::swap(f[0], f[1]);
        CHECK_THROWS_AS(validate(m), MeshError);
        CHECK(signed_volume(m) < 0.0);
    }
    SUBCASE("missing face is a boundary only when closedness is required") {
        TriMesh m = tetrahedron();
        m.faces.pop_back();
        CHECK_THROWS_AS(validate(m, true), MeshError);
        CHECK_NOTHROW(validate(m, false));
    }
}

TEST_CASE("face frames are orthonormal and consistent with total area") {
    const TriMesh m = make_sphere(1.0, 2);
    const auto frames = face_frames(m);
    REQUIRE(frames.size() == m.faces.size());
    double area = 0.0;
    for (const auto& fr : frames) {
        CHECK(std::abs(norm(fr.t1) - 1.0) < 1e-12);
        CHECK(std::abs(norm(fr.t2) - 1.0) < 1e-12);
        CHECK(std::abs(norm(fr.nu) - 1.0) < 1e-12);
        CHECK(std::abs(dot(fr.t1, fr.t2)) < 1e-12);
        CHECK(std::abs(dot(fr.t1, fr.nu)) < 1e-12);
        // right handed: t2 = nu x t1
        CHECK(norm(fr.t2 - cross(fr.nu, fr.t1)) < 1e-12);
        // outward normal on a sphere points along the centroid
        CHECK(dot(fr.nu, fr.centroid) > 0.0);
        area += fr.area;
    }
    CHECK(area == doctest::Approx(total_area(m)).epsilon(1e-12));
}

TEST_CASE("vertex normals are unit and outward on the sphere") {
    const TriMesh m = make_sphere(1.0, 3);
    const auto normals = vertex_normals(m);
    REQUIRE(normals.size() == m.vertices.size());
    for (std::size_t v = 0; v < normals.size(); ++v) {
        CHECK(std::abs(norm(normals[v]) - 1.0) < 1e-12);
        // angle-weighted normal of a sphere mesh hugs the radial direction
        CHECK(dot(normals[v], normalized(m.vertices[v])) > 0.999);
    }
}

TEST_CASE("OFF round trip is bitwise and keeps the analytic tag") {
    const TriMesh m = make_sphere(1.25, 2);
    const std::string path = temp_path("tiltbend_test_sphere.off");
    save_off(m, path);
    const TriMesh back = load_off(path);

    REQUIRE(back.vertices.size() == m.vertices.size());
    REQUIRE(back.faces.size() == m.faces.size());
    for (std::size_t v = 0; v < m.vertices.size(); ++v)
        for (std::size_t i = 0; i < 3; ++i) CHECK(back.vertices[v][i] == m.vertices[v][i]);
    CHECK(back.faces == m.faces);
    CHECK(mesh_hash(back) == mesh_hash(m));
    // sidecar restored the tag, so exact resampling still works
    CHECK(back.tag.kind == AnalyticTag::Kind::sphere);
    CHECK_NOTHROW(refine(back));

    std::remove(path.c_str());
    std::remove((path + ".json").c_str());
}

TEST_CASE("load_off rejects malformed input") {
    const std::string path = temp_path("tiltbend_test_bad.off");
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        std::fputs("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n", f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(load_off(path), MeshError);
    CHECK_THROWS_AS(load_off("/nonexistent/nowhere.off"), ParseError);
    std::remove(path.c_str());
}

TEST_CASE("mesh hash is sensitive to geometry and connectivity") {
    const TriMesh m = make_sphere(1.0, 1);
    TriMesh moved = m;
    moved.vertices[0][0] += 1e-15;
    CHECK(mesh_hash(moved) != mesh_hash(m));

    TriMesh relabeled = m;
    std::swap(relabeled.faces[0], relabeled.faces[1]);
    CHECK(mesh_hash(relabeled) != mesh_hash(m));
}

TEST_CASE("generator argument validation") {
    CHECK_THROWS_AS(make_sphere(-1.0, 2), ParseError);
    CHECK_THROWS_AS(make_sphere(1.0, 12), ParseError);
    CHECK_THROWS_AS(make_torus(1.0, 2.0, 8, 8), ParseError);
    CHECK_THROWS_AS(make_torus(2.0, 1.0, 2, 8), ParseError);
}
