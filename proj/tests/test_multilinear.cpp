#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "tiltbend/multilinear.hpp"
#include "tiltbend/rng.hpp"

using namespace tiltbend;

namespace {

// Shared fixture: the unit-curvature fixture at the north pole. Tangent frame
// (e1, e2), normal e3, shape operator diag(1, 1, 0), so the mixed stratum of
// the graph 2-vector is the rotation generator around e3.
const Vec3 kE1{1.0, 0.0, 0.0};
const Vec3 kE2{0.0, 1.0, 0.0};
const Vec3 kE3{0.0, 0.0, 1.0};

Mat3 north_pole_xi1() {
    Mat3 z;
    z(0, 1) = 1.0;
    z(1, 0) = -1.0;
    return z;
}

double dot6(const Vec6& a, const Vec6& b) { return dot(a.x, b.x) + dot(a.y, b.y); }

}  // namespace

TEST_CASE("wedge3 agrees with the Hodge dual of the cross product") {
    Rng rng(11);
    for (int t = 0; t < 64; ++t) {
        const Vec3 a = rng.vec3(-2.0, 2.0);
        const Vec3 b = rng.vec3(-2.0, 2.0);
        const Bivector3 w = wedge3(a, b);
        const Bivector3 h = hodge_star(cross(a, b));
        CHECK(norm(w - h) < 1e-14);
        // |a ^ b|^2 is the Gram determinant
        const double gram = norm2(a) * norm2(b) - dot(a, b) * dot(a, b);
        CHECK(norm2(w) == doctest::Approx(gram).epsilon(1e-12));
    }
}

TEST_CASE("hodge star round trips and matches the axis matrix") {
    const Vec3 v{0.3, -1.7, 2.2};
    const Vec3 back = hodge_unstar(hodge_star(v));
    CHECK(back[0] == v[0]);
    CHECK(back[1] == v[1]);
    CHECK(back[2] == v[2]);

    // B(y) x = x cross y for the axis matrix convention
    const Mat3 b = axis_matrix(v);
    const Vec3 x{1.1, 0.4, -0.9};
    const Vec3 lhs = b * x;
    const Vec3 rhs = cross(x, v);
    CHECK(norm(lhs - rhs) < 1e-14);
}

TEST_CASE("cofactor matrix satisfies A cof(A)^T = det(A) I") {
    Rng rng(5);
    for (int t = 0; t < 64; ++t) {
        const Mat3 a = rng.mat3(-2.0, 2.0);
        const Mat3 p = a * transpose(cofactor_matrix(a));
        const double d = det_cofactor_expansion(a);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(std::abs(p(i, j) - (i == j ? d : 0.0)) <
                      1e-12 * std::max(1.0, std::abs(d)));
        CHECK(trace_cofactor(a) == doctest::Approx(trace(cofactor_matrix(a))).epsilon(1e-12));
        CHECK(rel_residual(d, det_trace_formula(a)) < 1e-13);
    }
}

TEST_CASE("bending form anchors") {
    // Q(diag(1,1,0)) = 1/4 * 4 - 1/6 * 1 = 5/6
    CHECK(bending_form(Mat3::diag(1, 1, 0)) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    // Q(diag(2,3,0)) = 25/4 - 1 = 21/4
    CHECK(bending_form(Mat3::diag(2, 3, 0)) == doctest::Approx(21.0 / 4.0).epsilon(1e-15));
    CHECK(bending_form_eigen(1, 1) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    CHECK(bending_form_eigen(2, 3) == doctest::Approx(21.0 / 4.0).epsilon(1e-15));
    // minimal surface: eigenvalues cancel in the mean term
    CHECK(bending_form_eigen(1, -1) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(bending_form(Mat3::diag(1, -1, 0)) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("graph bending form reproduces the shape-operator value at the north pole") {
    const Mat3 z = north_pole_xi1();
    CHECK(axial_pairing(kE3, z) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(dot(kE3, cofactor_matrix(z) * kE3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(graph_bend_form(z, kE3) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    CHECK(graph_bend_form(z, kE3) ==
          doctest::Approx(bending_form(Mat3::diag(1, 1, 0))).epsilon(1e-15));
}

TEST_CASE("axial pairing equals the Frobenius pairing with the axis matrix") {
    Rng rng(23);
    for (int t = 0; t < 64; ++t) {
        const Vec3 y = rng.unit_vec3();
        const Mat3 m = rng.mat3(-3.0, 3.0);
        CHECK(rel_residual(axial_pairing(y, m), frobenius(axis_matrix(y), m)) < 1e-13);
    }
}

TEST_CASE("matrix identity residuals stay at rounding level on random input") {
    Rng rng(31);
    for (int t = 0; t < 128; ++t) {
        const Mat3 a = rng.mat3(-2.0, 2.0);
        const Vec3 y = rng.unit_vec3();
        const MatrixIdentityResiduals r = matrix_identity_residuals(a, y);
        CHECK(r.axis_product < 1e-12);
        CHECK(r.axis_split < 1e-12);
        CHECK(r.projected_trace < 1e-12);
        CHECK(r.projected_split < 1e-12);
        CHECK(r.rank_one_update < 1e-12);
        CHECK(r.trace_determinant < 1e-12);
    }
}

TEST_CASE("matrix identity residuals reject non-unit directors") {
    CHECK_THROWS_AS(matrix_identity_residuals(Mat3::identity(), Vec3{0.0, 0.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("wedge6 strata at the north pole match their closed forms") {
    const Vec6 a{kE1, kE1};  // (tau1, L tau1) with L = diag(1,1,0)
    const Vec6 b{kE2, kE2};
    const TwoVector6 xi = wedge6(a, b);

    // position stratum is *nu
    const Bivector3 star_nu = hodge_star(kE3);
    CHECK(norm(xi.part0 - star_nu) < 1e-15);
    // mixed stratum is tau1 (L tau2)^T - tau2 (L tau1)^T
    const Mat3 expected1 = north_pole_xi1();
    CHECK(max_abs(xi.part1 - expected1) < 1e-15);
    // fiber stratum is lam1 lam2 (theta . nu) * theta
    const Bivector3 expected2 = hodge_star(kE3);
    CHECK(norm(xi.part2 - expected2) < 1e-15);
    // Jacobian: jac^2 = 1 + |xi1|^2 + |xi2|^2 = 4
    CHECK(norm2(xi) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("wedge6 norm equals the 6-dimensional Gram determinant") {
    Rng rng(47);
    for (int t = 0; t < 64; ++t) {
        const Vec6 a{rng.vec3(-2.0, 2.0), rng.vec3(-2.0, 2.0)};
        const Vec6 b{rng.vec3(-2.0, 2.0), rng.vec3(-2.0, 2.0)};
        const double gram = dot6(a, a) * dot6(b, b) - dot6(a, b) * dot6(a, b);
        CHECK(rel_residual(norm2(wedge6(a, b)), gram) < 1e-12);
    }
}

TEST_CASE("stratify and flatten are mutually inverse") {
    Rng rng(59);
    Raw15 raw;
    for (auto& v : raw) v = rng.uniform(-2.0, 2.0);
    const Raw15 back = flatten(stratify(raw));
    for (std::size_t i = 0; i < raw.size(); ++i) CHECK(back[i] == raw[i]);

    const Vec6 a{rng.vec3(-1.0, 1.0), rng.vec3(-1.0, 1.0)};
    const Vec6 b{rng.vec3(-1.0, 1.0), rng.vec3(-1.0, 1.0)};
    const TwoVector6 xi = wedge6(a, b);
    const TwoVector6 rt = stratify(flatten(xi));
    CHECK(norm(rt.part0 - xi.part0) == 0.0);
    CHECK(max_abs(rt.part1 - xi.part1) == 0.0);
    CHECK(norm(rt.part2 - xi.part2) == 0.0);
}
