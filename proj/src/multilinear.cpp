#include "tiltbend/multilinear.hpp"

#include <cmath>
#include <stdexcept>

namespace tiltbend {

TwoVector6 wedge6(const Vec6& a, const Vec6& b) {
    TwoVector6 r;
    r.part0 = wedge3(a.x, b.x);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r.part1(i, j) = a.x[i] * b.y[j] - b.x[i] * a.y[j];
    r.part2 = wedge3(a.y, b.y);
    return r;
}

TwoVector6 stratify(const Raw15& raw) {
    // index map for pairs (i,j), i<j over (e1,e2,e3,f1,f2,f3):
    //  0:(0,1) 1:(0,2) 2:(0,3) 3:(0,4) 4:(0,5)
    //  5:(1,2) 6:(1,3) 7:(1,4) 8:(1,5)
    //  9:(2,3) 10:(2,4) 11:(2,5)
    // 12:(3,4) 13:(3,5) 14:(4,5)
    TwoVector6 w;
    w.part0 = {raw[0], raw[1], raw[5]};
    w.part1(0, 0) = raw[2];
    w.part1(0, 1) = raw[3];
    w.part1(0, 2) = raw[4];
    w.part1(1, 0) = raw[6];
    w.part1(1, 1) = raw[7];
    w.part1(1, 2) = raw[8];
    w.part1(2, 0) = raw[9];
    w.part1(2, 1) = raw[10];
    w.part1(2, 2) = raw[11];
    w.part2 = {raw[12], raw[13], raw[14]};
    return w;
}

Raw15 flatten(const TwoVector6& w) {
    Raw15 raw{};
    raw[0] = w.part0.c12;
    raw[1] = w.part0.c13;
    raw[5] = w.part0.c23;
    raw[2] = w.part1(0, 0);
    raw[3] = w.part1(0, 1);
    raw[4] = w.part1(0, 2);
    raw[6] = w.part1(1, 0);
    raw[7] = w.part1(1, 1);
    raw[8] = w.part1(1, 2);
    raw[9] = w.part1(2, 0);
    raw[10] = w.part1(2, 1);
    raw[11] = w.part1(2, 2);
    raw[12] = w.part2.c12;
    raw[13] = w.part2.c13;
    raw[14] = w.part2.c23;
    return raw;
}

MatrixIdentityResiduals matrix_identity_residuals(const Mat3& a, const Vec3& y) {
    if (std::abs(norm(y) - 1.0) > 1e-12)
        throw std::invalid_argument("matrix_identity_residuals: axis vector is not unit length");

    const Mat3 b = axis_matrix(y);
    const auto quad = [&](const Mat3& m) { return dot(y, cofactor_matrix(m) * y); };

    MatrixIdentityResiduals r{};

    const double lhs = quad(a);
    r.axis_product = rel_residual(lhs, trace_cofactor(b * a));

    double split = 0.0;
    for (std::size_t k = 0; k < 3; ++k)
        split += trace_cofactor(b * (y[k] * a + outer(a.col(k), y)));
    r.axis_split = rel_residual(lhs, split);

    const Mat3 p = Mat3::identity() - outer(y, y);
    const Mat3 ap = p * a * p;  // now ap y = ap^T y = 0
    const double lhs_p = quad(ap);
    r.projected_trace = rel_residual(lhs_p, trace_cofactor(ap));

    double psplit = 0.0;
    for (std::size_t k = 0; k < 3; ++k)
        psplit += trace_cofactor(-1.0 * (y[k] * ap + outer(ap.col(k), y)));
    r.projected_split = rel_residual(lhs_p, psplit);

    r.rank_one_update =
        rel_residual(det_cofactor_expansion(a + outer(y, y)), det_cofactor_expansion(a) + quad(a));

    r.trace_determinant = rel_residual(det_cofactor_expansion(a), det_trace_formula(a));

    return r;
}

}  // namespace tiltbend
