#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "tiltbend/geom3.hpp"
#include "tiltbend/multilinear.hpp"

namespace tiltbend {

/// Polynomials in the 15 ambient coordinates shared by the pairing and
/// first-variation tests: position x in R^3, director y in R^3, and a matrix
/// slot S in R^{3x3} (row-major). Variable indices:
///   0..2   x1,x2,x3
///   3..5   y1,y2,y3
///   6..14  S11,S12,S13,S21,...,S33
class Poly {
  public:
    static constexpr int kVars = 15;
    using Key = std::array<int, kVars>;

    Poly() = default;
    static Poly constant(double c);
    static Poly var(int index);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(double c) const;

    Poly derivative(int index) const;

    double eval(const Vec3& x, const Vec3& y, const Mat3& s) const;

    const std::map<Key, double>& terms() const { return terms_; }

  private:
    // term map keeps a canonical ordering, so arithmetic is deterministic
    std::map<Key, double> terms_;
    void add_term(const Key& k, double c);
};

constexpr int var_x(int i) { return i; }
constexpr int var_y(int i) { return 3 + i; }
constexpr int var_s(int i, int j) { return 6 + 3 * i + j; }

/// One-form on R^6 = R^3_x times R^3_y with polynomial coefficients
/// (w1 dx1 + w2 dx2 + w3 dx3 + w4 dy1 + w5 dy2 + w6 dy3).
struct Form1R6 {
    std::array<Poly, 6> coeff;

    Vec6 eval(const Vec3& x, const Vec3& y) const;
};

struct NamedForm {
    std::string id;
    Form1R6 form;
};

/// Fixed, ordered catalog of pairing test forms. Ids are stable so reports
/// can be compared across runs.
const std::vector<NamedForm>& test_form_catalog();

struct NamedTestFunction {
    std::string id;
    Poly phi;
};

/// Fixed, ordered catalog of first-variation test functions phi(x, S); the
/// matrix slot is fed the tangent-plane projection at evaluation time.
const std::vector<NamedTestFunction>& test_function_catalog();

}  // namespace tiltbend
