#include "tiltbend/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace tiltbend {

void Poly::add_term(const Key& k, double c) {
    if (c == 0.0) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

Poly Poly::constant(double c) {
    Poly p;
    Key k{};
    p.add_term(k, c);
    return p;
}

Poly Poly::var(int index) {
    if (index < 0 || index >= kVars) throw std::invalid_argument("Poly::var: index out of range");
    Poly p;
    Key k{};
    k[static_cast<std::size_t>(index)] = 1;
    p.add_term(k, 1.0);
    return p;
}

Poly Poly::operator+(const Poly& o) const {
    Poly out = *this;
    for (const auto& [k, c] : o.terms_) out.add_term(k, c);
    return out;
}

Poly Poly::operator-(const Poly& o) const {
    Poly out = *this;
    for (const auto& [k, c] : o.terms_) out.add_term(k, -c);
    return out;
}

Poly Poly::operator*(const Poly& o) const {
    Poly out;
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : o.terms_) {
            Key k;
            for (int i = 0; i < kVars; ++i)
                k[static_cast<std::size_t>(i)] =
                    ka[static_cast<std::size_t>(i)] + kb[static_cast<std::size_t>(i)];
            out.add_term(k, ca * cb);
        }
    }
    return out;
}

Poly Poly::operator*(double c) const {
    Poly out;
    for (const auto& [k, v] : terms_) out.add_term(k, v * c);
    return out;
}

Poly Poly::derivative(int index) const {
    if (index < 0 || index >= kVars)
        throw std::invalid_argument("Poly::derivative: index out of range");
    const auto idx = static_cast<std::size_t>(index);
    Poly out;
    for (const auto& [k, c] : terms_) {
        if (k[idx] == 0) continue;
        Key kd = k;
        kd[idx] -= 1;
        out.add_term(kd, c * static_cast<double>(k[idx]));
    }
    return out;
}

double Poly::eval(const Vec3& x, const Vec3& y, const Mat3& s) const {
    std::array<double, kVars> v{};
    for (int i = 0; i < 3; ++i) {
        v[static_cast<std::size_t>(var_x(i))] = x[i];
        v[static_cast<std::size_t>(var_y(i))] = y[i];
        for (int j = 0; j < 3; ++j) v[static_cast<std::size_t>(var_s(i, j))] = s(i, j);
    }
    double total = 0.0;
    for (const auto& [k, c] : terms_) {
        double term = c;
        for (int i = 0; i < kVars; ++i) {
            const int e = k[static_cast<std::size_t>(i)];
            for (int p = 0; p < e; ++p) term *= v[static_cast<std::size_t>(i)];
        }
        total += term;
    }
    return total;
}

Vec6 Form1R6::eval(const Vec3& x, const Vec3& y) const {
    const Mat3 zero{};
    Vec6 out;
    for (int i = 0; i < 3; ++i) {
        out.x[i] = coeff[static_cast<std::size_t>(i)].eval(x, y, zero);
        out.y[i] = coeff[static_cast<std::size_t>(3 + i)].eval(x, y, zero);
    }
    return out;
}

const std::vector<NamedForm>& test_form_catalog() {
    static const std::vector<NamedForm> catalog = [] {
        std::vector<NamedForm> v;
        const auto x1 = Poly::var(var_x(0));
        const auto x3 = Poly::var(var_x(2));
        const auto y1 = Poly::var(var_y(0));
        const auto y3 = Poly::var(var_y(2));

        {
            // height coefficient on a horizontal differential; picks up the
            // vertical stratum cleanly
            NamedForm f{"x3_dx2", {}};
            f.form.coeff[1] = x3;
            v.push_back(std::move(f));
        }
        {
            NamedForm f{"dx1", {}};
            f.form.coeff[0] = Poly::constant(1.0);
            v.push_back(std::move(f));
        }
        {
            NamedForm f{"x1_dy2", {}};
            f.form.coeff[4] = x1;
            v.push_back(std::move(f));
        }
        {
            NamedForm f{"y3_dy1", {}};
            f.form.coeff[3] = y3;
            v.push_back(std::move(f));
        }
        {
            NamedForm f{"y1_dx2", {}};
            f.form.coeff[1] = y1;
            v.push_back(std::move(f));
        }
        return v;
    }();
    return catalog;
}

const std::vector<NamedTestFunction>& test_function_catalog() {
    static const std::vector<NamedTestFunction> catalog = [] {
        std::vector<NamedTestFunction> v;
        const auto x1 = Poly::var(var_x(0));
        const auto x2 = Poly::var(var_x(1));
        const auto x3 = Poly::var(var_x(2));
        const auto p11 = Poly::var(var_s(0, 0));
        const auto p12 = Poly::var(var_s(0, 1));
        const auto p22 = Poly::var(var_s(1, 1));
        const auto p23 = Poly::var(var_s(1, 2));

        v.push_back({"one", Poly::constant(1.0)});
        v.push_back({"x1", x1});
        v.push_back({"x3", x3});
        v.push_back({"x1x2", x1 * x2});
        v.push_back({"r2", x1 * x1 + x2 * x2 + x3 * x3});
        v.push_back({"P11", p11});
        v.push_back({"P23", p23});
        v.push_back({"x1P22", x1 * p22});
        v.push_back({"x3P12", x3 * p12});
        return v;
    }();
    return catalog;
}

}  // namespace tiltbend
