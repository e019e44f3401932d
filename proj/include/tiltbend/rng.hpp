#pragma once

#include <cstdint>
#include <random>

#include "tiltbend/geom3.hpp"

namespace tiltbend {

/// Deterministic random source. The engine is std::mt19937_64 but every
/// mapping to doubles is spelled out here, because the standard library's
/// distributions are implementation defined and the verification report
/// must be byte identical for a fixed seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Box-Muller, no state carried between calls.
    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    Vec3 vec3(double a, double b) { return {uniform(a, b), uniform(a, b), uniform(a, b)}; }

    Vec3 unit_vec3() {
        for (;;) {
            const Vec3 v{gaussian(), gaussian(), gaussian()};
            const double n = norm(v);
            if (n > 1e-6) return v / n;
        }
    }

    Mat3 mat3(double a, double b) {
        Mat3 r;
        for (auto& v : r.m) v = uniform(a, b);
        return r;
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace tiltbend
