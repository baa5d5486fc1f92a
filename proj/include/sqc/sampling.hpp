#pragma once

#include "sqc/quaternion.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace sqc {

using Rng = std::mt19937_64;

/// Independent stream `stream` derived from a base seed.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
    return Rng(seq);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }
inline double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

inline UnitImaginary random_unit_imaginary(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    for (;;) {
        const double x = n(rng), y = n(rng), z = n(rng);
        if (x * x + y * y + z * z > 1e-20) {
            return {x, y, z};
        }
    }
}

/// Uniform point of the 4-ball of the given radius.
inline Quaternion random_in_ball(Rng& rng, double radius = 1.0) {
    std::normal_distribution<double> n(0.0, 1.0);
    Quaternion q{n(rng), n(rng), n(rng), n(rng)};
    const double s = radius * std::pow(uniform01(rng), 0.25) / q.norm();
    return q * s;
}

/// Uniform point of the 4-sphere of the given radius.
inline Quaternion random_on_sphere(Rng& rng, double radius = 1.0) {
    std::normal_distribution<double> n(0.0, 1.0);
    Quaternion q{n(rng), n(rng), n(rng), n(rng)};
    return q * (radius / q.norm());
}

inline Quaternion random_quaternion(Rng& rng, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    return {n(rng), n(rng), n(rng), n(rng)};
}

/// Uniform point of the planar disc |z| < radius, as complex number.
inline std::complex<double> random_in_disc(Rng& rng, double radius = 1.0) {
    const double r = radius * std::sqrt(uniform01(rng));
    const double t = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    return {r * std::cos(t), r * std::sin(t)};
}

}  // namespace sqc
