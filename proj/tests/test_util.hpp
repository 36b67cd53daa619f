#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "hydrodetect/shape.hpp"
#include "hydrodetect/rigid.hpp"

namespace testutil {

using hydro::Complex;

inline std::mt19937 &rng() {
    static std::mt19937 gen(20240615u);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Complex random_unit() {
    const double t = uniform(0.0, 2.0 * std::numbers::pi);
    return std::exp(Complex{0.0, t});
}

inline Complex random_complex(double radius) {
    return radius * std::sqrt(uniform(0.0, 1.0)) * random_unit();
}

// Random shape with a tail scaled so that sum |k c_k| <= 0.6 |c1|; this keeps
// f univalent and the area safely positive.
inline hydro::ShapeSpec random_shape(int max_tail) {
    const Complex c1 = (0.8 + 0.6 * uniform(0.0, 1.0)) * random_unit();
    const int m = std::uniform_int_distribution<int>(0, max_tail)(rng());
    std::vector<Complex> tail(static_cast<size_t>(m));
    double weight = 0.0;
    for (int j = 0; j < m; ++j) {
        tail[static_cast<size_t>(j)] = random_complex(1.0);
        weight += (j + 1) * std::abs(tail[static_cast<size_t>(j)]);
    }
    hydro::CoeffSeq c;
    c.set(1, c1);
    if (weight > 0.0) {
        const double scale = 0.6 * std::abs(c1) / weight;
        for (int j = 0; j < m; ++j) c.set(-(j + 1), tail[static_cast<size_t>(j)] * scale);
    }
    return hydro::ShapeSpec(c);
}

inline hydro::Configuration random_config(double pos_radius = 1.5) {
    return hydro::Configuration{
        hydro::Position{uniform(0.0, 2.0 * std::numbers::pi), random_complex(pos_radius)},
        hydro::RigidVelocity{uniform(-2.0, 2.0), random_complex(1.5)}};
}

} // namespace testutil
