#include "hydrodetect/rigid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hydro {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngleTol = 1e-9;
} // namespace

double wrap_angle(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi) w = 0.0;
    return w;
}

double angle_diff(double a, double b) {
    double d = std::fmod(a - b, kTwoPi);
    if (d > std::numbers::pi) d -= kTwoPi;
    if (d <= -std::numbers::pi) d += kTwoPi;
    return d;
}

bool equivalent(const Configuration &a, const Configuration &b, int symmetry_order) {
    if (symmetry_order < 1) throw std::invalid_argument("equivalent: symmetry_order must be >= 1");

    const double scale = 1.0 + std::abs(a.position.r) + std::abs(a.velocity.w0) + std::abs(a.velocity.omega);
    const double tol = 1e-9 * scale;
    if (std::abs(a.position.r - b.position.r) > tol) return false;
    if (std::abs(a.velocity.omega - b.velocity.omega) > tol) return false;

    for (int j = 0; j < symmetry_order; ++j) {
        const double phi = kTwoPi * j / symmetry_order;
        if (std::abs(angle_diff(b.position.alpha, a.position.alpha + phi)) > kAngleTol) continue;
        const Complex w0_expect = a.velocity.w0 * std::exp(Complex{0.0, -phi});
        if (std::abs(b.velocity.w0 - w0_expect) <= tol) return true;
    }
    return false;
}

Complex rigid_velocity_field(const Configuration &cfg, Complex x) {
    return Complex{0.0, 1.0} * cfg.velocity.omega * (x - cfg.position.r) +
           cfg.velocity.world(cfg.position.alpha);
}

} // namespace hydro
