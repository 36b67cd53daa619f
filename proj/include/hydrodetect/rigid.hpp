#pragma once

#include <complex>

namespace hydro {

using Complex = std::complex<double>;

// Wraps an angle into [0, 2*pi).
double wrap_angle(double a);

// Signed wrapped difference, in (-pi, pi].
double angle_diff(double a, double b);

// World placement of the shape: S = e^{i alpha} S0 + r.
struct Position {
    double alpha = 0.0; // radians, kept in [0, 2*pi)
    Complex r{0.0, 0.0};

    Position() = default;
    Position(double alpha_, Complex r_) : alpha(wrap_angle(alpha_)), r(r_) {}
};

// Rigid velocity with rotation center fixed at the shape's reference point r.
// w0 is the translational velocity in the body frame; the world-frame value
// is e^{i alpha} w0.
struct RigidVelocity {
    double omega = 0.0;
    Complex w0{0.0, 0.0};

    RigidVelocity() = default;
    RigidVelocity(double omega_, Complex w0_) : omega(omega_), w0(w0_) {}

    Complex world(double alpha) const { return std::exp(Complex{0.0, alpha}) * w0; }
};

struct Configuration {
    Position position;
    RigidVelocity velocity;

    Configuration() = default;
    Configuration(Position p, RigidVelocity v) : position(p), velocity(v) {}
};

// Equality of configurations up to the m-fold rotational symmetry of the
// shape: r and omega must match, and (alpha, w0) may differ by a symmetry
// rotation 2*pi*j/m with w0 compensated by e^{-2*pi*i*j/m}. Throws on m < 1.
bool equivalent(const Configuration &a, const Configuration &b, int symmetry_order);

// v(x) = i*omega*(x - r) + e^{i alpha} w0
Complex rigid_velocity_field(const Configuration &cfg, Complex x);

} // namespace hydro
