#pragma once

#include "hydrodetect/rigid.hpp"
#include "hydrodetect/shape.hpp"

namespace hydro {

// Coefficients of the body-frame potential zeta(z) = sum_{k<=-1} zeta_k z^k.
struct PotentialCoeffs {
    CoeffSeq zeta; // support on k <= -1

    Complex eval(Complex w) const;
    Complex eval_derivative(Complex w) const; // termwise k zeta_k w^{k-1}
    double max_abs() const;
};

// zeta_k = -conj(w0) c_k + w0 reflect(c)_k + i omega (reflect(c) * c)_k, k <= -1
PotentialCoeffs zeta_coeffs(const ShapeSpec &shape, const RigidVelocity &vel);

// xi(z) = zeta(f^{-1}((z - r) e^{-i alpha})); z must lie in the fluid.
Complex eval_potential(const ShapeSpec &shape, const Configuration &cfg, Complex z);

// u = conj(xi'(z)) with xi' = zeta'(w) e^{-i alpha} / f'(w).
Complex eval_fluid_velocity(const ShapeSpec &shape, const Configuration &cfg, Complex z);

// Fluid velocity evaluated through the circle parameter w = e^{it} (valid on
// the boundary itself, where Newton inversion is not needed).
Complex fluid_velocity_at_parameter(const ShapeSpec &shape, const Configuration &cfg, Complex w);

// Deviation from constancy of Im zeta + Im(conj(w0) f) - (omega/2)|f|^2 over
// M boundary samples; zero for a correct zeta.
double stream_boundary_residual(const ShapeSpec &shape, const Configuration &cfg, int M);

// Two-term closed form for the ellipse potential (principal square root).
// Throws on points of the branch cut.
Complex ellipse_potential_closed_form(double a, double b, const Configuration &cfg, Complex z);

enum class StealthVerdict { RotatingDisk, TangentArc, TangentSegment, NotStealth };

const char *to_string(StealthVerdict v);

// Stealth iff every |zeta_k| is below 1e-12 * scale with
// scale = l1(c) * (|w0| + |omega| l1(c)); throws on zero velocity.
StealthVerdict classify_stealth(const ShapeSpec &shape, const RigidVelocity &vel);

} // namespace hydro
