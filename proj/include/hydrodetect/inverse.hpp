#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hydrodetect/spectral.hpp"

namespace hydro {

struct VelocityFit {
    RigidVelocity velocity;
    double residual = 0.0;
};

// Velocity from known position (least squares on G_N U = Theta^{-1} Lambda).
// Throws when the stacked real system has rank < 3.
VelocityFit recover_velocity(const GeometryCoeffs &geom, const Position &pos, const MomentTable &table);

struct DetectionResult {
    // Representatives of the solution set. Full detections list the whole
    // equivalence class; partial detections list representatives at alpha = 0.
    std::vector<Configuration> configurations;

    bool r_resolved = false;
    int alpha_mod = 0; // alpha known modulo 2*pi/alpha_mod; 0 = unresolved
    bool w_world_resolved = false;
    bool omega_abs_only = false;
    double residual = 0.0;

    Complex r{0.0, 0.0};
    Complex w_world{0.0, 0.0}; // e^{i alpha} w0
    double omega_abs = 0.0;
    std::string note;
};

// Closed-form ellipse detection: branch-point localization, orientation from
// the radius landscape cross-checked against arg(lambda_2(r)), then the
// mu -> w0 formula and lambda_2 -> omega, polished by a Gauss-Newton fit of
// the moment equations. Returns the two-member class {(alpha,w0),(alpha+pi,-w0)}.
DetectionResult detect_ellipse(double a, double b, const PotentialFn &potential,
                               MomentProvider provider, Complex box_lo = {-3.0, -3.0},
                               Complex box_hi = {3.0, 3.0}, int grid = 41);

// Partial detection for shapes with 4 | symmetry_order: recovers r, the
// world-frame velocity e^{i alpha} w0 and |omega|.
DetectionResult detect_quarter_symmetric(const ShapeSpec &shape, const MomentProvider &provider);

// Full detection when a usable coefficient pair (m, m+4) exists; falls back
// to the partial result otherwise (note says why).
DetectionResult detect_quarter_full(const ShapeSpec &shape, const MomentProvider &provider);

// Three-case detection for the c1/c-4/c-7 family; unique configuration.
DetectionResult detect_c147(const ShapeSpec &shape, const MomentProvider &provider);

// Recovers alpha in [0, 2*pi) from phasors e^{i n alpha} with coprime n's,
// via an integer combination sum(u_i n_i) = 1. Throws when gcd(n's) > 1 or a
// phasor is off the unit circle by more than 1e-6.
double bezout_angle(const std::vector<std::pair<int, Complex>> &constraints);

} // namespace hydro
