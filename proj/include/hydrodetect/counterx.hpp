#pragma once

#include <vector>

#include "hydrodetect/rigid.hpp"

namespace hydro {

// One member of a non-detectability family: a solid whose boundary is a zero
// level set of g(x) = (omega/2)|x - s|^2 - psi(x) - level, with
// psi = Im(i z^{-n}), rotating about s with angular velocity omega.
struct LevelSetShape {
    int n = 0;
    double omega = 0.0;
    Complex s{0.0, 0.0};
    double level = 0.0; // effective signed level actually used
    std::vector<Complex> boundary; // closed polyline, one vertex per ray
    RigidVelocity velocity;        // w0 = 0
};

// Stream function of the shared potential i/z^n, in Cartesian form.
double harmonic_psi(Complex z, int n);

// Builds the n-member family with rotation centers s_k on the circle of
// radius rho. The level is treated as signed: the given value is tried first
// and its negation second (the constructions of the source differ in sign
// convention); ray root-finding runs per member with ray offsets aligned to
// the member angle. Throws when neither convention yields a curve on all rays.
std::vector<LevelSetShape> build_family(int n, double omega, double rho, double level,
                                        int resolution);

struct FamilyReport {
    double dirichlet_max = 0.0;   // deviation of psi - (omega/2)|x-s|^2 from constancy
    double slip_max = 0.0;        // paired tangential differences along the polyline
    double potential_max = 0.0;   // Im(i/z^n) against the polar form of psi
    double hausdorff_max = 0.0;   // member k vs member 1 rotated by 2*pi(k-1)/n
    double min_radius = 0.0;      // annulus actually realized around s_k
    double max_radius = 0.0;
};

FamilyReport verify_family(const std::vector<LevelSetShape> &family);

} // namespace hydro
