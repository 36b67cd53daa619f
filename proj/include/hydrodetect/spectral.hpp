#pragma once

#include <array>
#include <functional>
#include <vector>

#include "hydrodetect/flow.hpp"

namespace hydro {

// Laurent coefficients lambda_1(nu)..lambda_N(nu) of the potential about nu.
struct MomentTable {
    Complex nu{0.0, 0.0};
    std::vector<Complex> lambdas;

    int order() const { return static_cast<int>(lambdas.size()); }
    Complex lambda(int n) const { return lambdas.at(static_cast<size_t>(n - 1)); } // 1-based
    double max_abs() const;
};

// Shape-only coefficients (script A_k, B_k, C_k), 1-based up to order N.
struct GeometryCoeffs {
    std::vector<Complex> A, B, C;

    int order() const { return static_cast<int>(A.size()); }
    Complex a(int k) const { return A.at(static_cast<size_t>(k - 1)); }
    Complex b(int k) const { return B.at(static_cast<size_t>(k - 1)); }
    Complex c(int k) const { return C.at(static_cast<size_t>(k - 1)); }
};

double binom(int n, int k);

// Entries of the finite exponential of S_N D_N (the lower-triangular binomial
// matrix), computed in integer arithmetic.
std::vector<std::vector<long long>> pascal_from_exponential(int N);

// Fast route: decompose (d * c^k)_{-1} over the three unit velocities.
GeometryCoeffs geometry_coeffs(const ShapeSpec &shape, int N);

// Direct enumeration of the constrained index sums; the independent oracle.
// Guarded to N <= 10 and tail order <= 8. The C_k sum is evaluated under both
// readings of its constraint (i1+i2 <= -1 and <= 0) and must agree.
GeometryCoeffs geometry_coeffs_bruteforce(const ShapeSpec &shape, int N);

// lambda_n(nu) = sum_{k<=n} binom(n-1,k-1) e^{ik alpha} (r-nu)^{n-k}
//                [-A_k conj(w0) + B_k w0 + i omega C_k]
MomentTable moments_closed_form(const ShapeSpec &shape, const Configuration &cfg, Complex nu, int N);

using PotentialFn = std::function<Complex(Complex)>;

// Trapezoidal quadrature of (1/2*pi*i) oint xi(z) (z-nu)^{n-1} dz over the
// circle |z - nu| = radius, which must enclose the solid. Q >= 16 nodes.
MomentTable moments_contour(const PotentialFn &potential, Complex nu, int N, double radius, int Q);

// Theta_N(u, alpha): entry (n,k) = binom(n-1,k-1) e^{ik alpha} u^{n-k}, k <= n.
std::vector<std::vector<Complex>> theta_matrix(Complex u, double alpha, int N);

// m_n = e^{-in alpha} sum_{k<=n} binom(n-1,k-1) (nu-r)^{n-k} lambda_k(nu);
// the explicit inverse of theta applied to the table.
std::vector<Complex> invert_moments(const MomentTable &table, Complex r, double alpha);

// (G_N U)_k = (-A_k + B_k) U1 + i (A_k + B_k) U2 + i C_k U3
std::vector<Complex> gn_apply(const GeometryCoeffs &geom, const std::array<double, 3> &U);

// Re-expansion of the same potential about a new point (exact, triangular).
MomentTable translate_moments(const MomentTable &table, Complex new_nu);

// max_{j in [j_min, N]} |lambda_j|^{1/j}, skipping entries below 1e-14;
// returns 0 when the whole tail is below that floor. Requires N >= j_min + 8.
double singularity_radius(const MomentTable &table, int j_min);

using MomentProvider = std::function<MomentTable(Complex)>;

// Grid argmin of the singularity radius over [box_lo, box_hi]; the coarse
// location estimate. Throws when every radius vanishes (stealth potential).
Complex localize_chebyshev(const MomentProvider &provider, Complex box_lo, Complex box_hi, int grid);

MomentProvider make_closed_form_provider(const ShapeSpec &shape, const Configuration &cfg, int N);

// Contour-based provider; (hint_center, hint_radius) is a disk known to
// contain the solid, used to pick the contour radius 2(hint_radius + |hint_center - nu|).
MomentProvider make_contour_provider(PotentialFn potential, int N, int Q, Complex hint_center,
                                     double hint_radius);

// Provider serving any nu by exact re-expansion of one measured table.
MomentProvider make_table_provider(MomentTable table);

} // namespace hydro
