#pragma once

#include <stdexcept>
#include <vector>

#include "hydrodetect/seqcore.hpp"

namespace hydro {

// Raised when f^{-1} cannot be evaluated (point inside or hugging the solid).
struct InversionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Conformal description of the solid: the fluid region is the image of
// {|z| > 1} under f(z) = c1 z + sum_{k<=-1} c_k z^k, with c1 != 0 and a
// finite tail c_{-1}..c_{-M}. The enclosed area is pi * sum_{k<=1} k |c_k|^2;
// degenerate shapes (zero area) are accepted, negative area is rejected.
class ShapeSpec {
  public:
    explicit ShapeSpec(CoeffSeq c);

    const CoeffSeq &coeffs() const { return c_; }
    Complex c1() const { return c_.at(1); }
    Complex coeff(int k) const { return c_.at(k); }

    // Truncation order M (0 for a disk).
    int tail_order() const { return c_.lo() < 0 ? -c_.lo() : 0; }

    double l1() const { return c_.l1_norm(); }
    bool degenerate() const { return degenerate_; } // zero-area (segment, arc)

  private:
    CoeffSeq c_;
    bool degenerate_ = false;
};

// f(z); requires |z| >= 1 (up to round-off).
Complex eval_map(const ShapeSpec &shape, Complex z);

// f'(z)
Complex eval_map_derivative(const ShapeSpec &shape, Complex z);

// Newton inversion of f, converging to the exterior root |w| >= 1.
// Residual target 1e-12 * (1 + |z|); throws InversionError on failure.
Complex eval_map_inverse(const ShapeSpec &shape, Complex z);

// pi * sum_{k<=1} k |c_k|^2
double area(const ShapeSpec &shape);

// M samples f(e^{2*pi*i*j/M}), counterclockwise. Requires M >= 3.
std::vector<Complex> boundary(const ShapeSpec &shape, int M);

// Largest m with e^{2*pi*i/m} S0 = S0, i.e. gcd of {k - 1 : c_k != 0}.
// Returns 0 for a disk (invariant under every rotation).
int symmetry_order(const ShapeSpec &shape);

// Polyline diagnostic; not a univalence proof.
bool boundary_self_intersects(const ShapeSpec &shape, int M);

ShapeSpec make_disk(double radius);
ShapeSpec make_ellipse(double a, double b);          // semi-axes a > b > 0
ShapeSpec make_arc(double h);                        // circular arc, 0 < h < 1
ShapeSpec make_segment(double R, double theta);      // segment of half-length 2R at angle theta
ShapeSpec make_c147(Complex c1, Complex cm4, Complex cm7);

} // namespace hydro
