#include "hydrodetect/shape.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace hydro {

namespace {
constexpr double kAreaTol = 1e-9;
}

ShapeSpec::ShapeSpec(CoeffSeq c) : c_(std::move(c)) {
    if (c_.at(1) == Complex{0.0, 0.0}) throw std::invalid_argument("ShapeSpec: c1 must be nonzero");
    if (c_.at(0) != Complex{0.0, 0.0}) throw std::invalid_argument("ShapeSpec: c0 must be zero");
    for (int k = 2; k <= c_.hi(); ++k)
        if (c_.at(k) != Complex{0.0, 0.0})
            throw std::invalid_argument("ShapeSpec: coefficients for k >= 2 must vanish");

    double a = 0.0;
    for (int k = c_.lo(); k <= 1; ++k) a += k * std::norm(c_.at(k));
    a *= std::numbers::pi;
    if (a < -kAreaTol) throw std::invalid_argument("ShapeSpec: negative area");
    degenerate_ = a < kAreaTol;
}

namespace {

// f without the domain check; the Newton solver probes slightly inside.
Complex eval_map_unchecked(const ShapeSpec &shape, Complex z) {
    const CoeffSeq &c = shape.coeffs();
    // c1 z + tail in powers of 1/z, tail by Horner
    const Complex invz = 1.0 / z;
    Complex tail{0.0, 0.0};
    for (int k = c.lo(); k <= -1; ++k) tail = tail * invz + c.at(k);
    return c.at(1) * z + tail * invz;
}

} // namespace

Complex eval_map(const ShapeSpec &shape, Complex z) {
    if (std::abs(z) < 1.0 - 1e-12) throw std::invalid_argument("eval_map: |z| must be >= 1");
    return eval_map_unchecked(shape, z);
}

Complex eval_map_derivative(const ShapeSpec &shape, Complex z) {
    const CoeffSeq &c = shape.coeffs();
    const Complex invz = 1.0 / z;
    Complex tail{0.0, 0.0};
    for (int k = c.lo(); k <= -1; ++k) tail = tail * invz + static_cast<double>(k) * c.at(k);
    return c.at(1) + tail * invz * invz;
}

Complex eval_map_inverse(const ShapeSpec &shape, Complex z) {
    const Complex c1 = shape.c1();
    Complex w = z / c1;
    if (std::abs(w) < 1.0) w /= std::abs(w); // start on the circle if z maps near it
    const double tol = 1e-12 * (1.0 + std::abs(z));

    for (int it = 0; it < 100; ++it) {
        const Complex g = eval_map_unchecked(shape, w) - z;
        if (std::abs(g) < tol) {
            const double m = std::abs(w);
            if (m < 1.0 - 1e-9)
                throw InversionError("eval_map_inverse: converged inside the unit disk");
            return m < 1.0 ? w / m : w;
        }
        const Complex fp = eval_map_derivative(shape, w);
        if (fp == Complex{0.0, 0.0})
            throw InversionError("eval_map_inverse: critical point hit");
        const Complex step = g / fp;
        Complex wn = w - step;
        // roots live on |w| >= 1; leave Newton alone near the circle but keep
        // iterates out of the deep interior, where f has critical points
        double t = 1.0;
        while (std::abs(wn) < 0.9 && t > 1e-10) {
            t *= 0.5;
            wn = w - t * step;
        }
        if (std::abs(wn) < 0.9) wn /= std::abs(wn);
        w = wn;
    }
    throw InversionError("eval_map_inverse: no convergence (point inside or too close to the solid)");
}

double area(const ShapeSpec &shape) {
    const CoeffSeq &c = shape.coeffs();
    double a = 0.0;
    for (int k = c.lo(); k <= 1; ++k) a += k * std::norm(c.at(k));
    return std::numbers::pi * a;
}

std::vector<Complex> boundary(const ShapeSpec &shape, int M) {
    if (M < 3) throw std::invalid_argument("boundary: need M >= 3");
    std::vector<Complex> pts(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j) {
        const double t = 2.0 * std::numbers::pi * j / M;
        pts[static_cast<size_t>(j)] = eval_map(shape, std::exp(Complex{0.0, t}));
    }
    return pts;
}

int symmetry_order(const ShapeSpec &shape) {
    int g = 0;
    for (int k : shape.coeffs().support()) g = std::gcd(g, std::abs(k - 1));
    return g; // 0 when only c1 is present: full rotational invariance
}

bool boundary_self_intersects(const ShapeSpec &shape, int M) {
    const auto pts = boundary(shape, M);
    const int n = static_cast<int>(pts.size());
    auto seg_cross = [](Complex a, Complex b, Complex c, Complex d) {
        auto orient = [](Complex p, Complex q, Complex r) {
            const Complex u = q - p, v = r - p;
            return u.real() * v.imag() - u.imag() * v.real();
        };
        const double o1 = orient(a, b, c), o2 = orient(a, b, d);
        const double o3 = orient(c, d, a), o4 = orient(c, d, b);
        return o1 * o2 < 0.0 && o3 * o4 < 0.0;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue; // adjacent around the wrap
            if (seg_cross(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n])) return true;
        }
    }
    return false;
}

ShapeSpec make_disk(double radius) {
    if (radius <= 0.0) throw std::invalid_argument("make_disk: radius must be positive");
    CoeffSeq c;
    c.set(1, Complex{radius, 0.0});
    return ShapeSpec(c);
}

ShapeSpec make_ellipse(double a, double b) {
    if (!(a > b && b > 0.0))
        throw std::invalid_argument("make_ellipse: need a > b > 0 (a disk is make_disk)");
    CoeffSeq c;
    c.set(1, Complex{(a + b) / 2.0, 0.0});
    c.set(-1, Complex{(a - b) / 2.0, 0.0});
    return ShapeSpec(c);
}

ShapeSpec make_arc(double h) {
    if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("make_arc: need 0 < h < 1");
    // f(z) = z + (1-h^2)/(z + i h): c_{-1} = 1-h^2, c_k = (1-h^2)(-i h)^{-k-1}
    const double s = 1.0 - h * h;
    CoeffSeq c;
    c.set(1, Complex{1.0, 0.0});
    Complex term{s, 0.0};
    int k = -1;
    while (std::abs(term) >= 1e-14) {
        c.set(k, term);
        term *= Complex{0.0, -h};
        --k;
    }
    return ShapeSpec(c);
}

ShapeSpec make_segment(double R, double theta) {
    if (R <= 0.0) throw std::invalid_argument("make_segment: R must be positive");
    // beta = theta: c1 = R e^{i theta}, c_{-1} = R e^{i theta}; the image of the
    // unit circle is 2R e^{i theta} cos t, a segment of half-length 2R.
    CoeffSeq c;
    const Complex e = std::exp(Complex{0.0, theta});
    c.set(1, R * e);
    c.set(-1, R * e);
    return ShapeSpec(c);
}

ShapeSpec make_c147(Complex c1, Complex cm4, Complex cm7) {
    if (c1 == Complex{} || cm4 == Complex{} || cm7 == Complex{})
        throw std::invalid_argument("make_c147: all three coefficients must be nonzero");
    const double a = std::norm(c1) - 4.0 * std::norm(cm4) - 7.0 * std::norm(cm7);
    if (a <= 0.0) throw std::invalid_argument("make_c147: nonpositive area");
    CoeffSeq c;
    c.set(1, c1);
    c.set(-4, cm4);
    c.set(-7, cm7);
    return ShapeSpec(c);
}

} // namespace hydro
