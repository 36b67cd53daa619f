#include "hydrodetect/flow.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace hydro {

Complex PotentialCoeffs::eval(Complex w) const {
    // sum_{k<=-1} zeta_k w^k as a polynomial in 1/w (Horner)
    const Complex invw = 1.0 / w;
    Complex acc{0.0, 0.0};
    for (int k = zeta.lo(); k <= -1; ++k) acc = acc * invw + zeta.at(k);
    return acc * invw;
}

Complex PotentialCoeffs::eval_derivative(Complex w) const {
    const Complex invw = 1.0 / w;
    Complex acc{0.0, 0.0};
    for (int k = zeta.lo(); k <= -1; ++k) acc = acc * invw + static_cast<double>(k) * zeta.at(k);
    return acc * invw * invw;
}

double PotentialCoeffs::max_abs() const {
    double m = 0.0;
    for (int k = zeta.lo(); k <= zeta.hi(); ++k) m = std::max(m, std::abs(zeta.at(k)));
    return m;
}

PotentialCoeffs zeta_coeffs(const ShapeSpec &shape, const RigidVelocity &vel) {
    const CoeffSeq &c = shape.coeffs();
    const CoeffSeq cr = reflect(c);
    const CoeffSeq cc = conv(cr, c);
    const int lo = std::min(std::min(c.lo(), cr.lo()), cc.lo());

    CoeffSeq zeta;
    for (int k = lo; k <= -1; ++k) {
        const Complex v = -std::conj(vel.w0) * c.at(k) + vel.w0 * cr.at(k) +
                          Complex{0.0, vel.omega} * cc.at(k);
        zeta.set(k, v);
    }
    if (zeta.empty()) zeta.set(-1, Complex{0.0, 0.0});
    return PotentialCoeffs{zeta};
}

Complex eval_potential(const ShapeSpec &shape, const Configuration &cfg, Complex z) {
    const PotentialCoeffs pc = zeta_coeffs(shape, cfg.velocity);
    const Complex Z = (z - cfg.position.r) * std::exp(Complex{0.0, -cfg.position.alpha});
    return pc.eval(eval_map_inverse(shape, Z));
}

Complex eval_fluid_velocity(const ShapeSpec &shape, const Configuration &cfg, Complex z) {
    const PotentialCoeffs pc = zeta_coeffs(shape, cfg.velocity);
    const Complex Z = (z - cfg.position.r) * std::exp(Complex{0.0, -cfg.position.alpha});
    const Complex w = eval_map_inverse(shape, Z);
    const Complex fp = eval_map_derivative(shape, w);
    if (fp == Complex{0.0, 0.0}) throw InversionError("eval_fluid_velocity: f' vanished");
    const Complex xip = pc.eval_derivative(w) * std::exp(Complex{0.0, -cfg.position.alpha}) / fp;
    return std::conj(xip);
}

Complex fluid_velocity_at_parameter(const ShapeSpec &shape, const Configuration &cfg, Complex w) {
    const PotentialCoeffs pc = zeta_coeffs(shape, cfg.velocity);
    const Complex fp = eval_map_derivative(shape, w);
    if (fp == Complex{0.0, 0.0}) throw InversionError("fluid_velocity_at_parameter: f' vanished");
    return std::conj(pc.eval_derivative(w) * std::exp(Complex{0.0, -cfg.position.alpha}) / fp);
}

double stream_boundary_residual(const ShapeSpec &shape, const Configuration &cfg, int M) {
    if (M < 8) throw std::invalid_argument("stream_boundary_residual: need M >= 8");
    const PotentialCoeffs pc = zeta_coeffs(shape, cfg.velocity);
    const RigidVelocity &v = cfg.velocity;

    std::vector<double> s(static_cast<size_t>(M));
    double mean = 0.0;
    for (int j = 0; j < M; ++j) {
        const Complex w = std::exp(Complex{0.0, 2.0 * std::numbers::pi * j / M});
        const Complex fz = eval_map(shape, w);
        const double sj = std::imag(pc.eval(w)) + std::imag(std::conj(v.w0) * fz) -
                          0.5 * v.omega * std::norm(fz);
        s[static_cast<size_t>(j)] = sj;
        mean += sj;
    }
    mean /= M;
    double dev = 0.0;
    for (double sj : s) dev = std::max(dev, std::abs(sj - mean));
    return dev;
}

Complex ellipse_potential_closed_form(double a, double b, const Configuration &cfg, Complex z) {
    const double d2 = a * a - b * b;
    const Complex e1 = std::exp(Complex{0.0, cfg.position.alpha});
    const Complex e2 = e1 * e1;
    const Complex zr = z - cfg.position.r;
    const Complex arg = 1.0 - d2 * e2 / (zr * zr);
    if (arg.imag() == 0.0 && arg.real() <= 0.0)
        throw std::domain_error("ellipse_potential_closed_form: point on the branch cut");
    const Complex root = 1.0 + std::sqrt(arg);
    const Complex w0 = cfg.velocity.w0;
    const Complex term1 = (-d2 * std::conj(w0) + (a + b) * (a + b) * w0) * e1 / (2.0 * zr * root);
    const Complex term2 = Complex{0.0, 1.0} * d2 * (a + b) * (a + b) * e2 * cfg.velocity.omega /
                          (4.0 * zr * zr * root * root);
    return term1 + term2;
}

const char *to_string(StealthVerdict v) {
    switch (v) {
        case StealthVerdict::RotatingDisk: return "RotatingDisk";
        case StealthVerdict::TangentArc: return "TangentArc";
        case StealthVerdict::TangentSegment: return "TangentSegment";
        case StealthVerdict::NotStealth: return "NotStealth";
    }
    return "?";
}

StealthVerdict classify_stealth(const ShapeSpec &shape, const RigidVelocity &vel) {
    if (vel.omega == 0.0 && vel.w0 == Complex{0.0, 0.0})
        throw std::invalid_argument("classify_stealth: zero velocity is vacuous");

    const double l1 = shape.l1();
    const double scale = l1 * (std::abs(vel.w0) + std::abs(vel.omega) * l1);
    const PotentialCoeffs pc = zeta_coeffs(shape, vel);
    if (pc.max_abs() >= 1e-12 * scale) return StealthVerdict::NotStealth;

    const auto support = shape.coeffs().support();
    if (support.size() == 1) return StealthVerdict::RotatingDisk;
    if (support.size() == 2 && shape.coeff(-1) != Complex{0.0, 0.0} &&
        std::abs(std::abs(shape.c1()) - std::abs(shape.coeff(-1))) < 1e-12 * l1)
        return StealthVerdict::TangentSegment;
    return StealthVerdict::TangentArc;
}

} // namespace hydro
