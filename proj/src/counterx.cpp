#include "hydrodetect/counterx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hydro {

double harmonic_psi(Complex z, int n) {
    return std::imag(Complex{0.0, 1.0} * std::pow(z, -n));
}

namespace {

double g_value(Complex x, Complex s, double omega, int n) {
    return 0.5 * omega * std::norm(x - s) - harmonic_psi(x, n);
}

// Root of g(s + r e^{i beta}) = level along one ray; the sign change closest
// to the predicted annulus radius is bisected. Returns < 0 when none exists.
double ray_root(Complex s, double beta, double level, double omega, int n) {
    const Complex dir = std::exp(Complex{0.0, beta});
    const double r_hi = 10.0 * std::sqrt(2.0 * std::abs(level) / omega + 1.0);
    const double r_lo = 0.1;
    const int scan = 4000;
    const double pred = std::sqrt(2.0 * std::abs(level) / omega);

    double best_lo = -1.0, best_hi = -1.0, best_dist = 0.0;
    double prev_r = r_lo, prev_v = g_value(s + r_lo * dir, s, omega, n) - level;
    for (int i = 1; i <= scan; ++i) {
        const double r = r_lo + (r_hi - r_lo) * i / scan;
        const double v = g_value(s + r * dir, s, omega, n) - level;
        if (prev_v == 0.0 || (prev_v < 0.0) != (v < 0.0)) {
            const double mid = 0.5 * (prev_r + r);
            const double dist = std::abs(mid - pred);
            if (best_lo < 0.0 || dist < best_dist) {
                best_lo = prev_r;
                best_hi = r;
                best_dist = dist;
            }
        }
        prev_r = r;
        prev_v = v;
    }
    if (best_lo < 0.0) return -1.0;

    double lo = best_lo, hi = best_hi;
    double flo = g_value(s + lo * dir, s, omega, n) - level;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = g_value(s + mid * dir, s, omega, n) - level;
        if (fmid == 0.0) return mid;
        if ((flo < 0.0) != (fmid < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::vector<LevelSetShape> build_family(int n, double omega, double rho, double level,
                                        int resolution) {
    if (n < 2) throw std::invalid_argument("build_family: need n >= 2");
    if (omega <= 0.0 || rho <= 0.0) throw std::invalid_argument("build_family: omega, rho must be positive");
    if (resolution < 64) throw std::invalid_argument("build_family: need resolution >= 64");

    for (const double T : {level, -level}) {
        std::vector<LevelSetShape> family;
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) {
            const double phase = 2.0 * std::numbers::pi * k / n;
            const Complex s = rho * std::exp(Complex{0.0, phase});
            LevelSetShape shape;
            shape.n = n;
            shape.omega = omega;
            shape.s = s;
            shape.level = T;
            shape.velocity = RigidVelocity{omega, Complex{0.0, 0.0}};
            shape.boundary.reserve(static_cast<size_t>(resolution));
            for (int j = 0; j < resolution; ++j) {
                const double beta = 2.0 * std::numbers::pi * j / resolution + phase;
                const double r = ray_root(s, beta, T, omega, n);
                if (r < 0.0) {
                    ok = false;
                    break;
                }
                shape.boundary.push_back(s + r * std::exp(Complex{0.0, beta}));
            }
            if (ok) family.push_back(std::move(shape));
        }
        if (!ok) continue;

        // reject families whose polylines jump between root branches
        double median_gap;
        {
            std::vector<double> gaps;
            const auto &b = family.front().boundary;
            for (size_t j = 0; j < b.size(); ++j)
                gaps.push_back(std::abs(b[(j + 1) % b.size()] - b[j]));
            std::nth_element(gaps.begin(), gaps.begin() + static_cast<long>(gaps.size() / 2), gaps.end());
            median_gap = gaps[gaps.size() / 2];
        }
        bool smooth = true;
        for (const auto &m : family) {
            for (size_t j = 0; j < m.boundary.size() && smooth; ++j)
                if (std::abs(m.boundary[(j + 1) % m.boundary.size()] - m.boundary[j]) >
                    8.0 * median_gap + 1e-12)
                    smooth = false;
        }
        if (smooth) return family;
    }
    throw std::runtime_error(
        "build_family: level incompatible with omega/rho under both sign conventions");
}

FamilyReport verify_family(const std::vector<LevelSetShape> &family) {
    if (family.empty()) throw std::invalid_argument("verify_family: empty family");
    const int n = family.front().n;
    const double omega = family.front().omega;

    FamilyReport rep;
    rep.min_radius = 1e300;
    rep.max_radius = 0.0;

    for (size_t k = 0; k < family.size(); ++k) {
        const auto &m = family[k];
        const auto &b = m.boundary;
        const size_t R = b.size();

        // (a) Dirichlet: psi - (omega/2)|x - s|^2 constant along the boundary
        double mean = 0.0;
        std::vector<double> vals(R);
        for (size_t j = 0; j < R; ++j) {
            vals[j] = harmonic_psi(b[j], n) - 0.5 * omega * std::norm(b[j] - m.s);
            mean += vals[j];
        }
        mean /= static_cast<double>(R);
        for (double v : vals) rep.dirichlet_max = std::max(rep.dirichlet_max, std::abs(v - mean));

        // (b) slip via paired tangential differences
        for (size_t j = 0; j < R; ++j) {
            const Complex zp = b[(j + 1) % R], zm = b[(j + R - 1) % R];
            const double ds = std::abs(zp - zm);
            if (ds == 0.0) continue;
            const double lhs = harmonic_psi(zp, n) - harmonic_psi(zm, n);
            const double rhs = 0.5 * omega * (std::norm(zp - m.s) - std::norm(zm - m.s));
            rep.slip_max = std::max(rep.slip_max, std::abs(lhs - rhs) / ds);
        }

        // (c) shared potential i/z^n: Cartesian form against the polar form
        for (size_t j = 0; j < R; ++j) {
            const double rr = std::abs(b[j]);
            const double th = std::arg(b[j]);
            const double polar = std::cos(n * th) / std::pow(rr, n);
            rep.potential_max =
                std::max(rep.potential_max, std::abs(harmonic_psi(b[j], n) - polar));
            const double rad = std::abs(b[j] - m.s);
            rep.min_radius = std::min(rep.min_radius, rad);
            rep.max_radius = std::max(rep.max_radius, rad);
        }

        // (d) congruence: member k must be member 0 rotated by 2*pi*k/n
        if (k > 0) {
            const Complex rot = std::exp(Complex{0.0, 2.0 * std::numbers::pi * k / n});
            const auto &b0 = family[0].boundary;
            for (size_t j = 0; j < R; ++j)
                rep.hausdorff_max = std::max(rep.hausdorff_max, std::abs(rot * b0[j] - b[j]));
        }
    }
    return rep;
}

} // namespace hydro
