#include "hydrodetect/track.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace hydro {

TimeSeriesMeasurement synthesize_timeseries(const ShapeSpec &shape, const PosePath &path,
                                            Complex nu, int N, const std::vector<double> &times) {
    if (times.size() < 2) throw std::invalid_argument("synthesize_timeseries: need >= 2 samples");
    TimeSeriesMeasurement out;
    out.times = times;
    out.tables.reserve(times.size());
    const GeometryCoeffs geom = geometry_coeffs(shape, N);
    for (double t : times) {
        const double a = path.alpha(t);
        const Complex w0 = std::exp(Complex{0.0, -a}) * path.dr(t);
        const Configuration cfg{Position{a, path.r(t)}, RigidVelocity{path.dalpha(t), w0}};
        // moments via the shared geometry coefficients
        const std::array<double, 3> U{w0.real(), w0.imag(), cfg.velocity.omega};
        const std::vector<Complex> G = gn_apply(geom, U);
        MomentTable tab;
        tab.nu = nu;
        tab.lambdas.resize(static_cast<size_t>(N));
        const Complex u = cfg.position.r - nu;
        const Complex ea = std::exp(Complex{0.0, a});
        for (int n = 1; n <= N; ++n) {
            Complex s{0.0, 0.0};
            Complex upow{1.0, 0.0};
            Complex eak = std::pow(ea, n);
            for (int k = n; k >= 1; --k) {
                s += binom(n - 1, k - 1) * eak * upow * G[static_cast<size_t>(k - 1)];
                upow *= u;
                eak /= ea;
            }
            tab.lambdas[static_cast<size_t>(n - 1)] = s;
        }
        out.tables.push_back(std::move(tab));
    }
    return out;
}

namespace {

// Local cubic Lagrange interpolation of the moment vector at time t.
std::vector<Complex> interp_lambdas(const TimeSeriesMeasurement &data, double t) {
    const auto &ts = data.times;
    const int n = static_cast<int>(ts.size());
    if (n == 1) return data.tables[0].lambdas;

    int i = static_cast<int>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin()) - 1;
    int lo = 0, count = n;
    if (n >= 4) {
        i = std::clamp(i, 1, n - 3);
        lo = i - 1;
        count = 4;
    }

    const int m = data.tables[0].order();
    std::vector<Complex> out(static_cast<size_t>(m), Complex{0.0, 0.0});
    for (int j = lo; j < lo + count; ++j) {
        double L = 1.0;
        for (int q = lo; q < lo + count; ++q)
            if (q != j) L *= (t - ts[static_cast<size_t>(q)]) /
                             (ts[static_cast<size_t>(j)] - ts[static_cast<size_t>(q)]);
        for (int c = 0; c < m; ++c)
            out[static_cast<size_t>(c)] += L * data.tables[static_cast<size_t>(j)].lambdas[static_cast<size_t>(c)];
    }
    return out;
}

} // namespace

Trajectory track(const ShapeSpec &shape, const Position &initial,
                 const TimeSeriesMeasurement &data, double step) {
    if (data.times.empty() || data.times.size() != data.tables.size())
        throw std::invalid_argument("track: malformed time series");
    for (size_t i = 1; i < data.times.size(); ++i)
        if (!(data.times[i] > data.times[i - 1]))
            throw std::invalid_argument("track: times must be strictly increasing");
    const Complex nu = data.tables.front().nu;
    const int N = data.tables.front().order();
    for (const auto &t : data.tables)
        if (t.order() != N || t.nu != nu)
            throw std::invalid_argument("track: tables must share nu and order");
    if (step <= 0.0) throw std::invalid_argument("track: step must be positive");

    const GeometryCoeffs geom = geometry_coeffs(shape, N);
    Eigen::MatrixXd M(2 * N, 3);
    for (int k = 1; k <= N; ++k) {
        const Complex c1 = -geom.a(k) + geom.b(k);
        const Complex c2 = Complex{0.0, 1.0} * (geom.a(k) + geom.b(k));
        const Complex c3 = Complex{0.0, 1.0} * geom.c(k);
        M(2 * (k - 1), 0) = c1.real();
        M(2 * (k - 1), 1) = c2.real();
        M(2 * (k - 1), 2) = c3.real();
        M(2 * (k - 1) + 1, 0) = c1.imag();
        M(2 * (k - 1) + 1, 1) = c2.imag();
        M(2 * (k - 1) + 1, 2) = c3.imag();
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
    qr.setThreshold(1e-9);
    if (qr.rank() < 3) throw std::runtime_error("track: G_N has rank < 3; raise N");

    auto velocity_of = [&](double t, Complex r, double alpha) {
        MomentTable tab;
        tab.nu = nu;
        tab.lambdas = interp_lambdas(data, t);
        if (std::abs(r - nu) > 1e6) throw std::runtime_error("track: pose diverged");
        const std::vector<Complex> m = invert_moments(tab, r, alpha);
        Eigen::VectorXd rhs(2 * N);
        for (int k = 0; k < N; ++k) {
            rhs(2 * k) = m[static_cast<size_t>(k)].real();
            rhs(2 * k + 1) = m[static_cast<size_t>(k)].imag();
        }
        const Eigen::Vector3d U = qr.solve(rhs);
        return RigidVelocity{U(2), Complex{U(0), U(1)}};
    };

    const double t0 = data.times.front();
    const double t_end = data.times.back();

    Trajectory traj;
    double t = t0;
    Complex r = initial.r;
    double alpha = initial.alpha;

    auto record = [&](double tt, Complex rr, double aa) {
        traj.times.push_back(tt);
        traj.poses.push_back(Position{aa, rr});
        traj.velocities.push_back(velocity_of(tt, rr, aa));
    };
    record(t, r, alpha);

    while (t < t_end - 1e-15) {
        const double h = std::min(step, t_end - t);
        auto f = [&](double tt, Complex rr, double aa) {
            const RigidVelocity v = velocity_of(tt, rr, aa);
            return std::pair<Complex, double>{v.world(aa), v.omega};
        };
        const auto k1 = f(t, r, alpha);
        const auto k2 = f(t + 0.5 * h, r + 0.5 * h * k1.first, alpha + 0.5 * h * k1.second);
        const auto k3 = f(t + 0.5 * h, r + 0.5 * h * k2.first, alpha + 0.5 * h * k2.second);
        const auto k4 = f(t + h, r + h * k3.first, alpha + h * k3.second);
        r += h / 6.0 * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first);
        alpha += h / 6.0 * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second);
        t += h;
        record(t, r, alpha);
    }
    return traj;
}

} // namespace hydro
