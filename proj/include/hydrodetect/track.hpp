#pragma once

#include <functional>
#include <vector>

#include "hydrodetect/spectral.hpp"

namespace hydro {

// Moment tables measured over time, all with the same nu and order.
struct TimeSeriesMeasurement {
    std::vector<double> times;       // strictly increasing, times[0] = start
    std::vector<MomentTable> tables; // one per time
};

// Differentiable ground-truth pose, used by the synthesizer.
struct PosePath {
    std::function<Complex(double)> r;
    std::function<double(double)> alpha;
    std::function<Complex(double)> dr;
    std::function<double(double)> dalpha;
};

TimeSeriesMeasurement synthesize_timeseries(const ShapeSpec &shape, const PosePath &path,
                                            Complex nu, int N, const std::vector<double> &times);

struct Trajectory {
    std::vector<double> times;
    std::vector<Position> poses;
    std::vector<RigidVelocity> velocities; // reconstructed U(t)
};

// Integrates d/dt (r, alpha) = P G_N^+ Theta_N(r - nu, alpha)^{-1} Lambda(t)
// with classical RK4 at fixed step; Lambda between samples by local cubic
// interpolation. Requires rank(G_N) = 3 and the pose at data.times.front().
Trajectory track(const ShapeSpec &shape, const Position &initial,
                 const TimeSeriesMeasurement &data, double step);

} // namespace hydro
