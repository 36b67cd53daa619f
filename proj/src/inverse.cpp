#include "hydrodetect/inverse.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hydro {

namespace {

Eigen::MatrixXd stacked_gn_matrix(const GeometryCoeffs &geom, int N) {
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
    return M;
}

Eigen::VectorXd stack_complex(const std::vector<Complex> &v) {
    Eigen::VectorXd out(2 * static_cast<int>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) {
        out(2 * static_cast<int>(i)) = v[i].real();
        out(2 * static_cast<int>(i) + 1) = v[i].imag();
    }
    return out;
}

Complex unit_phasor(Complex e) {
    const double m = std::abs(e);
    if (std::abs(m - 1.0) > 1e-6)
        throw std::runtime_error("phase quantity off the unit circle; inconsistent measurements");
    return e / m;
}

// g = a x + b y
long long egcd(long long a, long long b, long long &x, long long &y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    long long x1 = 0, y1 = 0;
    const long long g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Forward-model residual of a recovered configuration against a table.
double forward_residual(const ShapeSpec &shape, const Configuration &cfg, const MomentTable &table) {
    const MomentTable model = moments_closed_form(shape, cfg, table.nu, table.order());
    double m = 0.0;
    for (int n = 1; n <= table.order(); ++n)
        m = std::max(m, std::abs(model.lambda(n) - table.lambda(n)));
    const double scale = std::max(table.max_abs(), 1e-30);
    return m / scale;
}

constexpr Complex kProbeOffset{1.3, 0.7};

} // namespace

VelocityFit recover_velocity(const GeometryCoeffs &geom, const Position &pos, const MomentTable &table) {
    const int N = std::min(geom.order(), table.order());
    if (N < 3) throw std::invalid_argument("recover_velocity: need at least 3 moments");

    GeometryCoeffs g{std::vector<Complex>(geom.A.begin(), geom.A.begin() + N),
                     std::vector<Complex>(geom.B.begin(), geom.B.begin() + N),
                     std::vector<Complex>(geom.C.begin(), geom.C.begin() + N)};

    const Eigen::MatrixXd M = stacked_gn_matrix(g, N);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
    qr.setThreshold(1e-9);
    if (qr.rank() < 3)
        throw std::runtime_error(
            "recover_velocity: G_N has rank < 3 (stealth-capable shape or N too small)");

    std::vector<Complex> m = invert_moments(table, pos.r, pos.alpha);
    m.resize(static_cast<size_t>(N));
    const Eigen::VectorXd rhs = stack_complex(m);
    const Eigen::Vector3d U = qr.solve(rhs);
    const double residual = (M * U - rhs).norm();
    return VelocityFit{RigidVelocity{U(2), Complex{U(0), U(1)}}, residual};
}

double bezout_angle(const std::vector<std::pair<int, Complex>> &constraints) {
    if (constraints.empty()) throw std::invalid_argument("bezout_angle: empty constraint list");
    for (const auto &[n, e] : constraints) {
        if (n <= 0) throw std::invalid_argument("bezout_angle: orders must be positive");
        (void)unit_phasor(e);
    }

    // fold extended gcd over the list, tracking the integer combination
    std::vector<long long> u(constraints.size(), 0);
    long long g = constraints[0].first;
    u[0] = 1;
    for (size_t i = 1; i < constraints.size(); ++i) {
        long long x = 0, y = 0;
        const long long gn = egcd(g, constraints[i].first, x, y);
        for (size_t j = 0; j < i; ++j) u[j] *= x;
        u[i] = y;
        g = gn;
    }
    if (g != 1)
        throw std::runtime_error("bezout_angle: orders share gcd " + std::to_string(g) +
                                 "; angle only determined modulo 2*pi/" + std::to_string(g));

    Complex p{1.0, 0.0};
    for (size_t i = 0; i < constraints.size(); ++i)
        p *= std::pow(unit_phasor(constraints[i].second), static_cast<double>(u[i]));
    return wrap_angle(std::arg(p));
}

namespace {

// Shared plumbing for the quarter-symmetric detectors.
struct QuarterContext {
    MomentTable t0, t1;
    GeometryCoeffs geom;
    double scale = 0.0;
    double thr = 0.0;
    int N = 0;
};

QuarterContext quarter_setup(const ShapeSpec &shape, const MomentProvider &provider) {
    QuarterContext ctx;
    ctx.t0 = provider(Complex{0.0, 0.0});
    ctx.t1 = provider(kProbeOffset);
    ctx.N = std::min(ctx.t0.order(), ctx.t1.order());
    if (ctx.N < 3) throw std::invalid_argument("detector: need at least 3 moments");
    ctx.geom = geometry_coeffs(shape, ctx.N);
    ctx.scale = std::max(ctx.t0.max_abs(), ctx.t1.max_abs());
    ctx.thr = 1e-9 * ctx.scale;
    if (ctx.scale <= 0.0) throw std::runtime_error("detector: all moments vanish (stealth input)");
    return ctx;
}

double geom_tiny(const GeometryCoeffs &g) {
    double m = 0.0;
    for (int k = 1; k <= g.order(); ++k)
        m = std::max({m, std::abs(g.a(k)), std::abs(g.b(k)), std::abs(g.c(k))});
    return 1e-12 * std::max(m, 1e-30);
}

} // namespace

DetectionResult detect_quarter_symmetric(const ShapeSpec &shape, const MomentProvider &provider) {
    const int sym = symmetry_order(shape);
    if (sym == 0 || sym % 4 != 0)
        throw std::invalid_argument("detect_quarter_symmetric: shape is not pi/2-symmetric");

    QuarterContext ctx = quarter_setup(shape, provider);
    const double ctiny = geom_tiny(ctx.geom);

    DetectionResult out;
    out.omega_abs_only = true;
    const Complex lam1 = ctx.t0.lambda(1);

    Complex r{};
    Complex w_world{};
    double omega_abs = 0.0;

    if (std::abs(lam1) >= ctx.thr) {
        // lambda_1(nu - r) + lambda_2(nu) = 0 at every nu
        const Complex r0 = ctx.t0.nu + ctx.t0.lambda(2) / lam1;
        const Complex r1 = ctx.t1.nu + ctx.t1.lambda(2) / lam1;
        r = 0.5 * (r0 + r1);
        out.residual = std::abs(r0 - r1);
        w_world = lam1 / ctx.geom.b(1); // B_1 = |c1|^2 is real and nonzero

        int m = 0;
        for (int k = 1; k <= ctx.N; ++k)
            if (std::abs(ctx.geom.c(k)) > ctiny) {
                m = k;
                break;
            }
        if (m == 0)
            throw std::runtime_error("detect_quarter_symmetric: no nonzero C_m within N; raise N");
        const std::vector<Complex> s = invert_moments(ctx.t0, r, 0.0);
        omega_abs = std::abs(s[static_cast<size_t>(m - 1)]) / std::abs(ctx.geom.c(m));
    } else {
        // w0 = 0 branch: B_1 w0 = e^{-i alpha} lambda_1 = 0 forces it
        int m = 0;
        for (int k = 1; k <= ctx.N; ++k)
            if (std::abs(ctx.geom.c(k)) > ctiny && std::abs(ctx.t0.lambda(k)) > ctx.thr) {
                m = k;
                break;
            }
        if (m == 0 || m + 1 > ctx.N)
            throw std::runtime_error("detect_quarter_symmetric: pure-rotation index not found; raise N");
        const Complex lm = ctx.t0.lambda(m); // nu-independent here
        const Complex r0 = ctx.t0.nu + ctx.t0.lambda(m + 1) / (static_cast<double>(m) * lm);
        const Complex r1 = ctx.t1.nu + ctx.t1.lambda(m + 1) / (static_cast<double>(m) * ctx.t1.lambda(m));
        r = 0.5 * (r0 + r1);
        out.residual = std::abs(r0 - r1);
        w_world = Complex{0.0, 0.0};
        omega_abs = std::abs(lm) / std::abs(ctx.geom.c(m));
    }

    out.r = r;
    out.r_resolved = true;
    out.w_world = w_world;
    out.w_world_resolved = true;
    out.omega_abs = omega_abs;
    out.alpha_mod = 0;
    out.configurations = {
        Configuration{Position{0.0, r}, RigidVelocity{omega_abs, w_world}},
        Configuration{Position{0.0, r}, RigidVelocity{-omega_abs, w_world}},
    };
    return out;
}

DetectionResult detect_quarter_full(const ShapeSpec &shape, const MomentProvider &provider) {
    DetectionResult partial = detect_quarter_symmetric(shape, provider);

    QuarterContext ctx = quarter_setup(shape, provider);
    const double ctiny = geom_tiny(ctx.geom);
    const std::vector<Complex> s = invert_moments(ctx.t0, partial.r, 0.0);

    const double vel_scale = partial.omega_abs + std::abs(partial.w_world);
    const bool omega_nonzero = partial.omega_abs > 1e-9 * vel_scale;
    const bool w_nonzero = std::abs(partial.w_world) > 1e-9 * vel_scale;

    auto phasor_at = [&](int k, const std::vector<Complex> &coeffs) {
        return s[static_cast<size_t>(k - 1)] / coeffs[static_cast<size_t>(k - 1)];
    };

    // find a coefficient pair (m, m+4) usable under the actual velocity
    int m = 0;
    enum class Route { C, B, A } route = Route::C;
    if (omega_nonzero) {
        for (int k = 1; k + 4 <= ctx.N; ++k)
            if (std::abs(ctx.geom.c(k)) > ctiny && std::abs(ctx.geom.c(k + 4)) > ctiny) {
                m = k;
                route = Route::C;
                break;
            }
    }
    if (m == 0 && w_nonzero) {
        for (int k = 1; k + 4 <= ctx.N && m == 0; ++k) {
            if (std::abs(ctx.geom.b(k)) > ctiny && std::abs(ctx.geom.b(k + 4)) > ctiny) {
                m = k;
                route = Route::B;
            } else if (std::abs(ctx.geom.a(k)) > ctiny && std::abs(ctx.geom.a(k + 4)) > ctiny) {
                m = k;
                route = Route::A;
            }
        }
    }
    if (m == 0) {
        partial.note = "full-detection hypothesis unavailable: no usable coefficient pair (m, m+4)";
        return partial;
    }

    Complex e4a;
    if (route == Route::C)
        e4a = unit_phasor(phasor_at(m + 4, ctx.geom.C) / phasor_at(m, ctx.geom.C));
    else if (route == Route::B)
        e4a = unit_phasor(phasor_at(m + 4, ctx.geom.B) / phasor_at(m, ctx.geom.B));
    else
        e4a = unit_phasor(phasor_at(m + 4, ctx.geom.A) / phasor_at(m, ctx.geom.A));

    double omega = 0.0;
    if (omega_nonzero) {
        int mc = 0;
        for (int k = 1; k <= ctx.N; ++k)
            if (std::abs(ctx.geom.c(k)) > ctiny && std::abs(s[static_cast<size_t>(k - 1)]) > ctx.thr) {
                mc = k;
                break;
            }
        if (mc % 4 != 0)
            throw std::runtime_error("detect_quarter_full: C-index not divisible by 4");
        // s_m = e^{i m alpha} i omega C_m with e^{i m alpha} = e4a^{m/4}
        const Complex em = std::pow(e4a, static_cast<double>(mc / 4));
        omega = (s[static_cast<size_t>(mc - 1)] / (em * Complex{0.0, 1.0} * ctx.geom.c(mc))).real();
    }

    const double alpha0 = wrap_angle(std::arg(e4a) / 4.0);
    DetectionResult out = partial;
    out.alpha_mod = 4;
    out.omega_abs_only = false;
    out.omega_abs = std::abs(omega);
    out.configurations.clear();
    for (int j = 0; j < 4; ++j) {
        const double aj = wrap_angle(alpha0 + j * std::numbers::pi / 2.0);
        const Complex w0j = std::exp(Complex{0.0, -aj}) * partial.w_world;
        out.configurations.push_back(Configuration{Position{aj, out.r}, RigidVelocity{omega, w0j}});
    }
    out.residual = forward_residual(shape, out.configurations.front(), ctx.t1);
    return out;
}

DetectionResult detect_c147(const ShapeSpec &shape, const MomentProvider &provider) {
    {
        const auto sup = shape.coeffs().support();
        if (sup != std::vector<int>{-7, -4, 1})
            throw std::invalid_argument("detect_c147: shape is not of the c1/c-4/c-7 family");
    }

    const MomentTable t0 = provider(Complex{0.0, 0.0});
    const MomentTable t1 = provider(kProbeOffset);
    if (std::min(t0.order(), t1.order()) < 8)
        throw std::invalid_argument("detect_c147: need at least 8 moments");
    const GeometryCoeffs geom = geometry_coeffs(shape, 8);
    const double scale = std::max(t0.max_abs(), t1.max_abs());
    const double thr = 1e-9 * scale;
    if (scale <= 0.0) throw std::runtime_error("detect_c147: all moments vanish");

    const Complex B1 = geom.b(1), A4 = geom.a(4), A7 = geom.a(7), B6 = geom.b(6);
    const Complex C3 = geom.c(3), C5 = geom.c(5), C8 = geom.c(8);
    const Complex lam1 = t0.lambda(1);

    Complex r, w0;
    double alpha = 0.0, omega = 0.0;
    std::string note;

    if (std::abs(lam1) < thr) {
        // pure rotation: lambda_1 = lambda_2(nu) = 0
        if (std::abs(t0.lambda(2)) > 1e3 * thr || std::abs(t1.lambda(2)) > 1e3 * thr)
            throw std::runtime_error("detect_c147: lambda_1 ~ 0 but lambda_2 does not vanish");
        const Complex lam3 = t0.lambda(3);
        if (std::abs(lam3) < thr)
            throw std::runtime_error("detect_c147: lambda_1 and lambda_3 both vanish; no stealth "
                                     "motion exists for this family");
        const Complex r0 = t0.nu + t0.lambda(4) / (3.0 * lam3);
        const Complex r1 = t1.nu + t1.lambda(4) / (3.0 * t1.lambda(3));
        r = 0.5 * (r0 + r1);

        const std::vector<Complex> s = invert_moments(t0, r, 0.0);
        const Complex T3 = Complex{0.0, -1.0} * s[2] / C3; // omega e^{3 i alpha}
        const Complex T5 = Complex{0.0, -1.0} * s[4] / C5;
        const Complex T8 = Complex{0.0, -1.0} * s[7] / C8;
        const Complex e2a = unit_phasor(T5 / T3);
        const Complex e5a = unit_phasor(T8 / T3);
        alpha = bezout_angle({{2, e2a}, {5, e5a}});
        omega = (T3 * std::exp(Complex{0.0, -3.0 * alpha})).real();
        w0 = Complex{0.0, 0.0};
        note = "case omega != 0, w0 = 0";
    } else {
        const Complex r0 = t0.nu + t0.lambda(2) / lam1;
        const Complex r1 = t1.nu + t1.lambda(2) / lam1;
        r = 0.5 * (r0 + r1);
        const Complex W = lam1 / B1; // w0 e^{i alpha}
        const std::vector<Complex> s = invert_moments(t0, r, 0.0);

        if (std::abs(s[2]) >= thr) {
            // general case: omega and w0 both nonzero
            const Complex T3 = Complex{0.0, -1.0} * s[2] / C3;     // omega e^{3 i alpha}
            const Complex q5 = unit_phasor((-s[3] / A4) / std::conj(W)); // e^{5 i alpha}
            // 3-alpha phasor carries the sign of omega; try both and keep
            // the branch consistent with -A_4 conj(w0) = e^{-4 i alpha} s_4
            double best_res = -1.0;
            for (int b = 0; b < 2; ++b) {
                const Complex t3 = (b == 0 ? 1.0 : -1.0) * T3 / std::abs(T3);
                const double a_cand = bezout_angle({{3, t3}, {5, q5}});
                const Complex w0_cand = std::exp(Complex{0.0, -a_cand}) * W;
                const Complex lhs = -A4 * std::conj(w0_cand);
                const Complex rhs = std::exp(Complex{0.0, -4.0 * a_cand}) * s[3];
                const double res = std::abs(lhs - rhs);
                if (best_res < 0.0 || res < best_res) {
                    best_res = res;
                    alpha = a_cand;
                    w0 = w0_cand;
                    omega = (T3 * std::exp(Complex{0.0, -3.0 * alpha})).real();
                }
            }
            note = "case omega != 0, w0 != 0";
        } else {
            // omega = 0: get 5 alpha and 8 alpha, then Bezout(5, 8)
            const Complex e5a = unit_phasor((s[5] / B6) / W);
            const Complex e8a = unit_phasor((-s[6] / A7) / std::conj(W));
            alpha = bezout_angle({{5, e5a}, {8, e8a}});
            w0 = std::exp(Complex{0.0, -alpha}) * W;
            omega = 0.0;
            note = "case omega = 0, w0 != 0";
        }
    }

    DetectionResult out;
    out.r = r;
    out.r_resolved = true;
    out.alpha_mod = 1;
    out.w_world = std::exp(Complex{0.0, alpha}) * w0;
    out.w_world_resolved = true;
    out.omega_abs = std::abs(omega);
    out.omega_abs_only = false;
    out.note = note;
    out.configurations = {Configuration{Position{alpha, r}, RigidVelocity{omega, w0}}};
    out.residual = forward_residual(shape, out.configurations.front(), t1);
    return out;
}

namespace {

// Moments of an (a, b)-ellipse model, geometry coefficients hoisted.
std::vector<Complex> ellipse_model_moments(Complex r, double alpha, Complex w0, double omega,
                                           Complex nu, int N, const GeometryCoeffs &geom) {
    std::vector<Complex> lam(static_cast<size_t>(N));
    std::vector<Complex> Gu(static_cast<size_t>(N));
    for (int k = 1; k <= N; ++k)
        Gu[static_cast<size_t>(k - 1)] = -geom.a(k) * std::conj(w0) + geom.b(k) * w0 +
                                         Complex{0.0, omega} * geom.c(k);
    const Complex u = r - nu;
    const Complex ea = std::exp(Complex{0.0, alpha});
    for (int n = 1; n <= N; ++n) {
        Complex s{0.0, 0.0};
        Complex upow{1.0, 0.0};
        Complex eak = std::pow(ea, n);
        for (int k = n; k >= 1; --k) {
            s += binom(n - 1, k - 1) * eak * upow * Gu[static_cast<size_t>(k - 1)];
            upow *= u;
            eak /= ea;
        }
        lam[static_cast<size_t>(n - 1)] = s;
    }
    return lam;
}

} // namespace

DetectionResult detect_ellipse(double a, double b, const PotentialFn &potential,
                               MomentProvider provider, Complex box_lo, Complex box_hi, int grid) {
    if (!(a > b && b > 0.0)) throw std::invalid_argument("detect_ellipse: need a > b > 0");
    if (a - b < 1e-9)
        throw std::invalid_argument("detect_ellipse: degenerate branch cut, alpha unobservable");

    const Complex box_center = 0.5 * (box_lo + box_hi);
    if (!provider) {
        if (!potential) throw std::invalid_argument("detect_ellipse: no potential and no provider");
        const double hint = 0.5 * std::abs(box_hi - box_lo) + a;
        provider = make_contour_provider(potential, 40, 512, box_center, hint);
    }

    const int N = provider(box_center).order();
    if (N < 16) throw std::invalid_argument("detect_ellipse: need at least 16 moments");
    const int j_min = std::max(1, std::min(N / 2, N - 8));
    auto radius_at = [&](Complex nu) { return singularity_radius(provider(nu), j_min); };

    // (1) coarse localization, then pattern descent on the radius landscape
    Complex rhat = localize_chebyshev(provider, box_lo, box_hi, grid);
    double step = std::abs(box_hi.real() - box_lo.real()) / (grid - 1);
    double rbest = radius_at(rhat);
    while (step > 1e-4) {
        bool improved = false;
        for (const Complex d : {Complex{1, 0}, Complex{-1, 0}, Complex{0, 1}, Complex{0, -1}}) {
            const Complex cand = rhat + step * d;
            const double rc = radius_at(cand);
            if (rc < rbest) {
                rbest = rc;
                rhat = cand;
                improved = true;
                break;
            }
        }
        if (!improved) step *= 0.5;
    }

    // (2) orientation mod pi from the direction of largest radius growth
    const double eps = 0.35 * std::max(rbest, 1e-3);
    double beta_star = 0.0, rmax = -1.0;
    for (int j = 0; j < 36; ++j) {
        const double beta = std::numbers::pi * j / 36.0;
        const double rb = radius_at(rhat + eps * std::exp(Complex{0.0, beta}));
        if (rb > rmax) {
            rmax = rb;
            beta_star = beta;
        }
    }

    const GeometryCoeffs geom = geometry_coeffs(make_ellipse(a, b), std::max(10, 2));
    const Complex C2 = geom.c(2);
    const MomentTable t_at_r = provider(rhat);
    const double scale = std::max(t_at_r.max_abs(), 1e-30);

    double alpha0 = beta_star;
    const Complex t2 = t_at_r.lambda(2) / (Complex{0.0, 1.0} * C2);
    if (std::abs(t2) > 1e-8 * scale) {
        // arg(t2) = 2 alpha (+ pi when omega < 0); four candidates mod pi/2,
        // disambiguated against the radius-drop direction
        const double base = 0.5 * std::arg(t2);
        double best = alpha0, bestd = 1e9;
        for (int j = 0; j < 4; ++j) {
            const double cand = base + j * std::numbers::pi / 2.0;
            const double d = std::abs(angle_diff(2.0 * cand, 2.0 * beta_star)); // compare mod pi
            if (d < bestd) {
                bestd = d;
                best = cand;
            }
        }
        alpha0 = best;
    }

    // (3) w0 from the leading moment, (4) omega from lambda_2(rhat)
    const Complex lam1 = t_at_r.lambda(1);
    const Complex mu = std::exp(Complex{0.0, -alpha0}) * lam1 / (a + b);
    Complex w0 = 2.0 * mu.real() / b + Complex{0.0, 2.0 * mu.imag() / a};
    double omega = (std::exp(Complex{0.0, -2.0 * alpha0}) * t_at_r.lambda(2) / (Complex{0.0, 1.0} * C2))
                       .real();

    // (5) Gauss-Newton polish of all six real parameters on the moment equations
    const int Nf = std::min(10, N);
    const Complex nu_a = rhat;
    const Complex nu_b = rhat + Complex{1.1, 0.6} * std::max(1.0, std::sqrt(a * a - b * b));
    const MomentTable ta = provider(nu_a), tb = provider(nu_b);
    const GeometryCoeffs geom_fit = geometry_coeffs(make_ellipse(a, b), Nf);

    auto residual_vec = [&](const Eigen::VectorXd &p) {
        Eigen::VectorXd res(4 * Nf);
        int at = 0;
        for (const auto *tp : {&ta, &tb}) {
            const auto lam = ellipse_model_moments(Complex{p(0), p(1)}, p(2), Complex{p(3), p(4)},
                                                   p(5), tp->nu, Nf, geom_fit);
            for (int n = 1; n <= Nf; ++n) {
                const Complex d = lam[static_cast<size_t>(n - 1)] - tp->lambda(n);
                res(at++) = d.real();
                res(at++) = d.imag();
            }
        }
        return res;
    };

    Eigen::VectorXd p(6);
    p << rhat.real(), rhat.imag(), alpha0, w0.real(), w0.imag(), omega;
    Eigen::VectorXd res = residual_vec(p);
    for (int it = 0; it < 60; ++it) {
        Eigen::MatrixXd J(res.size(), 6);
        for (int j = 0; j < 6; ++j) {
            const double h = 1e-7 * (1.0 + std::abs(p(j)));
            Eigen::VectorXd pj = p;
            pj(j) += h;
            J.col(j) = (residual_vec(pj) - res) / h;
        }
        Eigen::VectorXd delta = J.colPivHouseholderQr().solve(-res);
        double t = 1.0;
        Eigen::VectorXd pn = p + delta;
        Eigen::VectorXd rn = residual_vec(pn);
        for (int halve = 0; halve < 12 && rn.norm() > res.norm(); ++halve) {
            t *= 0.5;
            pn = p + t * delta;
            rn = residual_vec(pn);
        }
        const double move = (pn - p).norm();
        p = pn;
        res = rn;
        if (move < 1e-13 * (1.0 + p.norm())) break;
    }

    const Complex r_fit{p(0), p(1)};
    const double alpha_fit = wrap_angle(p(2));
    const Complex w0_fit{p(3), p(4)};
    const double omega_fit = p(5);

    DetectionResult out;
    out.r = r_fit;
    out.r_resolved = true;
    out.alpha_mod = 2;
    out.w_world = std::exp(Complex{0.0, alpha_fit}) * w0_fit;
    out.w_world_resolved = true;
    out.omega_abs = std::abs(omega_fit);
    out.omega_abs_only = false;
    out.residual = res.norm() / scale;
    out.configurations = {
        Configuration{Position{alpha_fit, r_fit}, RigidVelocity{omega_fit, w0_fit}},
        Configuration{Position{alpha_fit + std::numbers::pi, r_fit}, RigidVelocity{omega_fit, -w0_fit}},
    };
    return out;
}

} // namespace hydro
