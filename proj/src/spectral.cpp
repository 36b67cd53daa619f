#include "hydrodetect/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hydro {

double MomentTable::max_abs() const {
    double m = 0.0;
    for (const auto &v : lambdas) m = std::max(m, std::abs(v));
    return m;
}

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

std::vector<std::vector<long long>> pascal_from_exponential(int N) {
    // M = S_N D_N has (M)_{n,n-1} = n-1 and is nilpotent; e^M = sum M^j / j!.
    // The terms M^j/j! stay integral: A_0 = I, A_{j+1} = A_j M / (j+1).
    std::vector<std::vector<long long>> acc(N, std::vector<long long>(N, 0));
    std::vector<std::vector<long long>> term = acc;
    for (int i = 0; i < N; ++i) term[i][i] = acc[i][i] = 1;
    for (int j = 1; j < N; ++j) {
        std::vector<std::vector<long long>> next(N, std::vector<long long>(N, 0));
        for (int n = 0; n < N; ++n)
            for (int k = 0; k + 1 < N; ++k)
                if (term[n][k + 1] != 0) next[n][k] = term[n][k + 1] * (k + 1) / j;
        term = std::move(next);
        for (int n = 0; n < N; ++n)
            for (int k = 0; k < N; ++k) acc[n][k] += term[n][k];
    }
    return acc;
}

namespace {

// d_j = (j+1) zeta_{j+1} for j <= -1
CoeffSeq d_sequence(const PotentialCoeffs &pc) {
    CoeffSeq d;
    for (int k = pc.zeta.lo(); k <= -1; ++k) d.set(k - 1, static_cast<double>(k) * pc.zeta.at(k));
    if (d.empty()) d.set(-1, Complex{0.0, 0.0});
    return d;
}

Complex conv_at_minus_one(const CoeffSeq &d, const CoeffSeq &cp) {
    Complex s{0.0, 0.0};
    for (int j = d.lo(); j <= d.hi(); ++j) s += d.at(j) * cp.at(-1 - j);
    return s;
}

} // namespace

GeometryCoeffs geometry_coeffs(const ShapeSpec &shape, int N) {
    if (N < 1) throw std::invalid_argument("geometry_coeffs: N must be >= 1");
    const CoeffSeq d1 = d_sequence(zeta_coeffs(shape, RigidVelocity{0.0, {1.0, 0.0}}));
    const CoeffSeq d2 = d_sequence(zeta_coeffs(shape, RigidVelocity{0.0, {0.0, 1.0}}));
    const CoeffSeq d3 = d_sequence(zeta_coeffs(shape, RigidVelocity{1.0, {0.0, 0.0}}));

    GeometryCoeffs g;
    g.A.resize(static_cast<size_t>(N));
    g.B.resize(static_cast<size_t>(N));
    g.C.resize(static_cast<size_t>(N));

    CoeffSeq cp = CoeffSeq::delta();
    for (int k = 1; k <= N; ++k) {
        cp = conv(cp, shape.coeffs());
        const Complex v1 = conv_at_minus_one(d1, cp); // -A_k + B_k
        const Complex v2 = conv_at_minus_one(d2, cp); // i(A_k + B_k)
        const Complex v3 = conv_at_minus_one(d3, cp); // i C_k
        const Complex mi{0.0, -1.0};
        const Complex Ak = (mi * v2 - v1) * 0.5;
        const Complex Bk = (mi * v2 + v1) * 0.5;
        const Complex Ck = mi * v3;
        g.A[static_cast<size_t>(k - 1)] = -Ak / static_cast<double>(k);
        g.B[static_cast<size_t>(k - 1)] = -Bk / static_cast<double>(k);
        g.C[static_cast<size_t>(k - 1)] = -Ck / static_cast<double>(k);
    }
    return g;
}

namespace {

// Enumerates ordered tuples from `sup` of length `slots` summing to `target`,
// accumulating the product of coefficients; prunes on achievable-sum windows.
void enum_tuples(const std::vector<std::pair<int, Complex>> &sup, int slots, int target,
                 Complex prefix, int min_idx, int max_idx, Complex &accum) {
    if (slots == 0) {
        if (target == 0) accum += prefix;
        return;
    }
    if (target < slots * min_idx || target > slots * max_idx) return;
    for (const auto &[idx, val] : sup)
        enum_tuples(sup, slots - 1, target - idx, prefix * val, min_idx, max_idx, accum);
}

} // namespace

GeometryCoeffs geometry_coeffs_bruteforce(const ShapeSpec &shape, int N) {
    if (N < 1 || N > 10)
        throw std::invalid_argument("geometry_coeffs_bruteforce: N out of guarded range");
    if (shape.tail_order() > 8)
        throw std::invalid_argument("geometry_coeffs_bruteforce: tail order out of guarded range");

    std::vector<std::pair<int, Complex>> sup;          // support of c
    std::vector<std::pair<int, Complex>> sup_neg;      // negative-index part
    std::vector<std::pair<int, Complex>> sup_refl;     // support of reflect(c)
    int min_idx = 1, max_idx = 1;
    for (int k : shape.coeffs().support()) {
        sup.emplace_back(k, shape.coeff(k));
        if (k <= -1) sup_neg.emplace_back(k, shape.coeff(k));
        sup_refl.emplace_back(-k, std::conj(shape.coeff(k)));
        min_idx = std::min(min_idx, k);
        max_idx = std::max(max_idx, k);
    }

    GeometryCoeffs g;
    g.A.resize(static_cast<size_t>(N));
    g.B.resize(static_cast<size_t>(N));
    g.C.resize(static_cast<size_t>(N));

    for (int k = 1; k <= N; ++k) {
        // A_k = sum_{i1 <= -1, i1+...+i_{k+1} = 0} i1 c_{i1} ... c_{i_{k+1}}
        Complex Ak{0.0, 0.0};
        for (const auto &[i1, v1] : sup_neg) {
            Complex s{0.0, 0.0};
            enum_tuples(sup, k, -i1, v1 * static_cast<double>(i1), min_idx, max_idx, s);
            Ak += s;
        }
        // B_k has conj(c_{-i1}) in the first slot, same constraint
        Complex Bk{0.0, 0.0};
        for (const auto &[i1, v1] : sup_refl) {
            if (i1 > -1) continue;
            Complex s{0.0, 0.0};
            enum_tuples(sup, k, -i1, v1 * static_cast<double>(i1), min_idx, max_idx, s);
            Bk += s;
        }
        // C_k: weight (i1+i2), constraint i1+i2 <= -1 (and the <= 0 reading,
        // which may differ only by zero-weight terms).
        Complex Ck_le_m1{0.0, 0.0}, Ck_le_0{0.0, 0.0};
        for (const auto &[i1, v1] : sup_refl) {
            for (const auto &[i2, v2] : sup) {
                const int w = i1 + i2;
                if (w > 0) continue;
                Complex s{0.0, 0.0};
                enum_tuples(sup, k, -w, v1 * v2 * static_cast<double>(w), min_idx, max_idx, s);
                Ck_le_0 += s;
                if (w <= -1) Ck_le_m1 += s;
            }
        }
        const double cscale = std::abs(Ck_le_m1) + std::abs(Ck_le_0) + 1.0;
        if (std::abs(Ck_le_m1 - Ck_le_0) > 1e-12 * cscale)
            throw std::logic_error("geometry_coeffs_bruteforce: the two C_k constraint readings disagree");

        g.A[static_cast<size_t>(k - 1)] = -Ak / static_cast<double>(k);
        g.B[static_cast<size_t>(k - 1)] = -Bk / static_cast<double>(k);
        g.C[static_cast<size_t>(k - 1)] = -Ck_le_m1 / static_cast<double>(k);
    }
    return g;
}

MomentTable moments_closed_form(const ShapeSpec &shape, const Configuration &cfg, Complex nu, int N) {
    if (N < 1) throw std::invalid_argument("moments_closed_form: N must be >= 1");
    const GeometryCoeffs g = geometry_coeffs(shape, N);
    const std::array<double, 3> U{cfg.velocity.w0.real(), cfg.velocity.w0.imag(), cfg.velocity.omega};
    const std::vector<Complex> G = gn_apply(g, U);

    const Complex u = cfg.position.r - nu;
    const Complex ea = std::exp(Complex{0.0, cfg.position.alpha});

    MomentTable t;
    t.nu = nu;
    t.lambdas.resize(static_cast<size_t>(N));
    for (int n = 1; n <= N; ++n) {
        Complex s{0.0, 0.0};
        Complex upow{1.0, 0.0}; // u^{n-k}, built from k = n downward
        Complex eak = std::pow(ea, n);
        for (int k = n; k >= 1; --k) {
            s += binom(n - 1, k - 1) * eak * upow * G[static_cast<size_t>(k - 1)];
            upow *= u;
            eak /= ea;
        }
        t.lambdas[static_cast<size_t>(n - 1)] = s;
    }
    return t;
}

MomentTable moments_contour(const PotentialFn &potential, Complex nu, int N, double radius, int Q) {
    if (Q < 16) throw std::invalid_argument("moments_contour: need Q >= 16");
    if (N < 1 || radius <= 0.0) throw std::invalid_argument("moments_contour: bad N or radius");

    std::vector<Complex> vals(static_cast<size_t>(Q));
    std::vector<Complex> phases(static_cast<size_t>(Q));
    for (int j = 0; j < Q; ++j) {
        const double th = 2.0 * std::numbers::pi * j / Q;
        const Complex e = std::exp(Complex{0.0, th});
        phases[static_cast<size_t>(j)] = e;
        vals[static_cast<size_t>(j)] = potential(nu + radius * e);
    }

    MomentTable t;
    t.nu = nu;
    t.lambdas.resize(static_cast<size_t>(N));
    for (int n = 1; n <= N; ++n) {
        Complex s{0.0, 0.0};
        for (int j = 0; j < Q; ++j) {
            // e^{in theta_j} accumulated by repeated multiplication is fine at
            // these sizes; recompute per (n, j) to keep it exact.
            s += vals[static_cast<size_t>(j)] * std::pow(phases[static_cast<size_t>(j)], n);
        }
        t.lambdas[static_cast<size_t>(n - 1)] = s * std::pow(radius, n) / static_cast<double>(Q);
    }
    return t;
}

std::vector<std::vector<Complex>> theta_matrix(Complex u, double alpha, int N) {
    if (N < 1) throw std::invalid_argument("theta_matrix: N must be >= 1");
    std::vector<std::vector<Complex>> T(static_cast<size_t>(N),
                                        std::vector<Complex>(static_cast<size_t>(N), Complex{}));
    const Complex ea = std::exp(Complex{0.0, alpha});
    for (int n = 1; n <= N; ++n)
        for (int k = 1; k <= n; ++k)
            T[static_cast<size_t>(n - 1)][static_cast<size_t>(k - 1)] =
                binom(n - 1, k - 1) * std::pow(ea, k) * std::pow(u, n - k);
    return T;
}

std::vector<Complex> invert_moments(const MomentTable &table, Complex r, double alpha) {
    const int N = table.order();
    const Complex v = table.nu - r;
    const Complex ea = std::exp(Complex{0.0, -alpha});
    std::vector<Complex> m(static_cast<size_t>(N));
    for (int n = 1; n <= N; ++n) {
        Complex s{0.0, 0.0};
        Complex vpow{1.0, 0.0};
        for (int k = n; k >= 1; --k) {
            s += binom(n - 1, k - 1) * vpow * table.lambda(k);
            vpow *= v;
        }
        m[static_cast<size_t>(n - 1)] = std::pow(ea, n) * s;
    }
    return m;
}

std::vector<Complex> gn_apply(const GeometryCoeffs &geom, const std::array<double, 3> &U) {
    const int N = geom.order();
    std::vector<Complex> out(static_cast<size_t>(N));
    for (int k = 1; k <= N; ++k) {
        const Complex Ak = geom.a(k), Bk = geom.b(k), Ck = geom.c(k);
        out[static_cast<size_t>(k - 1)] =
            (-Ak + Bk) * U[0] + Complex{0.0, 1.0} * (Ak + Bk) * U[1] + Complex{0.0, 1.0} * Ck * U[2];
    }
    return out;
}

MomentTable translate_moments(const MomentTable &table, Complex new_nu) {
    const int N = table.order();
    const Complex d = table.nu - new_nu;
    MomentTable t;
    t.nu = new_nu;
    t.lambdas.resize(static_cast<size_t>(N));
    for (int n = 1; n <= N; ++n) {
        Complex s{0.0, 0.0};
        Complex dpow{1.0, 0.0};
        for (int j = n; j >= 1; --j) {
            s += binom(n - 1, j - 1) * dpow * table.lambda(j);
            dpow *= d;
        }
        t.lambdas[static_cast<size_t>(n - 1)] = s;
    }
    return t;
}

double singularity_radius(const MomentTable &table, int j_min) {
    const int N = table.order();
    if (j_min < 1 || N < j_min + 8)
        throw std::invalid_argument("singularity_radius: need table length >= j_min + 8");
    double best = 0.0;
    for (int j = j_min; j <= N; ++j) {
        const double a = std::abs(table.lambda(j));
        if (a < 1e-14) continue;
        best = std::max(best, std::pow(a, 1.0 / j));
    }
    return best;
}

Complex localize_chebyshev(const MomentProvider &provider, Complex box_lo, Complex box_hi, int grid) {
    if (grid < 2) throw std::invalid_argument("localize_chebyshev: grid must be >= 2");
    bool any = false;
    double best_r = 0.0;
    Complex best_nu{};
    for (int iy = 0; iy < grid; ++iy) {
        for (int ix = 0; ix < grid; ++ix) {
            const Complex nu{box_lo.real() + (box_hi.real() - box_lo.real()) * ix / (grid - 1),
                             box_lo.imag() + (box_hi.imag() - box_lo.imag()) * iy / (grid - 1)};
            const MomentTable t = provider(nu);
            const int N = t.order();
            const int j_min = std::max(1, std::min(N / 2, N - 8));
            const double R = singularity_radius(t, j_min);
            if (R <= 0.0) continue;
            if (!any || R < best_r) {
                any = true;
                best_r = R;
                best_nu = nu;
            }
        }
    }
    if (!any) throw std::runtime_error("localize_chebyshev: all radii vanish (stealth potential)");
    return best_nu;
}

MomentProvider make_closed_form_provider(const ShapeSpec &shape, const Configuration &cfg, int N) {
    // geometry coefficients depend on the shape only; hoist them
    const GeometryCoeffs g = geometry_coeffs(shape, N);
    const std::array<double, 3> U{cfg.velocity.w0.real(), cfg.velocity.w0.imag(), cfg.velocity.omega};
    const std::vector<Complex> G = gn_apply(g, U);
    const Complex r = cfg.position.r;
    const double alpha = cfg.position.alpha;
    return [G, r, alpha, N](Complex nu) {
        const Complex u = r - nu;
        const Complex ea = std::exp(Complex{0.0, alpha});
        MomentTable t;
        t.nu = nu;
        t.lambdas.resize(static_cast<size_t>(N));
        for (int n = 1; n <= N; ++n) {
            Complex s{0.0, 0.0};
            Complex upow{1.0, 0.0};
            Complex eak = std::pow(ea, n);
            for (int k = n; k >= 1; --k) {
                s += binom(n - 1, k - 1) * eak * upow * G[static_cast<size_t>(k - 1)];
                upow *= u;
                eak /= ea;
            }
            t.lambdas[static_cast<size_t>(n - 1)] = s;
        }
        return t;
    };
}

MomentProvider make_contour_provider(PotentialFn potential, int N, int Q, Complex hint_center,
                                     double hint_radius) {
    return [potential = std::move(potential), N, Q, hint_center, hint_radius](Complex nu) {
        const double radius = 2.0 * (hint_radius + std::abs(hint_center - nu));
        return moments_contour(potential, nu, N, radius, Q);
    };
}

MomentProvider make_table_provider(MomentTable table) {
    return [table = std::move(table)](Complex nu) { return translate_moments(table, nu); };
}

} // namespace hydro
