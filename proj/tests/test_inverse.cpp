#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "hydrodetect/inverse.hpp"
#include "test_util.hpp"

using namespace hydro;

namespace {

ShapeSpec quarter_shape() {
    CoeffSeq c;
    c.set(1, Complex{1.0, 0.0});
    c.set(-3, Complex{0.2, 0.0});
    c.set(-7, Complex{0.05, 0.0});
    return ShapeSpec(c);
}

} // namespace

TEST_CASE("recover_velocity round trips") {
    for (int trial = 0; trial < 15; ++trial) {
        ShapeSpec s = testutil::random_shape(5);
        while (s.tail_order() == 0) s = testutil::random_shape(5); // skip disks
        const Configuration cfg = testutil::random_config();
        const int N = 12;
        const MomentTable t = moments_closed_form(s, cfg, testutil::random_complex(2.0), N);
        const GeometryCoeffs g = geometry_coeffs(s, N);
        const VelocityFit fit = recover_velocity(g, cfg.position, t);
        CHECK(std::abs(fit.velocity.w0 - cfg.velocity.w0) < 1e-8);
        CHECK(std::abs(fit.velocity.omega - cfg.velocity.omega) < 1e-8);
        CHECK(fit.residual < 1e-10 * (1.0 + t.max_abs()));
    }
}

TEST_CASE("recover_velocity: zero data gives zero velocity") {
    const ShapeSpec s = make_ellipse(2.0, 1.0);
    MomentTable t;
    t.nu = Complex{0.0, 0.0};
    t.lambdas.assign(12, Complex{0.0, 0.0});
    const VelocityFit fit = recover_velocity(geometry_coeffs(s, 12), Position{0.3, Complex{1.0, 0.0}}, t);
    CHECK(std::abs(fit.velocity.w0) < 1e-14);
    CHECK(std::abs(fit.velocity.omega) < 1e-14);
}

TEST_CASE("recover_velocity: rotating-disk shape is rank deficient") {
    const ShapeSpec d = make_disk(1.0);
    MomentTable t;
    t.nu = Complex{0.0, 0.0};
    t.lambdas.assign(12, Complex{0.0, 0.0});
    CHECK_THROWS_AS(recover_velocity(geometry_coeffs(d, 12), Position{0.0, Complex{0.0, 0.0}}, t),
                    std::runtime_error);
}

TEST_CASE("recover_velocity flags a wrong position") {
    const ShapeSpec s = make_ellipse(2.0, 1.0);
    const Configuration cfg{Position{0.4, Complex{0.5, -0.2}}, RigidVelocity{1.0, Complex{0.8, 0.3}}};
    const MomentTable t = moments_closed_form(s, cfg, Complex{0.0, 0.0}, 12);
    const Position wrong{cfg.position.alpha, cfg.position.r + Complex{0.1, 0.0}};
    const VelocityFit fit = recover_velocity(geometry_coeffs(s, 12), wrong, t);
    CHECK(fit.residual > 1e-2);
}

TEST_CASE("bezout angle") {
    const double alpha = 0.7;
    const Complex e3 = std::exp(Complex{0.0, 3.0 * alpha});
    const Complex e5 = std::exp(Complex{0.0, 5.0 * alpha});
    CHECK(bezout_angle({{3, e3}, {5, e5}}) == doctest::Approx(alpha).epsilon(1e-12));

    const double beta = 4.1;
    CHECK(bezout_angle({{1, std::exp(Complex{0.0, beta})}}) == doctest::Approx(beta).epsilon(1e-12));

    CHECK_THROWS_AS(bezout_angle({{2, Complex{1.0, 0.0}}, {4, Complex{1.0, 0.0}}}), std::runtime_error);
    CHECK_THROWS_AS(bezout_angle({{3, Complex{2.0, 0.0}}, {5, Complex{1.0, 0.0}}}), std::runtime_error);
}

TEST_CASE("quarter-symmetric partial detection round trips") {
    const ShapeSpec s = quarter_shape();
    for (int trial = 0; trial < 12; ++trial) {
        Configuration cfg = testutil::random_config();
        if (trial % 4 == 0) cfg.velocity.w0 = Complex{0.0, 0.0}; // pure-rotation branch
        if (std::abs(cfg.velocity.omega) < 0.1) cfg.velocity.omega = 0.7;

        const MomentProvider provider = make_closed_form_provider(s, cfg, 12);
        const DetectionResult res = detect_quarter_symmetric(s, provider);

        CHECK(res.r_resolved);
        CHECK(std::abs(res.r - cfg.position.r) < 1e-8);
        CHECK(std::abs(res.w_world - cfg.velocity.world(cfg.position.alpha)) < 1e-8);
        CHECK(res.omega_abs == doctest::Approx(std::abs(cfg.velocity.omega)).epsilon(1e-8));
        CHECK(res.omega_abs_only);
        CHECK(res.alpha_mod == 0);
    }
}

TEST_CASE("quarter-symmetric r is nu-independent") {
    const ShapeSpec s = quarter_shape();
    const Configuration cfg{Position{1.1, Complex{0.7, -0.4}}, RigidVelocity{0.9, Complex{0.5, 0.2}}};
    const MomentProvider provider = make_closed_form_provider(s, cfg, 12);
    // the defining relation lambda_1 (nu - r) + lambda_2(nu) = 0 at any nu
    for (const Complex nu : {Complex{0.0, 0.0}, Complex{2.0, 0.0}, Complex{0.0, 1.0}}) {
        const MomentTable t = provider(nu);
        const Complex r = nu + t.lambda(2) / t.lambda(1);
        CHECK(std::abs(r - cfg.position.r) < 1e-10);
    }
}

TEST_CASE("quarter-symmetric full detection resolves the class") {
    const ShapeSpec s = quarter_shape();
    for (int trial = 0; trial < 10; ++trial) {
        Configuration cfg = testutil::random_config();
        if (std::abs(cfg.velocity.omega) < 0.1) cfg.velocity.omega = -0.8;
        if (trial % 3 == 0) cfg.velocity.omega = 0.0; // A/B-pair route

        const MomentProvider provider = make_closed_form_provider(s, cfg, 16);
        const DetectionResult res = detect_quarter_full(s, provider);

        REQUIRE(res.alpha_mod == 4);
        REQUIRE(res.configurations.size() == 4);
        bool found = false;
        for (const auto &cand : res.configurations)
            if (equivalent(cand, cfg, 4)) found = true;
        CHECK(found);
        CHECK(res.residual < 1e-8);

        // recovered unit phasors were sane: members pairwise equivalent
        for (const auto &cand : res.configurations) CHECK(equivalent(cand, res.configurations[0], 4));
    }
}

TEST_CASE("quarter-symmetric full detection falls back without a coefficient pair") {
    CoeffSeq c;
    c.set(1, Complex{1.0, 0.0});
    c.set(-7, Complex{0.1, 0.0});
    const ShapeSpec s{c};
    const Configuration cfg{Position{0.9, Complex{0.3, 0.3}}, RigidVelocity{1.2, Complex{0.0, 0.0}}};
    const MomentProvider provider = make_closed_form_provider(s, cfg, 12);
    const DetectionResult res = detect_quarter_full(s, provider);
    CHECK(res.alpha_mod == 0);
    CHECK_FALSE(res.note.empty());
    CHECK(std::abs(res.r - cfg.position.r) < 1e-8);
}

TEST_CASE("c147 detection across the three cases") {
    for (int trial = 0; trial < 6; ++trial) {
        const Complex c1 = (0.9 + 0.3 * testutil::uniform(0.0, 1.0)) * testutil::random_unit();
        const Complex cm4 = 0.1 * testutil::random_unit();
        const Complex cm7 = 0.04 * testutil::random_unit();
        const ShapeSpec s = make_c147(c1, cm4, cm7);

        for (int mode = 0; mode < 3; ++mode) {
            Configuration cfg = testutil::random_config();
            if (std::abs(cfg.velocity.omega) < 0.1) cfg.velocity.omega = 1.1;
            if (std::abs(cfg.velocity.w0) < 0.1) cfg.velocity.w0 = Complex{0.6, -0.3};
            if (mode == 1) cfg.velocity.omega = 0.0;
            if (mode == 2) cfg.velocity.w0 = Complex{0.0, 0.0};

            const MomentProvider provider = make_closed_form_provider(s, cfg, 8);
            const DetectionResult res = detect_c147(s, provider);

            REQUIRE(res.configurations.size() == 1);
            const Configuration &got = res.configurations.front();
            CHECK(std::abs(got.position.r - cfg.position.r) < 1e-6);
            CHECK(std::abs(angle_diff(got.position.alpha, cfg.position.alpha)) < 1e-6);
            CHECK(std::abs(got.velocity.w0 - cfg.velocity.w0) < 1e-6);
            CHECK(std::abs(got.velocity.omega - cfg.velocity.omega) < 1e-6);
        }
    }
}

TEST_CASE("c147 detection rejects other shapes") {
    const MomentProvider dummy = [](Complex nu) {
        MomentTable t;
        t.nu = nu;
        t.lambdas.assign(8, Complex{1.0, 0.0});
        return t;
    };
    CHECK_THROWS_AS(detect_c147(make_ellipse(2.0, 1.0), dummy), std::invalid_argument);
}

TEST_CASE("ellipse detection recovers the figure-4 class") {
    const double a = 2.0, b = 1.0;
    const ShapeSpec e = make_ellipse(a, b);
    const Configuration cfg{Position{0.0, Complex{0.0, 0.0}},
                            RigidVelocity{-2.0, std::exp(Complex{0.0, std::numbers::pi / 3.0})}};
    const MomentProvider provider = make_closed_form_provider(e, cfg, 40);
    const DetectionResult res = detect_ellipse(a, b, nullptr, provider);

    REQUIRE(res.configurations.size() == 2);
    bool found = false;
    for (const auto &cand : res.configurations) {
        if (std::abs(cand.position.r - cfg.position.r) < 1e-3 &&
            std::abs(angle_diff(cand.position.alpha, cfg.position.alpha)) < 1e-3 &&
            std::abs(cand.velocity.w0 - cfg.velocity.w0) < 1e-3 &&
            std::abs(cand.velocity.omega - cfg.velocity.omega) < 1e-3)
            found = true;
    }
    CHECK(found);
    CHECK(equivalent(res.configurations[0], res.configurations[1], 2));
}

TEST_CASE("ellipse detection: pure translation keeps omega at zero") {
    const double a = 2.0, b = 1.0;
    const ShapeSpec e = make_ellipse(a, b);
    const Configuration cfg{Position{0.0, Complex{0.4, 0.8}}, RigidVelocity{0.0, Complex{1.0, 0.0}}};
    const MomentProvider provider = make_closed_form_provider(e, cfg, 40);
    const DetectionResult res = detect_ellipse(a, b, nullptr, provider);
    CHECK(std::abs(res.configurations.front().velocity.omega) < 1e-6);
    CHECK(std::abs(res.configurations.front().position.r - cfg.position.r) < 1e-3);
}

TEST_CASE("ellipse detection input guards") {
    CHECK_THROWS_AS(detect_ellipse(1.0, 1.0, nullptr, nullptr), std::invalid_argument);
    CHECK_THROWS_AS(detect_ellipse(2.0, 1.0, nullptr, nullptr), std::invalid_argument);
}
