#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "hydrodetect/shape.hpp"
#include "test_util.hpp"

using namespace hydro;

TEST_CASE("ellipse constructor and map values") {
    const ShapeSpec e = make_ellipse(2.0, 1.0);
    CHECK(e.c1() == Complex{1.5, 0.0});
    CHECK(e.coeff(-1) == Complex{0.5, 0.0});

    CHECK(std::abs(eval_map(e, Complex{1.0, 0.0}) - Complex{2.0, 0.0}) < 1e-15);
    CHECK(std::abs(eval_map(e, Complex{0.0, 1.0}) - Complex{0.0, 1.0}) < 1e-15);

    CHECK_THROWS_AS(make_ellipse(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_ellipse(1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(eval_map(e, Complex{0.5, 0.0}), std::invalid_argument);
}

TEST_CASE("arc constructor") {
    const ShapeSpec arc = make_arc(0.5);
    CHECK(std::abs(arc.coeff(-1) - Complex{0.75, 0.0}) < 1e-15);
    CHECK(std::abs(arc.coeff(-2) - Complex{0.0, -0.375}) < 1e-15);
    // f(i) = i + 0.75/(i + 0.5 i) = i - 0.5 i = 0.5 i
    CHECK(std::abs(eval_map(arc, Complex{0.0, 1.0}) - Complex{0.0, 0.5}) < 1e-12);

    // geometric tail decay with ratio h
    for (int k = -2; k >= arc.coeffs().lo() + 1; --k)
        CHECK(std::abs(arc.coeff(k - 1) / arc.coeff(k)) == doctest::Approx(0.5));

    // h -> 1: every tail coefficient collapses like 1 - h^2
    const ShapeSpec near_disk = make_arc(0.999);
    double tail_max = 0.0;
    for (int k = near_disk.coeffs().lo(); k <= -1; ++k)
        tail_max = std::max(tail_max, std::abs(near_disk.coeff(k)));
    CHECK(tail_max < 3e-3);

    CHECK_THROWS_AS(make_arc(0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_arc(1.0), std::invalid_argument);
}

TEST_CASE("segment constructor") {
    const ShapeSpec seg = make_segment(1.0, 0.0);
    CHECK(std::abs(area(seg)) < 1e-12);
    // f(e^{it}) = 2 cos t sweeps [-2, 2]
    for (double t : {0.3, 1.2, 2.8}) {
        const Complex f = eval_map(seg, std::exp(Complex{0.0, t}));
        CHECK(std::abs(f.imag()) < 1e-15);
        CHECK(std::abs(f.real() - 2.0 * std::cos(t)) < 1e-15);
    }
    // rotated segment has purely imaginary boundary
    const ShapeSpec vert = make_segment(1.0, std::numbers::pi / 2.0);
    for (double t : {0.4, 2.0}) {
        const Complex f = eval_map(vert, std::exp(Complex{0.0, t}));
        CHECK(std::abs(f.real()) < 1e-14);
    }
    CHECK(seg.degenerate());
}

TEST_CASE("c147 constructor and area guard") {
    const ShapeSpec s = make_c147(Complex{1.0, 0.0}, Complex{0.1, 0.0}, Complex{0.05, 0.0});
    CHECK(area(s) == doctest::Approx(std::numbers::pi * (1.0 - 0.04 - 0.0175)));
    CHECK(symmetry_order(s) == 1);
    CHECK_THROWS_AS(make_c147(Complex{1.0, 0.0}, Complex{0.5, 0.0}, Complex{0.3, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_c147(Complex{0.0, 0.0}, Complex{0.1, 0.0}, Complex{0.1, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("area identities") {
    CHECK(area(make_disk(1.0)) == doctest::Approx(std::numbers::pi));
    for (int trial = 0; trial < 15; ++trial) {
        const double b = testutil::uniform(0.2, 2.0);
        const double a = b + testutil::uniform(0.05, 2.0);
        CHECK(area(make_ellipse(a, b)) == doctest::Approx(std::numbers::pi * a * b).epsilon(1e-12));
    }
}

TEST_CASE("boundary sampling") {
    const auto disk_pts = boundary(make_disk(1.0), 4);
    CHECK(std::abs(disk_pts[0] - Complex{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(disk_pts[1] - Complex{0.0, 1.0}) < 1e-15);
    CHECK(std::abs(disk_pts[2] - Complex{-1.0, 0.0}) < 1e-15);
    CHECK(std::abs(disk_pts[3] - Complex{0.0, -1.0}) < 1e-15);

    const auto ell_pts = boundary(make_ellipse(2.0, 1.0), 4);
    CHECK(std::abs(ell_pts[0] - Complex{2.0, 0.0}) < 1e-15);
    CHECK(std::abs(ell_pts[1] - Complex{0.0, 1.0}) < 1e-15);

    CHECK_THROWS_AS(boundary(make_disk(1.0), 2), std::invalid_argument);

    // boundary points invert back onto the unit circle
    const ShapeSpec s = testutil::random_shape(4);
    for (const Complex &p : boundary(s, 16)) {
        const Complex w = eval_map_inverse(s, p);
        CHECK(std::abs(std::abs(w) - 1.0) < 1e-9);
    }
}

TEST_CASE("inverse map round trips") {
    for (int trial = 0; trial < 30; ++trial) {
        const ShapeSpec s = testutil::random_shape(5);
        const double rad = testutil::uniform(1.1, 5.0);
        const Complex w = rad * testutil::random_unit();
        const Complex z = eval_map(s, w);
        const Complex w2 = eval_map_inverse(s, z);
        CHECK(std::abs(w2 - w) < 1e-10 * (1.0 + std::abs(w)));
    }
}

TEST_CASE("inverse map closed form for the ellipse") {
    const ShapeSpec e = make_ellipse(2.0, 1.0);
    const Complex w = eval_map_inverse(e, Complex{3.0, 0.0});
    const double expect = (3.0 / 3.0) * (1.0 + std::sqrt(1.0 - 3.0 / 9.0));
    CHECK(std::abs(w - Complex{expect, 0.0}) < 1e-12);
}

TEST_CASE("inverse map leading asymptotics") {
    const ShapeSpec s = testutil::random_shape(5);
    const Complex z = 1e3 * s.l1() * testutil::random_unit();
    const Complex w = eval_map_inverse(s, z);
    CHECK(std::abs(w - z / s.c1()) / std::abs(w) < 1e-3);
}

TEST_CASE("inverse map rejects interior points") {
    const ShapeSpec e = make_ellipse(2.0, 1.0);
    CHECK_THROWS_AS(eval_map_inverse(e, Complex{0.0, 0.0}), InversionError);
}

TEST_CASE("symmetry order") {
    CHECK(symmetry_order(make_disk(2.0)) == 0);
    CHECK(symmetry_order(make_ellipse(2.0, 1.0)) == 2);

    CoeffSeq c;
    c.set(1, Complex{1.0, 0.0});
    c.set(-3, Complex{0.2, 0.0});
    CHECK(symmetry_order(ShapeSpec(c)) == 4);
}

TEST_CASE("spec validation") {
    CoeffSeq zero_c1;
    zero_c1.set(-1, Complex{1.0, 0.0});
    CHECK_THROWS_AS(ShapeSpec{zero_c1}, std::invalid_argument);

    CoeffSeq neg_area;
    neg_area.set(1, Complex{1.0, 0.0});
    neg_area.set(-1, Complex{1.5, 0.0});
    CHECK_THROWS_AS(ShapeSpec{neg_area}, std::invalid_argument);

    CoeffSeq bad_high;
    bad_high.set(1, Complex{1.0, 0.0});
    bad_high.set(2, Complex{0.1, 0.0});
    CHECK_THROWS_AS(ShapeSpec{bad_high}, std::invalid_argument);
}

TEST_CASE("self-intersection diagnostic") {
    CHECK_FALSE(boundary_self_intersects(make_ellipse(2.0, 1.0), 128));
}
