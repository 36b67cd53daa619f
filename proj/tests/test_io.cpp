#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "hydrodetect/io.hpp"
#include "test_util.hpp"

using namespace hydro;
using hydro::io::json;

TEST_CASE("configuration JSON round trip") {
    const Configuration cfg{Position{1.234, Complex{0.5, -0.75}}, RigidVelocity{-0.9, Complex{0.1, 2.0}}};
    const json j = io::to_json(cfg);
    const Configuration back = io::config_from_json(j);
    CHECK(back.position.alpha == cfg.position.alpha);
    CHECK(back.position.r == cfg.position.r);
    CHECK(back.velocity.omega == cfg.velocity.omega);
    CHECK(back.velocity.w0 == cfg.velocity.w0);

    CHECK_THROWS_AS(io::config_from_json(json{{"alpha", 0.0}}), std::invalid_argument);
}

TEST_CASE("shape JSON round trip keeps the tail order") {
    const ShapeSpec arc = make_arc(0.4);
    const json j = io::to_json(arc);
    const ShapeSpec back = io::shape_from_json(j);
    CHECK(back.tail_order() == arc.tail_order());
    for (int k = arc.coeffs().lo(); k <= 1; ++k) CHECK(back.coeff(k) == arc.coeff(k));

    CHECK_THROWS_AS(io::shape_from_json(json{{"tail", json::array()}}), std::invalid_argument);
}

TEST_CASE("measurement JSON round trip is bit-exact") {
    MomentTable t;
    t.nu = Complex{0.123456789012345, -3.0};
    for (int i = 0; i < 8; ++i) t.lambdas.push_back(testutil::random_complex(2.0));
    const json j = io::to_json(t);
    const MomentTable back = io::table_from_json(j);
    CHECK(back.nu == t.nu);
    REQUIRE(back.order() == t.order());
    for (int n = 1; n <= t.order(); ++n) CHECK(back.lambda(n) == t.lambda(n));
}

TEST_CASE("time series JSONL round trip") {
    TimeSeriesMeasurement data;
    for (int i = 0; i < 4; ++i) {
        data.times.push_back(0.25 * i);
        MomentTable t;
        t.nu = Complex{2.0, 0.5};
        for (int n = 0; n < 5; ++n) t.lambdas.push_back(testutil::random_complex(1.0));
        data.tables.push_back(t);
    }
    std::stringstream ss;
    io::write_timeseries_jsonl(ss, data);
    const TimeSeriesMeasurement back = io::timeseries_from_jsonl(ss);
    REQUIRE(back.times.size() == 4);
    for (size_t i = 0; i < 4; ++i) {
        CHECK(back.times[i] == data.times[i]);
        for (int n = 1; n <= 5; ++n) CHECK(back.tables[i].lambda(n) == data.tables[i].lambda(n));
    }
}

TEST_CASE("shortest round-trip formatting") {
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(io::format_double(1.0 / 3.0) == "0.3333333333333333");
    const double v = 0.12345678901234567;
    CHECK(std::stod(io::format_double(v)) == v);
}

TEST_CASE("manifest line") {
    io::RunManifest man;
    man.subcommand = "forward";
    man.params = {{"nx", 3}};
    std::stringstream ss;
    io::write_csv_manifest_line(ss, man);
    const std::string line = ss.str();
    CHECK(line.rfind("# {", 0) == 0);
    const json j = json::parse(line.substr(2));
    CHECK(j["subcommand"] == "forward");
    CHECK(j["params"]["nx"] == 3);
}

TEST_CASE("detection result serialization") {
    DetectionResult r;
    r.configurations = {Configuration{Position{0.1, Complex{1.0, 2.0}}, RigidVelocity{0.5, Complex{0.0, 1.0}}}};
    r.r_resolved = true;
    r.alpha_mod = 2;
    r.w_world_resolved = true;
    r.residual = 1e-9;
    r.r = Complex{1.0, 2.0};
    const json j = io::to_json(r);
    CHECK(j["configurations"].size() == 1);
    CHECK(j["resolved"]["alpha_mod"] == 2);
    CHECK(j["residual"] == 1e-9);
}
