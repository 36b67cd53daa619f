#include "hydrodetect/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace hydro::io {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json &j, const std::string &what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument(what + ": expected [re, im]");
    return Complex{j[0].get<double>(), j[1].get<double>()};
}

json to_json(const Configuration &cfg) {
    return json{{"alpha", cfg.position.alpha},
                {"r", complex_to_json(cfg.position.r)},
                {"omega", cfg.velocity.omega},
                {"w0", complex_to_json(cfg.velocity.w0)}};
}

Configuration config_from_json(const json &j) {
    for (const char *key : {"alpha", "r", "omega", "w0"})
        if (!j.contains(key)) throw std::invalid_argument(std::string("configuration: missing ") + key);
    if (!j["alpha"].is_number() || !j["omega"].is_number())
        throw std::invalid_argument("configuration: alpha and omega must be numbers");
    return Configuration{Position{j["alpha"].get<double>(), complex_from_json(j["r"], "r")},
                         RigidVelocity{j["omega"].get<double>(), complex_from_json(j["w0"], "w0")}};
}

json to_json(const ShapeSpec &shape) {
    json tail = json::array();
    for (int k = -1; k >= shape.coeffs().lo(); --k) tail.push_back(complex_to_json(shape.coeff(k)));
    return json{{"c1", complex_to_json(shape.c1())}, {"tail", tail}};
}

ShapeSpec shape_from_json(const json &j) {
    if (!j.contains("c1")) throw std::invalid_argument("shape: missing c1");
    CoeffSeq c;
    c.set(1, complex_from_json(j["c1"], "c1"));
    if (j.contains("tail")) {
        if (!j["tail"].is_array()) throw std::invalid_argument("shape: tail must be an array");
        int k = -1;
        for (const auto &e : j["tail"]) {
            c.set(k, complex_from_json(e, "tail entry"));
            --k;
        }
    }
    return ShapeSpec(c);
}

json to_json(const MomentTable &table) {
    json lams = json::array();
    for (const auto &l : table.lambdas) lams.push_back(complex_to_json(l));
    return json{{"nu", complex_to_json(table.nu)}, {"lambdas", lams}};
}

MomentTable table_from_json(const json &j) {
    if (!j.contains("nu") || !j.contains("lambdas"))
        throw std::invalid_argument("measurement: missing nu or lambdas");
    if (!j["lambdas"].is_array()) throw std::invalid_argument("measurement: lambdas must be an array");
    MomentTable t;
    t.nu = complex_from_json(j["nu"], "nu");
    for (const auto &e : j["lambdas"]) t.lambdas.push_back(complex_from_json(e, "lambda"));
    return t;
}

json to_json(const DetectionResult &result) {
    json cfgs = json::array();
    for (const auto &c : result.configurations) cfgs.push_back(to_json(c));
    json resolved{{"r", result.r_resolved},
                  {"alpha_mod", result.alpha_mod},
                  {"w_world", result.w_world_resolved},
                  {"omega_abs_only", result.omega_abs_only}};
    json out{{"configurations", cfgs},
             {"resolved", resolved},
             {"residual", result.residual},
             {"r", complex_to_json(result.r)},
             {"w_world", complex_to_json(result.w_world)},
             {"omega_abs", result.omega_abs}};
    if (!result.note.empty()) out["note"] = result.note;
    return out;
}

TimeSeriesMeasurement timeseries_from_jsonl(std::istream &in) {
    TimeSeriesMeasurement data;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const json j = json::parse(line);
        if (!j.contains("t") || !j["t"].is_number())
            throw std::invalid_argument("time series: each line needs a numeric t");
        data.times.push_back(j["t"].get<double>());
        data.tables.push_back(table_from_json(j));
    }
    if (data.times.size() < 2) throw std::invalid_argument("time series: need at least 2 samples");
    return data;
}

void write_timeseries_jsonl(std::ostream &out, const TimeSeriesMeasurement &data) {
    for (size_t i = 0; i < data.times.size(); ++i) {
        json j = to_json(data.tables[i]);
        j["t"] = data.times[i];
        out << j.dump() << "\n";
    }
}

json RunManifest::to_json() const {
    return json{{"tool", version}, {"subcommand", subcommand}, {"params", params}};
}

void write_csv_manifest_line(std::ostream &out, const RunManifest &m) {
    out << "# " << m.to_json().dump() << "\n";
}

} // namespace hydro::io
