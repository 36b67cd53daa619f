#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "hydrodetect/counterx.hpp"
#include "hydrodetect/io.hpp"

namespace {

using namespace hydro;
using hydro::io::json;
using hydro::io::RunManifest;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

json load_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

Complex parse_complex(const std::string &s) {
    std::istringstream ss(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(ss >> re >> comma >> im) || comma != ',')
        throw std::invalid_argument("expected re,im but got '" + s + "'");
    return Complex{re, im};
}

int thread_count() {
    if (const char *env = std::getenv("HYDRODETECT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hc == 0 ? 1u : hc, 8u));
}

void write_text(const std::string &path, const std::string &content) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << content;
}

// ---------------------------------------------------------------- forward

struct ForwardOpts {
    std::string shape_path, config_path, out_path;
    double xmin = -4, xmax = 4, ymin = -4, ymax = 4;
    int nx = 81, ny = 81;
};

void run_forward(const ForwardOpts &o) {
    const ShapeSpec shape = io::shape_from_json(load_json(o.shape_path));
    const Configuration cfg = io::config_from_json(load_json(o.config_path));

    const int cells = o.nx * o.ny;
    std::vector<std::array<double, 4>> values(static_cast<size_t>(cells));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int idx = next.fetch_add(1);
            if (idx >= cells) return;
            const int ix = idx % o.nx, iy = idx / o.nx;
            const double x = o.nx == 1 ? o.xmin : o.xmin + (o.xmax - o.xmin) * ix / (o.nx - 1);
            const double y = o.ny == 1 ? o.ymin : o.ymin + (o.ymax - o.ymin) * iy / (o.ny - 1);
            const double nan = std::numeric_limits<double>::quiet_NaN();
            try {
                const Complex xi = eval_potential(shape, cfg, Complex{x, y});
                const Complex u = eval_fluid_velocity(shape, cfg, Complex{x, y});
                values[static_cast<size_t>(idx)] = {xi.real(), xi.imag(), u.real(), u.imag()};
            } catch (const InversionError &) {
                values[static_cast<size_t>(idx)] = {nan, nan, nan, nan};
            }
        }
    };
    std::vector<std::thread> pool;
    const int nt = thread_count();
    pool.reserve(static_cast<size_t>(nt));
    for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto &t : pool) t.join();

    std::ostringstream out;
    RunManifest man;
    man.subcommand = "forward";
    man.params = {{"shape", o.shape_path}, {"config", o.config_path},
                  {"xmin", o.xmin},        {"xmax", o.xmax},
                  {"ymin", o.ymin},        {"ymax", o.ymax},
                  {"nx", o.nx},            {"ny", o.ny}};
    io::write_csv_manifest_line(out, man);
    out << "x,y,re_xi,im_xi,re_u,im_u\n";
    for (int iy = 0; iy < o.ny; ++iy) {
        for (int ix = 0; ix < o.nx; ++ix) {
            const int idx = iy * o.nx + ix;
            const double x = o.nx == 1 ? o.xmin : o.xmin + (o.xmax - o.xmin) * ix / (o.nx - 1);
            const double y = o.ny == 1 ? o.ymin : o.ymin + (o.ymax - o.ymin) * iy / (o.ny - 1);
            const auto &v = values[static_cast<size_t>(idx)];
            out << io::format_double(x) << ',' << io::format_double(y);
            for (double c : v) out << ',' << io::format_double(c);
            out << '\n';
        }
    }
    write_text(o.out_path, out.str());
}

// ---------------------------------------------------------------- coeffs

struct CoeffsOpts {
    std::string shape_path, config_path, out_path, nu = "0,0";
    int order = 12;
    int analytic_n = 0; // when > 0: potential i/z^n instead of shape+config
};

void run_coeffs(const CoeffsOpts &o) {
    const Complex nu = parse_complex(o.nu);
    MomentTable table;
    RunManifest man;
    man.subcommand = "coeffs";
    if (o.analytic_n > 0) {
        const int n = o.analytic_n;
        const PotentialFn pot = [n](Complex z) { return Complex{0.0, 1.0} * std::pow(z, -n); };
        table = moments_contour(pot, nu, o.order, 2.0 * (1.0 + std::abs(nu)), 512);
        man.params = {{"analytic_n", n}, {"nu", o.nu}, {"order", o.order}};
    } else {
        const ShapeSpec shape = io::shape_from_json(load_json(o.shape_path));
        const Configuration cfg = io::config_from_json(load_json(o.config_path));
        table = moments_closed_form(shape, cfg, nu, o.order);
        man.params = {{"shape", o.shape_path}, {"config", o.config_path}, {"nu", o.nu}, {"order", o.order}};
    }
    json j = io::to_json(table);
    j["manifest"] = man.to_json();
    write_text(o.out_path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------- detect

struct DetectOpts {
    std::string shape_path, out_path, method = "auto", position;
    std::vector<std::string> measurement_paths;
    double box = 3.0;
    int grid = 41;
};

void run_detect(const DetectOpts &o) {
    const ShapeSpec shape = io::shape_from_json(load_json(o.shape_path));
    if (o.measurement_paths.empty()) throw std::invalid_argument("detect: need --measurement");
    std::vector<MomentTable> tables;
    for (const auto &p : o.measurement_paths) tables.push_back(io::table_from_json(load_json(p)));
    const MomentProvider provider = make_table_provider(tables.front());

    std::string method = o.method;
    if (method == "auto") {
        const auto sup = shape.coeffs().support();
        const int sym = symmetry_order(shape);
        if (sup == std::vector<int>{-7, -4, 1})
            method = "c147";
        else if (sup == std::vector<int>{-1, 1} && std::abs(shape.c1().imag()) < 1e-12 &&
                 std::abs(shape.coeff(-1).imag()) < 1e-12)
            method = "ellipse";
        else if (sym != 0 && sym % 4 == 0)
            method = "symmetric";
        else if (!o.position.empty())
            method = "velocity-only";
        else
            throw std::invalid_argument("detect: no method applies; supply --method or --position");
    }

    json out;
    RunManifest man;
    man.subcommand = "detect";
    man.params = {{"shape", o.shape_path}, {"method", method}, {"measurements", o.measurement_paths}};

    if (method == "velocity-only") {
        if (o.position.empty()) throw std::invalid_argument("detect: velocity-only needs --position re,im,alpha");
        std::istringstream ss(o.position);
        double re = 0, im = 0, alpha = 0;
        char c1 = 0, c2 = 0;
        if (!(ss >> re >> c1 >> im >> c2 >> alpha) || c1 != ',' || c2 != ',')
            throw std::invalid_argument("detect: --position must be re,im,alpha");
        const GeometryCoeffs geom = geometry_coeffs(shape, tables.front().order());
        const VelocityFit fit = recover_velocity(geom, Position{alpha, Complex{re, im}}, tables.front());
        Configuration cfg{Position{alpha, Complex{re, im}}, fit.velocity};
        DetectionResult r;
        r.configurations = {cfg};
        r.r_resolved = true;
        r.alpha_mod = 1;
        r.w_world_resolved = true;
        r.residual = fit.residual;
        r.r = cfg.position.r;
        r.w_world = fit.velocity.world(alpha);
        r.omega_abs = std::abs(fit.velocity.omega);
        out = io::to_json(r);
    } else if (method == "ellipse") {
        const double c1 = shape.c1().real(), cm1 = shape.coeff(-1).real();
        const double a = c1 + cm1, b = c1 - cm1;
        if (!(a > b && b > 0.0)) throw std::invalid_argument("detect: shape is not a valid ellipse");
        const DetectionResult r = detect_ellipse(a, b, nullptr, provider,
                                                 Complex{-o.box, -o.box}, Complex{o.box, o.box}, o.grid);
        out = io::to_json(r);
    } else if (method == "symmetric") {
        const DetectionResult r = detect_quarter_full(shape, provider);
        out = io::to_json(r);
    } else if (method == "c147") {
        const DetectionResult r = detect_c147(shape, provider);
        out = io::to_json(r);
    } else {
        throw std::invalid_argument("detect: unknown method " + method);
    }

    out["manifest"] = man.to_json();
    write_text(o.out_path, out.dump(2) + "\n");
}

// ---------------------------------------------------------------- track

struct TrackOpts {
    std::string shape_path, series_path, out_path, initial;
    double step = 1e-3;
};

void run_track(const TrackOpts &o) {
    const ShapeSpec shape = io::shape_from_json(load_json(o.shape_path));
    std::ifstream in(o.series_path);
    if (!in) throw std::invalid_argument("cannot open " + o.series_path);
    const TimeSeriesMeasurement data = io::timeseries_from_jsonl(in);

    std::istringstream ss(o.initial);
    double re = 0, im = 0, alpha = 0;
    char c1 = 0, c2 = 0;
    if (!(ss >> re >> c1 >> im >> c2 >> alpha) || c1 != ',' || c2 != ',')
        throw std::invalid_argument("track: --initial must be re,im,alpha");

    const Trajectory traj = track(shape, Position{alpha, Complex{re, im}}, data, o.step);

    std::ostringstream out;
    RunManifest man;
    man.subcommand = "track";
    man.params = {{"shape", o.shape_path}, {"series", o.series_path}, {"initial", o.initial}, {"step", o.step}};
    io::write_csv_manifest_line(out, man);
    out << "t,re_r,im_r,alpha,re_w,im_w,omega\n";
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const Complex w = traj.velocities[i].world(traj.poses[i].alpha);
        out << io::format_double(traj.times[i]) << ',' << io::format_double(traj.poses[i].r.real())
            << ',' << io::format_double(traj.poses[i].r.imag()) << ','
            << io::format_double(traj.poses[i].alpha) << ',' << io::format_double(w.real()) << ','
            << io::format_double(w.imag()) << ',' << io::format_double(traj.velocities[i].omega)
            << '\n';
    }
    write_text(o.out_path, out.str());
}

// ---------------------------------------------------------------- counterexample

struct CounterOpts {
    int n = 6;
    double omega = 0.7, rho = 0.9, level = -2.5;
    int resolution = 512;
    std::string out_prefix = "counterexample";
};

void run_counterexample(const CounterOpts &o) {
    const auto family = build_family(o.n, o.omega, o.rho, o.level, o.resolution);
    const FamilyReport rep = verify_family(family);

    RunManifest man;
    man.subcommand = "counterexample";
    man.params = {{"n", o.n}, {"omega", o.omega}, {"rho", o.rho}, {"level", o.level},
                  {"resolution", o.resolution}};

    for (size_t k = 0; k < family.size(); ++k) {
        std::ostringstream out;
        io::write_csv_manifest_line(out, man);
        out << "x,y\n";
        for (const Complex &p : family[k].boundary)
            out << io::format_double(p.real()) << ',' << io::format_double(p.imag()) << '\n';
        write_text(o.out_prefix + "_member" + std::to_string(k + 1) + ".csv", out.str());
    }

    json centers = json::array();
    for (const auto &m : family) centers.push_back(io::complex_to_json(m.s));
    json j{{"manifest", man.to_json()},
           {"members", family.size()},
           {"level_used", family.front().level},
           {"level_negated", family.front().level != o.level},
           {"centers", centers},
           {"dirichlet_max", rep.dirichlet_max},
           {"slip_max", rep.slip_max},
           {"potential_max", rep.potential_max},
           {"hausdorff_max", rep.hausdorff_max},
           {"annulus", {rep.min_radius, rep.max_radius}}};
    write_text(o.out_prefix + "_report.json", j.dump(2) + "\n");
}

// ---------------------------------------------------------------- stealth

struct StealthOpts {
    std::string shape_path, w0 = "0,0", out_path;
    double omega = 0.0;
};

int run_stealth(const StealthOpts &o) {
    const ShapeSpec shape = io::shape_from_json(load_json(o.shape_path));
    const StealthVerdict v = classify_stealth(shape, RigidVelocity{o.omega, parse_complex(o.w0)});
    std::cout << to_string(v) << "\n";
    if (!o.out_path.empty()) {
        RunManifest man;
        man.subcommand = "stealth";
        man.params = {{"shape", o.shape_path}, {"omega", o.omega}, {"w0", o.w0}};
        json j{{"manifest", man.to_json()}, {"verdict", to_string(v)}};
        write_text(o.out_path, j.dump(2) + "\n");
    }
    return kExitOk;
}

// ---------------------------------------------------------------- repro

void repro_family(const std::string &dir, const std::string &name, int n, double omega, double rho,
                  double level, int resolution) {
    CounterOpts o;
    o.n = n;
    o.omega = omega;
    o.rho = rho;
    o.level = level;
    o.resolution = resolution;
    o.out_prefix = dir + "/" + name;
    run_counterexample(o);
}

void repro_fig4(const std::string &dir) {
    // body-frame potential of the a=2, b=1 ellipse, w0 = e^{i pi/3}, omega = -2
    const ShapeSpec shape = make_ellipse(2.0, 1.0);
    const Configuration cfg{Position{0.0, Complex{0.0, 0.0}},
                            RigidVelocity{-2.0, std::exp(Complex{0.0, std::numbers::pi / 3.0})}};
    ForwardOpts o;
    o.nx = 161;
    o.ny = 161;
    o.xmin = -4;
    o.xmax = 4;
    o.ymin = -4;
    o.ymax = 4;
    // write shape/config next to the field so the run is reproducible
    write_text(dir + "/fig4_shape.json", io::to_json(shape).dump(2) + "\n");
    write_text(dir + "/fig4_config.json", io::to_json(cfg).dump(2) + "\n");
    o.shape_path = dir + "/fig4_shape.json";
    o.config_path = dir + "/fig4_config.json";
    o.out_path = dir + "/fig4_field.csv";
    run_forward(o);
}

void repro_prop64(const std::string &dir) {
    CoeffSeq c;
    c.set(1, Complex{1.0, 0.0});
    c.set(-3, Complex{0.2, 0.0});
    c.set(-7, Complex{0.05, 0.0});
    const ShapeSpec shape{c};
    const Configuration truth{Position{0.9, Complex{0.4, -0.7}},
                              RigidVelocity{1.3, Complex{0.5, 0.25}}};
    const MomentProvider provider = make_closed_form_provider(shape, truth, 16);
    const DetectionResult partial = detect_quarter_symmetric(shape, provider);
    const DetectionResult full = detect_quarter_full(shape, provider);
    json j{{"shape", io::to_json(shape)},
           {"truth", io::to_json(truth)},
           {"partial", io::to_json(partial)},
           {"full", io::to_json(full)}};
    RunManifest man;
    man.subcommand = "repro";
    man.params = {{"artifact", "prop64-demo"}};
    j["manifest"] = man.to_json();
    write_text(dir + "/prop64_demo.json", j.dump(2) + "\n");
}

void repro_sec63(const std::string &dir) {
    const ShapeSpec shape = make_c147(Complex{1.0, 0.3}, Complex{0.08, -0.05}, Complex{0.03, 0.02});
    const std::vector<Configuration> cases{
        Configuration{Position{1.1, Complex{0.3, 0.2}}, RigidVelocity{0.8, Complex{0.6, -0.4}}},
        Configuration{Position{2.3, Complex{-0.5, 0.1}}, RigidVelocity{0.0, Complex{0.7, 0.2}}},
        Configuration{Position{4.0, Complex{0.2, -0.6}}, RigidVelocity{-1.1, Complex{0.0, 0.0}}},
    };
    json arr = json::array();
    for (const auto &truth : cases) {
        const MomentProvider provider = make_closed_form_provider(shape, truth, 10);
        const DetectionResult res = detect_c147(shape, provider);
        arr.push_back(json{{"truth", io::to_json(truth)}, {"recovered", io::to_json(res)}});
    }
    RunManifest man;
    man.subcommand = "repro";
    man.params = {{"artifact", "sec63-demo"}};
    json j{{"shape", io::to_json(shape)}, {"cases", arr}, {"manifest", man.to_json()}};
    write_text(dir + "/sec63_demo.json", j.dump(2) + "\n");
}

void repro_thm14(const std::string &dir) {
    const ShapeSpec shape = make_ellipse(2.0, 1.0);
    PosePath path;
    path.r = [](double t) { return 0.5 * std::exp(Complex{0.0, t}); };
    path.dr = [](double t) { return Complex{0.0, 0.5} * std::exp(Complex{0.0, t}); };
    path.alpha = [](double t) { return 0.3 * t; };
    path.dalpha = [](double) { return 0.3; };
    std::vector<double> times(200);
    for (int i = 0; i < 200; ++i) times[static_cast<size_t>(i)] = i / 199.0;
    const Complex nu{2.0, 0.5};
    const TimeSeriesMeasurement data = synthesize_timeseries(shape, path, nu, 12, times);
    write_text(dir + "/thm14_shape.json", io::to_json(shape).dump(2) + "\n");
    {
        std::ofstream out(dir + "/thm14_series.jsonl");
        io::write_timeseries_jsonl(out, data);
    }
    TrackOpts o;
    o.shape_path = dir + "/thm14_shape.json";
    o.series_path = dir + "/thm14_series.jsonl";
    o.out_path = dir + "/thm14_trajectory.csv";
    o.initial = "0.5,0,0";
    o.step = 1e-3;
    run_track(o);

    // error summary against the analytic path
    std::ifstream in(dir + "/thm14_series.jsonl");
    const Trajectory traj = track(shape, Position{0.0, Complex{0.5, 0.0}}, data, 1e-3);
    double max_err = 0.0;
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        max_err = std::max(max_err, std::abs(traj.poses[i].r - path.r(t)) +
                                        std::abs(angle_diff(traj.poses[i].alpha, path.alpha(t))));
    }
    RunManifest man;
    man.subcommand = "repro";
    man.params = {{"artifact", "thm14-demo"}};
    json j{{"max_pose_error", max_err}, {"manifest", man.to_json()}};
    write_text(dir + "/thm14_summary.json", j.dump(2) + "\n");
}

void run_repro(const std::string &artifact, const std::string &dir) {
    if (artifact == "fig1")
        repro_family(dir, "fig1", 2, 1.0, 1.0, 1.0, 512);
    else if (artifact == "fig2")
        repro_family(dir, "fig2", 2, 0.5, 1.2, 0.8, 512);
    else if (artifact == "fig3")
        repro_family(dir, "fig3", 6, 0.7, 0.9, -2.5, 512);
    else if (artifact == "fig4")
        repro_fig4(dir);
    else if (artifact == "prop64-demo")
        repro_prop64(dir);
    else if (artifact == "sec63-demo")
        repro_sec63(dir);
    else if (artifact == "thm14-demo")
        repro_thm14(dir);
    else
        throw std::invalid_argument("repro: unknown artifact " + artifact);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Potential-flow forward solver and rigid-solid detection toolkit"};
    app.require_subcommand(1);

    ForwardOpts fo;
    auto *fwd = app.add_subcommand("forward", "Evaluate the complex potential and fluid velocity on a grid");
    fwd->add_option("--shape", fo.shape_path, "shape JSON")->required();
    fwd->add_option("--config", fo.config_path, "configuration JSON")->required();
    fwd->add_option("--xmin", fo.xmin);
    fwd->add_option("--xmax", fo.xmax);
    fwd->add_option("--ymin", fo.ymin);
    fwd->add_option("--ymax", fo.ymax);
    fwd->add_option("--nx", fo.nx);
    fwd->add_option("--ny", fo.ny);
    fwd->add_option("--out", fo.out_path, "output CSV")->required();

    CoeffsOpts co;
    auto *cf = app.add_subcommand("coeffs", "Emit a moment measurement file");
    cf->add_option("--shape", co.shape_path, "shape JSON");
    cf->add_option("--config", co.config_path, "configuration JSON");
    cf->add_option("--nu", co.nu, "expansion point re,im");
    cf->add_option("--order", co.order, "number of moments");
    cf->add_option("--analytic-n", co.analytic_n, "use the potential i/z^n instead of a shape");
    cf->add_option("--out", co.out_path, "output JSON")->required();

    DetectOpts dopt;
    auto *det = app.add_subcommand("detect", "Recover position and velocity from measurements");
    det->add_option("--shape", dopt.shape_path, "shape JSON")->required();
    det->add_option("--measurement", dopt.measurement_paths, "measurement JSON (repeatable)")->required();
    det->add_option("--method", dopt.method, "auto|ellipse|symmetric|c147|velocity-only");
    det->add_option("--position", dopt.position, "re,im,alpha for velocity-only");
    det->add_option("--box", dopt.box, "half-width of the localization box");
    det->add_option("--grid", dopt.grid, "localization grid");
    det->add_option("--out", dopt.out_path, "output JSON")->required();

    TrackOpts to;
    auto *trk = app.add_subcommand("track", "Integrate the pose from a measurement time series");
    trk->add_option("--shape", to.shape_path, "shape JSON")->required();
    trk->add_option("--series", to.series_path, "JSONL time series")->required();
    trk->add_option("--initial", to.initial, "initial pose re,im,alpha")->required();
    trk->add_option("--step", to.step, "integration step");
    trk->add_option("--out", to.out_path, "output CSV")->required();

    CounterOpts xo;
    auto *cx = app.add_subcommand("counterexample", "Build a non-detectability family");
    cx->add_option("--n", xo.n, "harmonic order (and member count)");
    cx->add_option("--omega", xo.omega);
    cx->add_option("--rho", xo.rho);
    cx->add_option("--level", xo.level);
    cx->add_option("--resolution", xo.resolution);
    cx->add_option("--out-prefix", xo.out_prefix);

    StealthOpts so;
    auto *st = app.add_subcommand("stealth", "Classify a shape/velocity pair");
    st->add_option("--shape", so.shape_path, "shape JSON")->required();
    st->add_option("--omega", so.omega);
    st->add_option("--w0", so.w0, "body-frame velocity re,im");
    st->add_option("--out", so.out_path, "optional JSON report");

    std::string artifact, out_dir = ".";
    auto *rp = app.add_subcommand("repro", "Reproduce a named artifact");
    rp->add_option("artifact", artifact, "fig1|fig2|fig3|fig4|prop64-demo|sec63-demo|thm14-demo")
        ->required();
    rp->add_option("--out-dir", out_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*fwd) run_forward(fo);
        else if (*cf) run_coeffs(co);
        else if (*det) run_detect(dopt);
        else if (*trk) run_track(to);
        else if (*cx) run_counterexample(xo);
        else if (*st) return run_stealth(so);
        else if (*rp) run_repro(artifact, out_dir);
        return kExitOk;
    } catch (const std::invalid_argument &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const hydro::io::json::exception &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception &e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
