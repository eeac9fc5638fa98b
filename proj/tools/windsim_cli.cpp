// Command-line front end: one subcommand per module, deterministic plot-ready
// output files, and a JSON run report on stdout.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "windsim/dynamics.hpp"
#include "windsim/evolution.hpp"
#include "windsim/field.hpp"
#include "windsim/frames.hpp"
#include "windsim/geometry.hpp"
#include "windsim/rng.hpp"
#include "windsim/stochastic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace windsim;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool verbose_logging() {
    const char* v = std::getenv("WINDSIM_LOG");
    return v != nullptr && std::string(v) != "0" && std::string(v) != "";
}

void log_info(const std::string& msg) {
    if (verbose_logging()) std::cerr << "[windsim] " << msg << "\n";
}

// 17 significant digits round-trips doubles exactly.
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t digest_bytes(const std::string& bytes) {
    return fnv1a64(bytes);
}

std::string digest_hex(std::uint64_t d) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(d));
    return buf;
}

struct RunReport {
    std::string scenario;
    json config_echo;
    std::vector<std::pair<std::string, std::string>> outputs;  // path, digest

    void write_file(const fs::path& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw io_error("cannot open output file " + path.string());
        out << content;
        if (!out) throw io_error("write failed for " + path.string());
        outputs.emplace_back(path.string(), digest_hex(digest_bytes(content)));
    }

    void emit(double wall_seconds) const {
        json rep;
        rep["scenario"] = scenario;
        rep["config"] = config_echo;
        rep["wall_time_s"] = wall_seconds;
        rep["outputs"] = json::array();
        for (const auto& [p, d] : rep_outputs()) rep["outputs"].push_back({{"path", p}, {"digest", d}});
        std::cout << rep.dump(2) << "\n";
    }

  private:
    const std::vector<std::pair<std::string, std::string>>& rep_outputs() const { return outputs; }
};

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // Report the offending line/column instead of a raw byte offset.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw config_error("malformed JSON in " + path + " at line " + std::to_string(line) +
                           ", column " + std::to_string(col) + ": " + e.what());
    }
}

std::vector<double> parse_csv_row(const std::string& line) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            row.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw config_error("bad CSV number: '" + cell + "'");
        }
    }
    return row;
}

std::vector<std::vector<double>> read_csv(const std::string& path, std::size_t columns) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open input file " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto row = parse_csv_row(line);
        if (row.size() != columns)
            throw config_error("expected " + std::to_string(columns) + " columns, got " +
                               std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    return rows;
}

dynamics::GridAxis parse_axis(const json& j) {
    if (!j.is_array() || j.size() != 3) throw config_error("region axis must be [lo, hi, n]");
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<long>()};
}

dynamics::GridRegion parse_region(const json& j) {
    dynamics::GridRegion region;
    for (const auto& a : j.at("axes")) region.axes.push_back(parse_axis(a));
    region.validate();
    return region;
}

field::FeatureSet parse_features(const json& j) {
    return field::FeatureSet::from_json_text(j.dump());
}

Vec3 parse_vec3(const json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

// ---------------------------------------------------------------------------
// wind

int run_wind(const std::string& map, const std::string& input, const fs::path& outdir,
             RunReport& report) {
    using namespace geometry;
    std::ostringstream csv;
    if (map == "cylinder") {
        auto rows = read_csv(input, 2);
        csv << "# x0,x1 -> phi,r,turns,sign\n";
        for (const auto& r : rows) {
            auto w = wind_pseudoplane_to_cylinder({r[0], r[1]});
            csv << fmt17(w.point.phi) << "," << fmt17(w.point.r) << "," << w.branch.turns << ","
                << w.branch.sign << "\n";
        }
    } else if (map == "sphere") {
        auto rows = read_csv(input, 2);
        csv << "# varphi,rho -> theta,phi\n";
        for (const auto& r : rows) {
            auto s = wind_plane_to_sphere(PolarPoint2(r[0], r[1]));
            csv << fmt17(s.thetas[0]) << "," << fmt17(s.phi) << "\n";
        }
    } else if (map == "r6") {
        auto rows = read_csv(input, 6);
        csv << "# point,k,p -> phi,r,turns,sign (one row per axis pair)\n";
        for (std::size_t idx = 0; idx < rows.size(); ++idx) {
            R6Point p;
            for (int i = 0; i < 6; ++i) p.x[i] = rows[idx][i];
            auto w = wind_r6_to_r3s3(p);
            for (int k = 0; k < 3; ++k)
                for (int q = 0; q < 3; ++q) {
                    const auto& c = w.at(k, q);
                    csv << idx << "," << (k + 1) << "," << (q + 4) << "," << fmt17(c.point.phi)
                        << "," << fmt17(c.point.r) << "," << c.branch.turns << "," << c.branch.sign
                        << "\n";
                }
        }
    } else if (map == "minkowski") {
        auto rows = read_csv(input, 4);
        csv << "# x0,x1,x2,x3 -> phi,r1,r2,r3,turns,sign\n";
        for (const auto& r : rows) {
            MinkowskiEvent e;
            for (int i = 0; i < 4; ++i) e.x[i] = r[i];
            auto w = wind_minkowski_to_r3s1(e);
            csv << fmt17(w.phi) << "," << fmt17(w.r[0]) << "," << fmt17(w.r[1]) << ","
                << fmt17(w.r[2]) << "," << w.branch.turns << "," << w.branch.sign << "\n";
        }
    } else {
        throw config_error("unknown map '" + map + "'");
    }
    report.write_file(outdir / "wound.csv", csv.str());
    return 0;
}

// ---------------------------------------------------------------------------
// metric

int run_metric(double varphi, const fs::path& outdir, RunReport& report) {
    auto metric = frames::induced_metric({varphi});
    auto frame = frames::deform_frame(frames::Frame4::standard_basis(), {varphi});
    auto g = frames::gram(frame);

    json out;
    out["varphi"] = varphi;
    out["adapted_metric"] = {{"g_tt", metric.g_tt}, {"g_rr", metric.g_rr}, {"det", metric.det2()}};
    json gram_json = json::array();
    for (int i = 0; i < 4; ++i) {
        json row = json::array();
        for (int j = 0; j < 4; ++j) row.push_back(g.entries[i][j]);
        gram_json.push_back(row);
    }
    out["gram"] = gram_json;
    out["gram_det"] = g.determinant();
    report.write_file(outdir / "metric.json", out.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// field

int run_field(const std::string& features_path, const dynamics::GridRegion& region3,
              const fs::path& outdir, RunReport& report) {
    auto fset = field::FeatureSet::from_json_file(features_path);
    std::ostringstream csv;
    csv << "# x,y,z,phi,gx,gy,gz,laplacian\n";
    const auto& ax = region3.axes;
    for (long i = 0; i < ax[0].n; ++i)
        for (long j = 0; j < ax[1].n; ++j)
            for (long k = 0; k < ax[2].n; ++k) {
                Vec3 x{ax[0].lo + (i + 0.5) * (ax[0].hi - ax[0].lo) / ax[0].n,
                       ax[1].lo + (j + 0.5) * (ax[1].hi - ax[1].lo) / ax[1].n,
                       ax[2].lo + (k + 0.5) * (ax[2].hi - ax[2].lo) / ax[2].n};
                double phi = field::potential(fset, x);
                Vec3 g = field::grad_potential(fset, x);
                double lap = field::laplacian(fset, x);
                csv << fmt17(x.x) << "," << fmt17(x.y) << "," << fmt17(x.z) << "," << fmt17(phi)
                    << "," << fmt17(g.x) << "," << fmt17(g.y) << "," << fmt17(g.z) << ","
                    << fmt17(lap) << "\n";
            }
    report.write_file(outdir / "field.csv", csv.str());
    return 0;
}

// ---------------------------------------------------------------------------
// simulate-orbit

int run_orbit(const std::string& features_path, const std::vector<double>& state, double dt,
              long steps, const std::string& scheme, const fs::path& outdir, RunReport& report) {
    auto fset = field::FeatureSet::from_json_file(features_path);
    dynamics::IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.steps = steps;
    if (scheme == "leapfrog")
        cfg.scheme = dynamics::Scheme::leapfrog;
    else if (scheme == "rk4")
        cfg.scheme = dynamics::Scheme::rk4;
    else
        throw config_error("unknown scheme '" + scheme + "'");

    dynamics::StateEuclid s0;
    s0.xi = {state[0], state[1], state[2]};
    s0.xidot = {state[3], state[4], state[5]};
    auto traj = dynamics::integrate_newtonian(fset, s0, cfg);

    std::ostringstream csv;
    csv << "# tau,x,y,z,vx,vy,vz,energy\n";
    for (const auto& s : traj.samples) {
        double energy = 0.5 * norm2(s.velocity) +
                        (fset.empty() ? 0.0 : field::potential(fset, s.position));
        csv << fmt17(s.tau) << "," << fmt17(s.position.x) << "," << fmt17(s.position.y) << ","
            << fmt17(s.position.z) << "," << fmt17(s.velocity.x) << "," << fmt17(s.velocity.y)
            << "," << fmt17(s.velocity.z) << "," << fmt17(energy) << "\n";
    }
    report.write_file(outdir / "trajectory.csv", csv.str());
    return 0;
}

// ---------------------------------------------------------------------------
// action

int run_action(const json& cfg, const fs::path& outdir, RunReport& report) {
    field::FeatureSet fset;
    if (cfg.contains("features")) fset = parse_features(cfg.at("features"));
    double time_extent = cfg.value("time_extent", 1.0);

    json out;
    if (cfg.contains("region3"))
        out["field_action"] =
            dynamics::field_action(fset, parse_region(cfg.at("region3")), time_extent);
    if (cfg.contains("region2")) {
        double varphi_const = cfg.value("varphi_const", 0.0);
        auto profile = [&](double a, double b) -> double {
            if (cfg.value("profile", "constant") == "potential-z0" && !fset.empty())
                return field::potential(fset, {a, b, 0.0});
            return varphi_const;
        };
        out["riemann_action_2d"] = dynamics::riemann_action_2d(profile, parse_region(cfg.at("region2")));
    }
    if (cfg.contains("region4")) {
        auto flux = dynamics::flux_action_4d(fset, parse_region(cfg.at("region4")));
        out["flux_integral"] = flux.flux_integral;
        out["volume_integral"] = flux.volume_integral;
    }
    report.write_file(outdir / "actions.json", out.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// walk

stochastic::LagrangianFn make_lagrangian(const json& lag, field::FeatureSet& storage) {
    std::string kind = lag.value("kind", "free");
    json params = lag.value("params", json::object());
    double offset = params.value("offset", 0.0);
    if (kind == "free") {
        return [offset](const Vec3&, const Vec3& v) { return 0.5 * norm2(v) + offset; };
    }
    if (kind == "harmonic") {
        double omega = params.value("omega", 1.0);
        return [offset, omega](const Vec3& x, const Vec3& v) {
            return 0.5 * norm2(v) - 0.5 * omega * omega * norm2(x) + offset;
        };
    }
    if (kind == "newtonian") {
        if (!params.contains("features")) throw config_error("newtonian lagrangian needs features");
        storage = field::FeatureSet::from_json_text(params.at("features").dump());
        const field::FeatureSet& fs = storage;
        return [offset, &fs](const Vec3& x, const Vec3& v) {
            return 0.5 * norm2(v) - field::potential(fs, x) + offset;
        };
    }
    throw config_error("unknown lagrangian kind '" + kind + "'");
}

int run_walk(const json& cfg, std::optional<std::uint64_t> seed_override, const fs::path& outdir,
             RunReport& report) {
    stochastic::WalkConfig wcfg;
    wcfg.h = cfg.value("h", 1.0);
    wcfg.T = cfg.value("T", 1.0);
    wcfg.mean_passage = cfg.value("mean_passage", 0.1);
    wcfg.paths = cfg.value("paths", std::size_t{1000});
    wcfg.seed = seed_override.value_or(cfg.value("seed", std::uint64_t{0}));
    wcfg.speed = cfg.value("speed", 1.0);
    if (cfg.contains("start")) wcfg.start = parse_vec3(cfg.at("start"));

    field::FeatureSet storage;
    auto lagrangian = make_lagrangian(cfg.value("lagrangian", json{{"kind", "free"}}), storage);

    std::optional<stochastic::EndpointFilter> filter;
    if (cfg.contains("endpoint")) {
        stochastic::EndpointFilter f;
        f.center = parse_vec3(cfg.at("endpoint").at("center"));
        f.radius = cfg.at("endpoint").at("radius").get<double>();
        filter = f;
    }

    auto summary = stochastic::amplitude_sum(wcfg, lagrangian, filter);
    json sj;
    sj["modulus"] = summary.modulus;
    sj["phase"] = summary.phase;
    sj["stderr"] = summary.stderr_est;
    sj["paths"] = summary.paths_total;
    sj["paths_kept"] = summary.paths_kept;
    sj["sum"] = {summary.sum.real(), summary.sum.imag()};
    sj["mean"] = {summary.mean.real(), summary.mean.imag()};
    sj["negative_phase_paths"] = summary.negative_phase_paths;
    report.write_file(outdir / "walk_summary.json", sj.dump(2) + "\n");

    std::size_t bins = cfg.value("bins", std::size_t{20});
    auto hist = stochastic::action_histogram(wcfg, lagrangian, bins, filter);
    std::ostringstream nd;
    for (const auto& b : hist.bins) {
        json row;
        row["bin_lo"] = b.lo;
        row["bin_hi"] = b.hi;
        row["modulus_sum"] = b.modulus_sum;
        row["count"] = b.count;
        nd << row.dump() << "\n";
    }
    report.write_file(outdir / "walk_histogram.ndjson", nd.str());
    return 0;
}

// ---------------------------------------------------------------------------
// evolve

int run_evolve(int sites, double dx, double angle0, double rate, double dtau, long steps,
               double noise, std::uint64_t seed, const std::vector<int>& defects,
               const std::vector<int>& walls, int stencil, bool periodic, const fs::path& outdir,
               RunReport& report) {
    evolution::EvolutionConfig ecfg;
    ecfg.dtau = dtau;
    ecfg.steps = steps;
    ecfg.rate = rate;
    ecfg.noise = noise;
    ecfg.seed = seed;
    ecfg.stencil = stencil;
    ecfg.periodic = periodic;
    ecfg.validate();

    auto lattice = evolution::make_lattice(sites, dx, angle0, noise, seed, defects, walls);

    std::ostringstream csv;
    csv << "# step,flux,defect_positions...,separation\n";
    if (defects.size() >= 2) {
        auto drift = evolution::defect_drift(lattice, ecfg);
        for (long s = 0; s < steps; ++s) {
            csv << s << "," << fmt17(drift.flux[static_cast<std::size_t>(s)]);
            const auto& pos = drift.defect_positions[static_cast<std::size_t>(s)];
            for (int p : pos) csv << "," << p;
            csv << "," << fmt17(drift.separations[static_cast<std::size_t>(s)]) << "\n";
        }
    } else {
        auto cur = lattice;
        for (long s = 0; s < steps; ++s) {
            cur = evolution::evolve_step(cur, ecfg);
            csv << s << "," << fmt17(evolution::flux_functional(cur));
            for (int d : cur.defects) csv << "," << d;
            csv << ",\n";
        }
    }
    report.write_file(outdir / "evolve.csv", csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cylinder-winding geometry and dynamics toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // let --out/--seed appear after the subcommand name

    std::string outdir_str = ".";
    std::optional<std::uint64_t> seed_override;
    app.add_option("--out", outdir_str, "output directory")->capture_default_str();
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "top-level seed override");

    // wind
    auto* wind = app.add_subcommand("wind", "apply a winding chart to CSV points");
    std::string wind_map = "cylinder", wind_in;
    wind->add_option("--map", wind_map, "sphere|cylinder|r6|minkowski")->capture_default_str();
    wind->add_option("--in", wind_in, "input CSV path")->required();

    // metric
    auto* metric = app.add_subcommand("metric", "adapted metric and Gram matrix");
    double metric_varphi = 0.0, metric_hubble = 0.0, metric_tau = 0.0;
    auto* varphi_opt = metric->add_option("--varphi", metric_varphi, "hyperbolic angle");
    auto* hubble_opt = metric->add_option("--hubble", metric_hubble, "H in varphi = H * tau");
    metric->add_option("--tau", metric_tau, "evolution parameter for varphi = H * tau");

    // field
    auto* fieldcmd = app.add_subcommand("field", "sample phi, grad phi, Laplacian on a grid");
    std::string field_features;
    std::vector<std::string> field_axes(3);
    fieldcmd->add_option("--features", field_features, "features JSON file")->required();
    fieldcmd->add_option("--grid-x", field_axes[0], "lo,hi,n")->required();
    fieldcmd->add_option("--grid-y", field_axes[1], "lo,hi,n")->required();
    fieldcmd->add_option("--grid-z", field_axes[2], "lo,hi,n")->required();

    // simulate-orbit
    auto* orbit = app.add_subcommand("simulate-orbit", "integrate feature-field point dynamics");
    std::string orbit_features, orbit_state, orbit_scheme = "leapfrog";
    double orbit_dt = 1e-3;
    long orbit_steps = 1000;
    orbit->add_option("--features", orbit_features, "features JSON file")->required();
    orbit->add_option("--state", orbit_state, "x,y,z,vx,vy,vz")->required();
    orbit->add_option("--dt", orbit_dt, "time step")->capture_default_str();
    orbit->add_option("--steps", orbit_steps, "step count")->capture_default_str();
    orbit->add_option("--scheme", orbit_scheme, "leapfrog|rk4")->capture_default_str();

    // action
    auto* action = app.add_subcommand("action", "evaluate the action functionals");
    std::string action_config;
    action->add_option("--config", action_config, "JSON config")->required();

    // walk
    auto* walk = app.add_subcommand("walk", "Markov free-passage amplitude ensemble");
    std::string walk_config;
    walk->add_option("--config", walk_config, "JSON config")->required();

    // evolve
    auto* evolve = app.add_subcommand("evolve", "relax the cylinder direction field");
    int ev_sites = 256, ev_stencil = 3;
    double ev_dx = 1.0, ev_rate = 1.0, ev_dtau = 1e-2, ev_noise = 0.0, ev_angle0 = 0.785398163397448279;
    long ev_steps = 1000;
    std::uint64_t ev_seed = 0;
    std::vector<int> ev_defects, ev_walls;
    bool ev_no_periodic = false;
    evolve->add_option("--sites", ev_sites)->capture_default_str();
    evolve->add_option("--dx", ev_dx)->capture_default_str();
    evolve->add_option("--rate", ev_rate)->capture_default_str();
    evolve->add_option("--dtau", ev_dtau)->capture_default_str();
    evolve->add_option("--steps", ev_steps)->capture_default_str();
    evolve->add_option("--noise", ev_noise)->capture_default_str();
    evolve->add_option("--angle0", ev_angle0)->capture_default_str();
    evolve->add_option("--defects", ev_defects, "defect site indices")->delimiter(',');
    evolve->add_option("--walls", ev_walls, "wall site indices")->delimiter(',');
    evolve->add_option("--stencil", ev_stencil)->capture_default_str();
    evolve->add_flag("--no-periodic", ev_no_periodic, "fixed instead of periodic boundaries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (seed_opt->count() > 0) seed_override = seed_value;

    auto started = std::chrono::steady_clock::now();
    RunReport report;
    try {
        fs::path outdir(outdir_str);
        std::error_code ec;
        fs::create_directories(outdir, ec);
        if (ec) throw io_error("cannot create output directory " + outdir_str);

        if (*wind) {
            report.scenario = "wind";
            report.config_echo = {{"map", wind_map}, {"in", wind_in}, {"out", outdir_str}};
            log_info("wind map=" + wind_map);
            run_wind(wind_map, wind_in, outdir, report);
        } else if (*metric) {
            double varphi = metric_varphi;
            if (hubble_opt->count() > 0) {
                if (varphi_opt->count() > 0)
                    throw config_error("give either --varphi or --hubble/--tau, not both");
                varphi = metric_hubble * metric_tau;  // varphi = H * tau
            }
            report.scenario = "metric";
            report.config_echo = {{"varphi", varphi}, {"out", outdir_str}};
            run_metric(varphi, outdir, report);
        } else if (*fieldcmd) {
            dynamics::GridRegion region3;
            for (const auto& s : field_axes) {
                auto vals = parse_csv_row(s);
                if (vals.size() != 3) throw config_error("grid axis must be lo,hi,n");
                region3.axes.push_back({vals[0], vals[1], static_cast<long>(vals[2])});
            }
            region3.validate();
            report.scenario = "field";
            report.config_echo = {{"features", field_features},
                                  {"grid", {field_axes[0], field_axes[1], field_axes[2]}},
                                  {"out", outdir_str}};
            run_field(field_features, region3, outdir, report);
        } else if (*orbit) {
            auto state = parse_csv_row(orbit_state);
            if (state.size() != 6) throw config_error("--state needs 6 comma-separated numbers");
            report.scenario = "simulate-orbit";
            report.config_echo = {{"features", orbit_features}, {"state", orbit_state},
                                  {"dt", orbit_dt},            {"steps", orbit_steps},
                                  {"scheme", orbit_scheme},    {"out", outdir_str}};
            run_orbit(orbit_features, state, orbit_dt, orbit_steps, orbit_scheme, outdir, report);
        } else if (*action) {
            json cfg = load_json_file(action_config);
            report.scenario = "action";
            report.config_echo = cfg;
            run_action(cfg, outdir, report);
        } else if (*walk) {
            json cfg = load_json_file(walk_config);
            report.scenario = "walk";
            report.config_echo = cfg;
            if (seed_override) report.config_echo["seed"] = *seed_override;
            run_walk(cfg, seed_override, outdir, report);
        } else if (*evolve) {
            if (seed_override) ev_seed = *seed_override;
            report.scenario = "evolve";
            report.config_echo = {{"sites", ev_sites},     {"dx", ev_dx},
                                  {"rate", ev_rate},       {"dtau", ev_dtau},
                                  {"steps", ev_steps},     {"noise", ev_noise},
                                  {"angle0", ev_angle0},   {"seed", ev_seed},
                                  {"defects", ev_defects}, {"walls", ev_walls},
                                  {"stencil", ev_stencil}, {"periodic", !ev_no_periodic},
                                  {"out", outdir_str}};
            run_evolve(ev_sites, ev_dx, ev_angle0, ev_rate, ev_dtau, ev_steps, ev_noise, ev_seed,
                       ev_defects, ev_walls, ev_stencil, !ev_no_periodic, outdir, report);
        }
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const io_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    }

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    report.emit(wall);
    return 0;
}
