#include "ptlab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ptlab/errors.hpp"
#include "ptlab/navier_stokes.hpp"
#include "ptlab/output.hpp"
#include "ptlab/parallel.hpp"
#include "ptlab/stability.hpp"

namespace ptlab::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string extension(Format f) { return f == Format::Csv ? ".csv" : ".json"; }

// Steps of size dt covering length; throws unless they fit to 1e-9 relative.
int steps_for(double length, double dt, const char* what) {
    if (!(dt > 0.0)) throw ConfigError(std::string(what) + " must be positive");
    const double ratio = length / dt;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio)
        throw ConfigError(std::string(what) + " " + format_real(dt) + " does not divide the slice length " +
                          format_real(length));
    return static_cast<int>(rounded);
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory " + dir.string());
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    os << content;
    if (!os) throw std::runtime_error("failed to write " + path.string());
}

std::string layer_file_stem(const Scheme& s) {
    if (s.kind == Scheme::Kind::Parareal) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "parareal_k%02d", s.iterations);
        return buf;
    }
    return s.kind == Scheme::Kind::CoarseSerial ? "coarse_serial" : "fine_serial";
}

std::string cavity_file_stem(int nx, double nu, double dt_coarse) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "cavity_nx%d_nu%g_dtc%g", nx, nu, 1.0 / dt_coarse);
    return buf;
}

template <typename T>
std::vector<T> json_list(const nlohmann::json& v) {
    if (!v.is_array()) return {v.get<T>()};
    return v.get<std::vector<T>>();
}

double json_real(const nlohmann::json& v) { return v.is_string() ? parse_real(v.get<std::string>()) : v.get<double>(); }

std::vector<double> json_reals(const nlohmann::json& v) {
    std::vector<double> out;
    if (!v.is_array()) return {json_real(v)};
    for (const auto& x : v) out.push_back(json_real(x));
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// configuration

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::Stability: return "stability";
        case Experiment::Cavity: return "cavity";
        case Experiment::Speedup: return "speedup";
    }
    return "unknown";
}

std::string to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

double parse_real(const std::string& text) {
    auto parse_one = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw ConfigError("not a number: '" + text + "'");
        }
        if (used != s.size()) throw ConfigError("not a number: '" + text + "'");
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) return parse_one(text);
    const double den = parse_one(text.substr(slash + 1));
    if (den == 0.0) throw ConfigError("zero denominator in '" + text + "'");
    return parse_one(text.substr(0, slash)) / den;
}

void ExperimentConfig::validate() const {
    if (workers == 0) throw ConfigError("workers must be at least 1");
    switch (experiment) {
        case Experiment::Stability: {
            stability_decomposition().validate();
            if (resolution < 2) throw ConfigError("resolution must be at least 2");
            if (!(re_min <= re_max) || !(im_min <= im_max)) throw ConfigError("lambda window must satisfy min <= max");
            for (int k : iter_counts)
                if (k < 1 || k > stability_slices) throw ConfigError("iteration counts must lie in [1, slices]");
            break;
        }
        case Experiment::Cavity: {
            if (nx.empty() || nu.empty() || dt_coarse.empty()) throw ConfigError("cavity grids must not be empty");
            for (int n : nx) CavityConfig{n, 1.0, lid_velocity, poisson_tol}.validate();
            for (double v : nu) CavityConfig{4, v, lid_velocity, poisson_tol}.validate();
            for (double dt : dt_coarse) cavity_decomposition(dt).validate();
            if (max_iter < 0 || max_iter > slices) throw ConfigError("max_iter must lie in [0, slices]");
            break;
        }
        case Experiment::Speedup: {
            if (slices <= 0) throw ConfigError("slices must be positive");
            if (speedup_iters.empty()) throw ConfigError("speedup needs at least one iteration count (--iters)");
            for (int k : speedup_iters)
                if (k <= 0) throw ConfigError("iteration counts must be positive");
            const bool have_costs = !cost_ratios.empty() || (cost_fine && cost_coarse) || measure_costs;
            if (!have_costs)
                throw ConfigError("speedup needs --cost-ratio, both --cost-fine and --cost-coarse, or --measure");
            for (double r : cost_ratios)
                if (!(r > 0.0)) throw ConfigError("cost ratios must be positive");
            if ((cost_fine && !(*cost_fine > 0.0)) || (cost_coarse && !(*cost_coarse > 0.0)))
                throw ConfigError("costs must be positive");
            if (measure_costs) {
                if (nx.empty() || nu.empty() || dt_coarse.empty())
                    throw ConfigError("--measure needs a cavity configuration");
                cavity_decomposition(dt_coarse.front()).validate();
            }
            break;
        }
    }
}

SliceDecomposition ExperimentConfig::stability_decomposition() const {
    return {stability_t_end, stability_slices, coarse_steps, fine_steps};
}

SliceDecomposition ExperimentConfig::cavity_decomposition(double dt_coarse_value) const {
    if (!(t_end > 0.0) || slices <= 0) throw ConfigError("t_end and slices must be positive");
    const double len = t_end / slices;
    return {t_end, slices, steps_for(len, dt_coarse_value, "dt_coarse"), steps_for(len, dt_fine, "dt_fine")};
}

json to_json(const ExperimentConfig& c) {
    json doc;
    doc["experiment"] = to_string(c.experiment);
    doc["format"] = to_string(c.format);
    doc["workers"] = c.workers;
    doc["stability"] = {{"re_min", c.re_min},
                        {"re_max", c.re_max},
                        {"im_min", c.im_min},
                        {"im_max", c.im_max},
                        {"resolution", c.resolution},
                        {"iter_counts", c.iter_counts},
                        {"t_end", c.stability_t_end},
                        {"slices", c.stability_slices},
                        {"coarse_steps", c.coarse_steps},
                        {"fine_steps", c.fine_steps}};
    doc["cavity"] = {{"nx", c.nx},
                     {"nu", c.nu},
                     {"dt_coarse", c.dt_coarse},
                     {"dt_fine", c.dt_fine},
                     {"t_end", c.t_end},
                     {"slices", c.slices},
                     {"max_iter", c.max_iter},
                     {"lid_velocity", c.lid_velocity},
                     {"poisson_tol", c.poisson_tol}};
    json speed{{"iters", c.speedup_iters}, {"cost_ratios", c.cost_ratios}, {"measure", c.measure_costs}};
    speed["cost_fine"] = c.cost_fine ? json(*c.cost_fine) : json(nullptr);
    speed["cost_coarse"] = c.cost_coarse ? json(*c.cost_coarse) : json(nullptr);
    doc["speedup"] = speed;
    return doc;
}

ExperimentConfig from_json(const nlohmann::json& doc, ExperimentConfig c) {
    try {
        if (doc.contains("experiment")) {
            const auto e = doc["experiment"].get<std::string>();
            if (e == "stability") c.experiment = Experiment::Stability;
            else if (e == "cavity") c.experiment = Experiment::Cavity;
            else if (e == "speedup") c.experiment = Experiment::Speedup;
            else throw ConfigError("unknown experiment '" + e + "'");
        }
        if (doc.contains("format")) {
            const auto f = doc["format"].get<std::string>();
            if (f == "csv") c.format = Format::Csv;
            else if (f == "json") c.format = Format::Json;
            else throw ConfigError("unknown format '" + f + "'");
        }
        if (doc.contains("out")) c.out_dir = doc["out"].get<std::string>();
        if (doc.contains("workers")) c.workers = doc["workers"].get<unsigned>();
        if (doc.contains("stability")) {
            const auto& s = doc["stability"];
            if (s.contains("re_min")) c.re_min = json_real(s["re_min"]);
            if (s.contains("re_max")) c.re_max = json_real(s["re_max"]);
            if (s.contains("im_min")) c.im_min = json_real(s["im_min"]);
            if (s.contains("im_max")) c.im_max = json_real(s["im_max"]);
            if (s.contains("resolution")) c.resolution = s["resolution"].get<int>();
            if (s.contains("iter_counts")) c.iter_counts = json_list<int>(s["iter_counts"]);
            if (s.contains("t_end")) c.stability_t_end = json_real(s["t_end"]);
            if (s.contains("slices")) c.stability_slices = s["slices"].get<int>();
            if (s.contains("coarse_steps")) c.coarse_steps = s["coarse_steps"].get<int>();
            if (s.contains("fine_steps")) c.fine_steps = s["fine_steps"].get<int>();
        }
        if (doc.contains("cavity")) {
            const auto& s = doc["cavity"];
            if (s.contains("nx")) c.nx = json_list<int>(s["nx"]);
            if (s.contains("nu")) c.nu = json_reals(s["nu"]);
            if (s.contains("dt_coarse")) c.dt_coarse = json_reals(s["dt_coarse"]);
            if (s.contains("dt_fine")) c.dt_fine = json_real(s["dt_fine"]);
            if (s.contains("t_end")) c.t_end = json_real(s["t_end"]);
            if (s.contains("slices")) c.slices = s["slices"].get<int>();
            if (s.contains("max_iter")) c.max_iter = s["max_iter"].get<int>();
            if (s.contains("lid_velocity")) c.lid_velocity = json_real(s["lid_velocity"]);
            if (s.contains("poisson_tol")) c.poisson_tol = json_real(s["poisson_tol"]);
        }
        if (doc.contains("speedup")) {
            const auto& s = doc["speedup"];
            if (s.contains("iters")) c.speedup_iters = json_list<int>(s["iters"]);
            if (s.contains("cost_ratios")) c.cost_ratios = json_reals(s["cost_ratios"]);
            if (s.contains("measure")) c.measure_costs = s["measure"].get<bool>();
            if (s.contains("cost_fine") && !s["cost_fine"].is_null()) c.cost_fine = json_real(s["cost_fine"]);
            if (s.contains("cost_coarse") && !s["cost_coarse"].is_null()) c.cost_coarse = json_real(s["cost_coarse"]);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config file: ") + e.what());
    }
    return c;
}

// ---------------------------------------------------------------------------
// stability

int cmd_stability(const ExperimentConfig& config, std::ostream& log) {
    config.validate();
    ensure_dir(config.out_dir);
    const SliceDecomposition decomp = config.stability_decomposition();

    StabilityGrid grid;
    try {
        grid = sweep({config.re_min, config.re_max}, {config.im_min, config.im_max}, config.resolution,
                     config.iter_counts, decomp, SweepOptions{config.workers});
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        log << "stability sweep failed: " << e.what() << '\n';
        return kExitFailure;
    }

    json manifest;
    manifest["config"] = to_json(config);
    manifest["decomposition"] = {{"t_end", decomp.t_end},
                                 {"n_slices", decomp.n_slices},
                                 {"coarse_step", decomp.coarse_step()},
                                 {"fine_step", decomp.fine_step()}};
    auto& layers = manifest["layers"] = json::array();
    for (std::size_t s = 0; s < grid.schemes.size(); ++s) {
        const std::string file = "stability_" + layer_file_stem(grid.schemes[s]) + extension(config.format);
        std::ostringstream os;
        if (config.format == Format::Csv) write_stability_csv(os, grid, s);
        else write_stability_json(os, grid, s);
        write_file(config.out_dir / file, os.str());
        layers.push_back({{"scheme", grid.schemes[s].label()},
                          {"file", file},
                          {"stable_points", grid.stable_count(s)},
                          {"total_points", grid.re_samples.size() * grid.im_samples.size()}});
        log << grid.schemes[s].label() << ": " << grid.stable_count(s) << " stable points -> " << file << '\n';
    }
    write_file(config.out_dir / "stability_manifest.json", manifest.dump(2) + "\n");
    return kExitOk;
}

// ---------------------------------------------------------------------------
// cavity

int cmd_cavity(const ExperimentConfig& config, std::ostream& log) {
    config.validate();
    ensure_dir(config.out_dir);

    struct Case {
        int nx;
        double nu;
        double dt_coarse;
        std::vector<ConvergenceRow> rows;
        std::string status = "pending";
        std::string message;
    };
    std::vector<Case> cases;
    for (int n : config.nx)
        for (double v : config.nu)
            for (double dt : config.dt_coarse) cases.push_back({n, v, dt, {}, "pending", ""});

    const unsigned outer = std::min<unsigned>(config.workers, static_cast<unsigned>(cases.size()));
    const unsigned inner = outer > 1 ? 1u : config.workers;
    std::mutex log_mutex;

    parallel_for(cases.size(), outer, [&](std::size_t idx) {
        Case& c = cases[idx];
        const CavityConfig cav{c.nx, c.nu, config.lid_velocity, config.poisson_tol};
        const SliceDecomposition decomp = config.cavity_decomposition(c.dt_coarse);
        try {
            const CavityParareal result = run_cavity_parareal(cav, decomp, config.max_iter, {inner, std::nullopt});
            for (std::size_t k = 0; k < result.run.errors.size(); ++k)
                c.rows.push_back({c.nx, c.nu, decomp.coarse_step(), decomp.fine_step(), static_cast<int>(k),
                                  result.run.errors[k], false});
            c.status = "ok";
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            c.rows = {{c.nx, c.nu, decomp.coarse_step(), decomp.fine_step(), -1,
                       std::numeric_limits<double>::quiet_NaN(), true}};
            c.status = "unstable";
            c.message = e.what();
        }
        std::lock_guard lock(log_mutex);
        log << "nx=" << c.nx << " nu=" << format_real(c.nu) << " dt_coarse=" << format_real(c.dt_coarse) << ": "
            << c.status;
        if (!c.rows.empty() && !c.rows.back().flagged_unstable) log << ", e^K=" << format_real(c.rows.back().error);
        if (!c.message.empty()) log << " (" << c.message << ")";
        log << '\n';
    });

    json manifest;
    manifest["config"] = to_json(config);
    auto& entries = manifest["cases"] = json::array();
    std::size_t failed = 0;
    for (const Case& c : cases) {
        const std::string file = cavity_file_stem(c.nx, c.nu, c.dt_coarse) + extension(config.format);
        std::ostringstream os;
        if (config.format == Format::Csv) write_convergence_csv(os, c.rows);
        else write_convergence_json(os, c.rows);
        write_file(config.out_dir / file, os.str());
        if (c.status != "ok") ++failed;
        entries.push_back({{"nx", c.nx},
                           {"nu", c.nu},
                           {"dt_coarse", c.dt_coarse},
                           {"status", c.status},
                           {"message", c.message},
                           {"file", file}});
    }
    write_file(config.out_dir / "cavity_manifest.json", manifest.dump(2) + "\n");
    return failed == cases.size() ? kExitFailure : kExitOk;
}

// ---------------------------------------------------------------------------
// speedup

int cmd_speedup(const ExperimentConfig& config, std::ostream& log) {
    config.validate();
    ensure_dir(config.out_dir);

    std::vector<double> ratios = config.cost_ratios;
    json measured = nullptr;
    if (config.cost_fine && config.cost_coarse) ratios.push_back(*config.cost_fine / *config.cost_coarse);
    if (config.measure_costs) {
        const CavityConfig cav{config.nx.front(), config.nu.front(), config.lid_velocity, config.poisson_tol};
        const SliceDecomposition decomp = config.cavity_decomposition(config.dt_coarse.front());
        try {
            const CavityProblem problem(cav);
            const SplitRhs rhs = problem.rhs();
            const PropagatorSpec fine{Method::Rk3Explicit, decomp.fine_step(), rhs};
            const PropagatorSpec coarse{Method::ImexEuler, decomp.coarse_step(), rhs};
            const StateVector u0 = problem.initial_state();
            auto time_it = [&](const PropagatorSpec& spec, int steps) {
                propagate(spec, u0, 0.0, decomp.boundary(1), steps);  // warm-up (factorizations)
                const auto t0 = std::chrono::steady_clock::now();
                propagate(spec, u0, 0.0, decomp.boundary(1), steps);
                return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            };
            const double cf = time_it(fine, decomp.fine_steps_per_slice);
            const double cg = time_it(coarse, decomp.coarse_steps_per_slice);
            ratios.push_back(cf / cg);
            measured = {{"nx", cav.n_x}, {"nu", cav.nu}, {"cost_fine", cf}, {"cost_coarse", cg}};
            log << "measured C_F=" << format_real(cf) << "s C_G=" << format_real(cg) << "s\n";
        } catch (const std::exception& e) {
            log << "cost measurement failed: " << e.what() << '\n';
            return kExitFailure;
        }
    }

    std::vector<SpeedupRow> rows;
    for (int k : config.speedup_iters)
        for (double r : ratios) rows.push_back({config.slices, k, r, speedup_bound(config.slices, k, r, 1.0)});

    const std::string file = std::string("speedup") + extension(config.format);
    std::ostringstream os;
    if (config.format == Format::Csv) write_speedup_csv(os, rows);
    else write_speedup_json(os, rows);
    write_file(config.out_dir / file, os.str());

    json manifest;
    manifest["config"] = to_json(config);
    manifest["measured"] = measured;
    manifest["file"] = file;
    write_file(config.out_dir / "speedup_manifest.json", manifest.dump(2) + "\n");
    for (const auto& r : rows)
        log << "N=" << r.n_slices << " N_it=" << r.n_iter << " C_F/C_G=" << format_real(r.cost_ratio)
            << " -> s <= " << format_real(r.bound) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// driver

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Parareal stability and driven-cavity convergence experiments"};

    std::string experiment, config_path, out_dir, format;
    std::vector<std::string> nu, dt_coarse, cost_ratio, iters;
    std::vector<int> nx;
    std::string dt_fine, cost_fine, cost_coarse, t_end;
    int slices = 0, max_iter = 0, resolution = 0, coarse_steps = 0, fine_steps = 0;
    unsigned workers = 0;
    double re_min = 0, re_max = 0, im_min = 0, im_max = 0;
    bool measure = false;

    app.add_option("--experiment", experiment, "stability | cavity | speedup")->check(
        CLI::IsMember({"stability", "cavity", "speedup"}));
    app.add_option("--config", config_path, "JSON configuration file");
    auto* o_out = app.add_option("--out", out_dir, "output directory");
    auto* o_format = app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    auto* o_workers = app.add_option("--workers", workers, "concurrent worker threads");
    auto* o_nu = app.add_option("--nu", nu, "viscosities")->delimiter(',');
    auto* o_nx = app.add_option("--nx", nx, "grid points per axis")->delimiter(',');
    auto* o_dtc = app.add_option("--dt-coarse", dt_coarse, "coarse step sizes (e.g. 1/200)")->delimiter(',');
    auto* o_dtf = app.add_option("--dt-fine", dt_fine, "fine step size");
    auto* o_slices = app.add_option("--slices", slices, "number of time slices");
    auto* o_tend = app.add_option("--t-end", t_end, "final time");
    auto* o_iter = app.add_option("--max-iter", max_iter, "Parareal iterations (cavity)");
    auto* o_iters = app.add_option("--iters", iters, "iteration counts (stability layers / speedup rows)")->delimiter(',');
    auto* o_res = app.add_option("--resolution", resolution, "stability samples per axis");
    auto* o_remin = app.add_option("--re-min", re_min, "lower real part of the lambda window");
    auto* o_remax = app.add_option("--re-max", re_max, "upper real part of the lambda window");
    auto* o_immin = app.add_option("--im-min", im_min, "lower imaginary part of the lambda window");
    auto* o_immax = app.add_option("--im-max", im_max, "upper imaginary part of the lambda window");
    auto* o_cs = app.add_option("--coarse-steps", coarse_steps, "coarse steps per slice (stability)");
    auto* o_fs = app.add_option("--fine-steps", fine_steps, "fine steps per slice (stability)");
    auto* o_ratio = app.add_option("--cost-ratio", cost_ratio, "C_F/C_G values")->delimiter(',');
    auto* o_cf = app.add_option("--cost-fine", cost_fine, "C_F");
    auto* o_cg = app.add_option("--cost-coarse", cost_coarse, "C_G");
    app.add_flag("--measure", measure, "time one coarse and one fine slice of the cavity problem");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        ExperimentConfig config;
        if (const char* env = std::getenv(kOutDirEnv); env && *env) config.out_dir = env;
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) throw ConfigError("cannot read config file " + config_path);
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(is);
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(std::string("config file: ") + e.what());
            }
            config = from_json(doc, config);
        }
        if (!experiment.empty()) config = from_json({{"experiment", experiment}}, config);
        if (experiment.empty() && config_path.empty()) throw ConfigError("--experiment or --config is required");
        if (o_out->count()) config.out_dir = out_dir;
        if (o_format->count()) config = from_json({{"format", format}}, config);
        if (o_workers->count()) config.workers = workers;

        auto reals = [](const std::vector<std::string>& v) {
            std::vector<double> r;
            for (const auto& s : v) r.push_back(parse_real(s));
            return r;
        };
        if (o_nu->count()) config.nu = reals(nu);
        if (o_nx->count()) config.nx = nx;
        if (o_dtc->count()) config.dt_coarse = reals(dt_coarse);
        if (o_dtf->count()) config.dt_fine = parse_real(dt_fine);
        if (o_slices->count()) {
            config.slices = slices;
            config.stability_slices = slices;
        }
        if (o_tend->count()) {
            config.t_end = parse_real(t_end);
            config.stability_t_end = config.t_end;
        }
        if (o_iter->count()) config.max_iter = max_iter;
        if (o_iters->count()) {
            std::vector<int> ks;
            for (const auto& s : iters) {
                const double v = parse_real(s);
                if (v != std::floor(v)) throw ConfigError("iteration counts must be integers");
                ks.push_back(static_cast<int>(v));
            }
            config.iter_counts = ks;
            config.speedup_iters = ks;
        }
        if (o_res->count()) config.resolution = resolution;
        if (o_remin->count()) config.re_min = re_min;
        if (o_remax->count()) config.re_max = re_max;
        if (o_immin->count()) config.im_min = im_min;
        if (o_immax->count()) config.im_max = im_max;
        if (o_cs->count()) config.coarse_steps = coarse_steps;
        if (o_fs->count()) config.fine_steps = fine_steps;
        if (o_ratio->count()) config.cost_ratios = reals(cost_ratio);
        if (o_cf->count()) config.cost_fine = parse_real(cost_fine);
        if (o_cg->count()) config.cost_coarse = parse_real(cost_coarse);
        if (measure) config.measure_costs = true;

        switch (config.experiment) {
            case Experiment::Stability: return cmd_stability(config, out);
            case Experiment::Cavity: return cmd_cavity(config, out);
            case Experiment::Speedup: return cmd_speedup(config, out);
        }
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace ptlab::cli
