// Command-line laboratory: soliton fields, the exact multisoliton solver,
// Lax spectra, scattering, time evolution and resolution experiments, all
// driven by flat "key = value" config files and emitting CSV/JSON.

#include "bolab/engine.hpp"
#include "bolab/evolution.hpp"
#include "bolab/io.hpp"
#include "bolab/lax.hpp"
#include "bolab/resolution.hpp"
#include "bolab/scattering.hpp"
#include "bolab/soliton.hpp"
#include "bolab/version.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bolab;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    int threads = 0;
};

struct RunContext {
    std::string command;
    Config cfg;
    std::string out_dir;
    int threads = 0;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    std::string out_path(const std::string& name) {
        const std::string p = out_dir + "/" + name;
        outputs.push_back(p);
        return p;
    }

    void write_manifest() {
        json m;
        m["command"] = command;
        m["version"] = version;
        json kv = json::object();
        for (const auto& [k, v] : cfg.entries()) kv[k] = v;
        m["config"] = kv;
        m["outputs"] = outputs;
        const auto dur = std::chrono::steady_clock::now() - started;
        m["duration_seconds"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(dur).count() / 1000.0;
        for (const std::string& p : outputs)
            if (!fs::exists(p)) throw io_error("manifest: missing output " + p);
        write_file_atomic(out_dir + "/manifest.json", m.dump(2) + "\n");
    }
};

Grid1D grid_from(const Config& cfg, double def_box = 200.0, long def_n = 4096) {
    const double box = cfg.get_double("box", def_box);
    const long n = cfg.get_int("n", def_n);
    return Grid1D::centered(box, static_cast<int>(n));
}

std::vector<double> times_from(const Config& cfg) {
    if (cfg.has("times")) {
        std::vector<double> t = cfg.get_list("times");
        for (size_t i = 1; i < t.size(); ++i)
            if (t[i] <= t[i - 1]) throw config_error("times must be strictly increasing");
        return t;
    }
    if (cfg.has("t_min") && cfg.has("t_max") && cfg.has("t_count"))
        return geometric_range(cfg.get_double("t_min"), cfg.get_double("t_max"),
                               static_cast<int>(cfg.get_int("t_count")));
    throw config_error("need either times = a,b,... or t_min/t_max/t_count");
}

/// Initial data selector shared by spectrum/scatter/evolve.
SampledField field_from(const Config& cfg, const Grid1D& g) {
    if (cfg.has("poles")) {
        int dropped = 0;
        SolitonFamily fam = read_pole_file(cfg.get("poles"), &dropped);
        if (dropped > 0)
            std::cerr << "note: dropped " << dropped << " pole(s) with Im p = 0\n";
        return family_field(fam, cfg.get_double("t", 0.0), g,
                            cfg.get_double("tail_tol", 1e-10))
            .field;
    }
    if (cfg.has("gaussian_amp")) {
        const double a = cfg.get_double("gaussian_amp");
        const double w = cfg.get_double("gaussian_width", 1.0);
        return SampledField::sample(g, [&](double x) { return a * std::exp(-(x / w) * (x / w)); });
    }
    throw config_error("need initial data: poles = FILE or gaussian_amp/gaussian_width");
}

int cmd_soliton(RunContext& ctx) {
    const Grid1D g = grid_from(ctx.cfg);
    int dropped = 0;
    SolitonFamily fam = read_pole_file(ctx.cfg.get("poles"), &dropped);
    if (dropped > 0) std::cerr << "note: dropped " << dropped << " pole(s) with Im p = 0\n";
    const double t = ctx.cfg.get_double("t", 0.0);
    const FamilyFieldResult r =
        family_field(fam, t, g, ctx.cfg.get_double("tail_tol", 1e-10), ctx.threads);
    CsvWriter csv(ctx.out_path("profile.csv"), {"x", "u"});
    for (int j = 0; j < g.n; ++j) csv.row({g.x(j), r.field.values[j].real()});
    csv.close();
    std::cout << "poles used: " << r.truncation_index << ", tail bound: " << r.tail_bound
              << "\n";
    return 0;
}

int cmd_exact(RunContext& ctx) {
    const Grid1D g = grid_from(ctx.cfg);
    const AsymptoticSpectrum spec = read_spectrum_file(ctx.cfg.get("spectrum"));
    const std::vector<double> times = times_from(ctx.cfg);
    const double c2 = ctx.cfg.get_double("order2_constant", 1.0);

    std::vector<double> xs(g.n);
    for (int j = 0; j < g.n; ++j) xs[j] = g.x(j);

    CsvWriter ecsv(ctx.out_path("exact.csv"), {"t", "x", "u"});
    CsvWriter dcsv(ctx.out_path("diagnostics.csv"), {"t", "order1_max", "order2_bound"});
    for (double t : times) {
        const std::vector<double> u = exact_field(spec, t, xs, ctx.threads);
        for (int j = 0; j < g.n; ++j) ecsv.row({t, xs[j], u[j]});
        double o1 = 0.0;
        for (int j = 0; j < g.n; j += std::max(1, g.n / 256))
            o1 = std::max(o1, std::abs(neumann_term(spec, t, xs[j], 1)));
        const double o2 =
            (t > 0.0 && spec.size() > 0) ? second_order_bound(spec, spec.size(), t, c2) : 0.0;
        dcsv.row({t, o1, o2});
    }
    ecsv.close();
    dcsv.close();
    return 0;
}

int cmd_spectrum(RunContext& ctx) {
    const Grid1D g = grid_from(ctx.cfg);
    const SampledField u0 = field_from(ctx.cfg, g);
    const int M = static_cast<int>(ctx.cfg.get_int("m", 1024));
    const double eps = ctx.cfg.get_double("epsilon", 0.0);

    const SpectrumResult s = discrete_spectrum(u0, eps, M, ctx.threads);
    const TraceIdentity tr = trace_identity(u0, eps, M, ctx.threads);
    write_spectrum_csv(s, eps > 0.0 ? eps : 5.0 * g.dxi(), ctx.out_path("spectrum.csv"));
    json j;
    j["lhs"] = tr.lhs;
    j["rhs"] = tr.rhs;
    j["gap"] = tr.gap;
    j["negative_count"] = s.negative_part.size();
    write_file_atomic(ctx.out_path("trace.json"), j.dump(2) + "\n");
    return 0;
}

int cmd_scatter(RunContext& ctx) {
    const Grid1D g = grid_from(ctx.cfg);
    const SampledField u0 = field_from(ctx.cfg, g);
    SweepOptions opt;
    opt.lambda_max = ctx.cfg.get_double("lambda_max", 0.0);
    opt.jost.tol = ctx.cfg.get_double("tol", 1e-10);
    opt.jost.max_iter = static_cast<int>(ctx.cfg.get_int("max_iter", 200));

    const DistortedSpectrum zs = zeta_sweep(u0, opt, ctx.threads);
    write_zeta_csv(zs, ctx.out_path("zeta.csv"));
    const SampledField uinf = radiation_profile(u0, zs);
    CsvWriter csv(ctx.out_path("radiation.csv"), {"x", "u"});
    for (int j = 0; j < g.n; ++j) csv.row({g.x(j), uinf.values[j].real()});
    csv.close();
    return 0;
}

int cmd_evolve(RunContext& ctx) {
    const Grid1D g = grid_from(ctx.cfg);
    const SampledField u0 = field_from(ctx.cfg, g);
    EvolveOptions opt;
    opt.dt = ctx.cfg.get_double("dt", 0.0);
    opt.dealias = ctx.cfg.get_double("dealias", 2.0 / 3.0);
    opt.conservation_tol = ctx.cfg.get_double("conservation_tol", 1e-6);

    const Trajectory traj = bo_evolve(u0, times_from(ctx.cfg), opt);
    for (const std::string& f : write_trajectory(traj, ctx.out_dir))
        ctx.outputs.push_back(f);
    return 0;
}

int cmd_resolve(RunContext& ctx) {
    const std::string mode = ctx.cfg.get("experiment", "interaction");
    const std::vector<double> times = times_from(ctx.cfg);
    const Grid1D g = grid_from(ctx.cfg);

    ErrorCurve l2curve, lcurve;
    std::vector<double> lambdas;
    std::unique_ptr<SpectralLaw> law;

    if (mode == "interaction") {
        AsymptoticSpectrum spec;
        if (ctx.cfg.has("spectrum")) {
            spec = read_spectrum_file(ctx.cfg.get("spectrum"));
        } else {
            law = std::make_unique<SpectralLaw>(ctx.cfg.get_double("c1", 1.0),
                                                ctx.cfg.get_double("c2", 1.0),
                                                ctx.cfg.get_double("alpha", 2.0));
            spec = law->spectrum(ctx.cfg.get_int("n_total", 50));
        }
        lambdas = spec.lambdas;
        lcurve = measure_interaction_error(spec, times, g, ctx.threads);
        l2curve.norm_kind = "L2";
        l2curve.times = times;
        std::vector<double> xs(g.n);
        for (int j = 0; j < g.n; ++j) xs[j] = g.x(j);
        for (double t : times) {
            const std::vector<double> u = exact_field(spec, t, xs, ctx.threads);
            double acc = 0.0;
            for (int j = 0; j < g.n; ++j) {
                const double d = u[j] - soliton_sum(spec, t, xs[j]);
                acc += d * d;
            }
            l2curve.errors.push_back(std::sqrt(acc * g.dx()));
        }
    } else if (mode == "radiation") {
        const SampledField u0 = field_from(ctx.cfg, g);
        RadiationOptions opt;
        opt.sweep.lambda_max = ctx.cfg.get_double("lambda_max", 0.0);
        opt.evolve.dt = ctx.cfg.get_double("dt", 0.0);
        const RadiationResult r = radiation_experiment(u0, times, opt, ctx.threads);
        l2curve = r.l2;
        lcurve = r.linf;
    } else {
        throw config_error("experiment must be interaction or radiation");
    }

    CsvWriter ecsv(ctx.out_path("errors.csv"), {"t", "err_l2", "err_linf"});
    for (size_t i = 0; i < times.size(); ++i)
        ecsv.row({times[i], l2curve.errors[i], lcurve.errors[i]});
    ecsv.close();

    CsvWriter bcsv(ctx.out_path("bounds.csv"), {"t", "n_star", "bound"});
    for (double t : times) {
        if (t <= 0.0) continue;
        const MinimaxResult mb = law ? minimax_bound(*law, t)
                                     : (lambdas.empty() ? MinimaxResult{0, 0.0}
                                                        : minimax_bound(lambdas, t));
        bcsv.row({t, static_cast<double>(mb.n_star), mb.bound});
    }
    bcsv.close();

    json fit = json::object();
    bool fitted = false;
    try {
        const DecayFit f = fit_decay(lcurve);
        fit["slope"] = f.slope;
        fit["intercept"] = f.intercept;
        fit["r_squared"] = f.r_squared;
        fitted = true;
    } catch (const std::invalid_argument&) {
        fit["error"] = "curve not fittable (zero errors or too few points)";
    }
    write_file_atomic(ctx.out_path("fit.json"), fit.dump(2) + "\n");
    return fitted ? 0 : 0;
}

int cmd_fit(RunContext& ctx) {
    const std::string input = ctx.cfg.get("input");
    const std::string column = ctx.cfg.get("column", "err_linf");
    std::ifstream in(input);
    if (!in) throw config_error("cannot open " + input);
    std::string header;
    if (!std::getline(in, header)) throw io_error("empty csv: " + input);

    std::vector<std::string> cols;
    std::stringstream hs(header);
    std::string cell;
    while (std::getline(hs, cell, ',')) cols.push_back(cell);
    int tcol = -1, ecol = -1;
    for (size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == "t") tcol = static_cast<int>(i);
        if (cols[i] == column) ecol = static_cast<int>(i);
    }
    if (tcol < 0 || ecol < 0) throw config_error("fit: columns t/" + column + " not found");

    ErrorCurve curve;
    curve.norm_kind = column;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::vector<double> vals;
        while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
        curve.times.push_back(vals.at(tcol));
        curve.errors.push_back(vals.at(ecol));
    }
    const DecayFit f = fit_decay(curve);
    json j;
    j["slope"] = f.slope;
    j["intercept"] = f.intercept;
    j["r_squared"] = f.r_squared;
    write_file_atomic(ctx.out_path("fit.json"), j.dump(2) + "\n");
    std::cout << "slope " << f.slope << ", r^2 " << f.r_squared << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benjamin-Ono soliton-resolution laboratory"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"soliton", "sample a pole-family soliton field"},
        {"exact", "exact multisoliton solution over (t, x)"},
        {"spectrum", "Lax spectrum and trace identity"},
        {"scatter", "distorted coefficients and radiation profile"},
        {"evolve", "pseudo-spectral time evolution"},
        {"resolve", "resolution error experiment"},
        {"fit", "log-log decay fit of an error curve"},
    };

    std::map<std::string, CommonArgs> args;
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        CommonArgs& a = args[name];
        sub->add_option("--config", a.config_path, "flat key = value config file")->required();
        sub->add_option("--out", a.out_dir, "output directory (default .)");
        sub->add_option("--threads", a.threads, "worker threads, 0 = auto");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    const CommonArgs& a = args[name];

    try {
        RunContext ctx;
        ctx.command = name;
        ctx.cfg = Config::from_file(a.config_path);
        ctx.out_dir = a.out_dir;
        ctx.threads = a.threads;
        fs::create_directories(ctx.out_dir);

        int rc = 0;
        if (name == "soliton") rc = cmd_soliton(ctx);
        else if (name == "exact") rc = cmd_exact(ctx);
        else if (name == "spectrum") rc = cmd_spectrum(ctx);
        else if (name == "scatter") rc = cmd_scatter(ctx);
        else if (name == "evolve") rc = cmd_evolve(ctx);
        else if (name == "resolve") rc = cmd_resolve(ctx);
        else if (name == "fit") rc = cmd_fit(ctx);
        if (rc == 0) ctx.write_manifest();
        return rc;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
