// Command-line harness: single-design error evaluation, convergence
// sweeps with log-log rate fits, asymptotic constants/allocations, and
// two built-in reproduction cases.
#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fieldapprox/asymptotics.hpp"
#include "fieldapprox/density.hpp"
#include "fieldapprox/design.hpp"
#include "fieldapprox/error.hpp"
#include "fieldapprox/kernels.hpp"
#include "fieldapprox/serialization.hpp"

using namespace fieldapprox;
using nlohmann::json;

namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    int quad_order = 0;  // 0 = take from config
    int threads = 1;
    std::uint64_t seed = 0;
    bool have_seed = false;
};

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config parse error in " + path + ": " + e.what());
    }
    return j;
}

CovarianceModel model_from_config(const json& cfg) {
    const json& m = cfg.at("model");
    std::string type = m.at("type").get<std::string>();
    if (type == "expquad2d") return CovarianceModel::scaled_exponential2d();
    Decomposition dec(m.at("l").get<std::vector<int>>());
    Smoothness sm(m.at("alpha").get<std::vector<double>>());
    if (type == "fbf") return CovarianceModel::fractional_brownian(std::move(dec), std::move(sm));
    if (type == "zero") return CovarianceModel::zero(std::move(dec), std::move(sm));
    throw std::runtime_error("unknown model type: " + type);
}

Density density_from_config(const json& d, const CovarianceModel& model, int component) {
    std::string type = d.at("type").get<std::string>();
    if (type == "uniform") return Density::uniform();
    if (type == "table") return Density::tabulated(d.at("values").get<std::vector<double>>());
    if (type == "from_scale") {
        // knot density proportional to C_j^{1/(1+alpha_j)}
        auto C = integrated_C(model, component);
        double alpha = model.smoothness().alpha[static_cast<size_t>(component)];
        return density_from_C([C](double x) { return C(x); }, alpha);
    }
    throw std::runtime_error("unknown density type: " + type);
}

std::vector<Density> densities_from_config(const json& cfg, const CovarianceModel& model) {
    const Decomposition& dec = model.decomposition();
    std::vector<Density> out;
    if (!cfg.contains("densities")) {
        out.assign(static_cast<size_t>(dec.k), Density::uniform());
        return out;
    }
    const json& ds = cfg.at("densities");
    if (static_cast<int>(ds.size()) != dec.k)
        throw std::runtime_error("config field 'densities' must list one entry per component");
    for (int j = 0; j < dec.k; ++j) out.push_back(density_from_config(ds.at(j), model, j));
    return out;
}

QuadratureSpec quad_from_config(const json& cfg, const Options& opt) {
    QuadratureSpec spec;
    if (cfg.contains("quad")) {
        const json& q = cfg.at("quad");
        spec.order = q.value("order", spec.order);
        spec.subdivision = q.value("subdivision", spec.subdivision);
        spec.scan_per_dim = q.value("scan_per_dim", spec.scan_per_dim);
    }
    if (opt.quad_order > 0) spec.order = opt.quad_order;
    return spec;
}

std::vector<double> resolve_v(const json& cfg, const CovarianceModel& model,
                              const std::vector<Density>& densities, const QuadratureSpec& spec) {
    if (cfg.contains("v")) return cfg.at("v").get<std::vector<double>>();
    std::vector<double> v;
    for (int j = 0; j < model.decomposition().k; ++j)
        v.push_back(v_general(model, densities[static_cast<size_t>(j)], j, spec));
    return v;
}

Allocation allocation_for(const json& cfg, const CovarianceModel& model,
                          const std::vector<double>& v, double target_n, size_t index) {
    const Decomposition& dec = model.decomposition();
    const Smoothness& sm = model.smoothness();
    std::string strategy = cfg.value("strategy", std::string("uniform"));
    if (strategy == "uniform") {
        int n = std::max(1, static_cast<int>(std::llround(std::pow(target_n, 1.0 / dec.d))) - 1);
        return Allocation{std::vector<int>(static_cast<size_t>(dec.k), n)};
    }
    if (strategy == "optimal") return optimal_allocation(v, sm, dec, target_n);
    if (strategy == "holder0") return holder_allocation(sm, dec, target_n, 0);
    if (strategy == "holder1") return holder_allocation(sm, dec, target_n, 1);
    if (strategy == "explicit") {
        const json& rows = cfg.at("n");
        if (index >= rows.size())
            throw std::runtime_error("config field 'n' needs one row per target N");
        return Allocation{rows.at(index).get<std::vector<int>>()};
    }
    throw std::runtime_error("unknown allocation strategy: " + strategy);
}

std::vector<double> target_list(const json& cfg) {
    auto targets = cfg.at("N").get<std::vector<double>>();
    if (targets.empty()) throw std::runtime_error("config field 'N' must be a nonempty list");
    for (size_t i = 1; i < targets.size(); ++i)
        if (!(targets[i] > targets[i - 1]))
            throw std::runtime_error("config field 'N' must be strictly increasing");
    return targets;
}

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("atomic rename failed: " + path);
}

void emit(const Options& opt, const std::string& content) {
    if (opt.out_path.empty())
        std::fputs(content.c_str(), stdout);
    else
        atomic_write(opt.out_path, content);
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct Row {
    long long n_actual;
    std::vector<int> n;
    double imse2;
    double sup;
};

std::string csv_header(const json& resolved, int k) {
    std::string s = "# config: " + resolved.dump() + "\n";
    s += "N_actual";
    for (int j = 1; j <= k; ++j) s += ",n_" + std::to_string(j);
    s += ",imse2,sup_mse,log10N,log10e2\n";
    return s;
}

std::string csv_row(const Row& r) {
    std::string s = std::to_string(r.n_actual);
    for (int n : r.n) s += "," + std::to_string(n);
    s += "," + fmt(r.imse2) + "," + fmt(r.sup);
    s += "," + fmt(std::log10(static_cast<double>(r.n_actual)));
    s += "," + fmt(r.imse2 > 0.0 ? std::log10(r.imse2) : -std::numeric_limits<double>::infinity());
    return s + "\n";
}

std::vector<Row> run_rows(const json& cfg, const Options& opt, const CovarianceModel& model,
                          const std::vector<Density>& densities, const QuadratureSpec& spec,
                          bool want_sup) {
    std::vector<double> v;
    if (cfg.value("strategy", std::string("uniform")) == "optimal")
        v = resolve_v(cfg, model, densities, spec);
    auto targets = target_list(cfg);
    std::vector<Row> rows;
    for (size_t i = 0; i < targets.size(); ++i) {
        Allocation alloc = allocation_for(cfg, model, v, targets[i], i);
        Design design = build_design(densities, alloc, model.decomposition());
        ErrorReport r = imse(model, design, spec, false, opt.threads);
        double sup = want_sup ? sup_mse(model, design, spec) : -1.0;
        rows.push_back({actual_points(alloc, model.decomposition()), alloc.n, r.imse2, sup});
    }
    return rows;
}

struct Fit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> residuals;
    size_t first = 0;
};

// least squares of log y on log x over the largest half of the x range
Fit fit_upper_half(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() < 4) throw std::runtime_error("rate fit needs at least 4 sweep points");
    Fit fit;
    fit.first = x.size() / 2;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int m = 0;
    for (size_t i = fit.first; i < x.size(); ++i) {
        if (!(y[i] > 0.0)) throw std::runtime_error("rate fit needs positive errors");
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    double denom = m * sxx - sx * sx;
    if (std::abs(denom) < 1e-12) throw std::runtime_error("rate fit is degenerate (all N equal)");
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    for (size_t i = fit.first; i < x.size(); ++i)
        fit.residuals.push_back(std::log(y[i]) - (fit.intercept + fit.slope * std::log(x[i])));
    return fit;
}

json resolved_config(const json& cfg, const QuadratureSpec& spec, const Options& opt) {
    json r = cfg;
    r["quad"] = {{"order", spec.order}, {"subdivision", spec.subdivision},
                 {"scan_per_dim", spec.scan_per_dim}};
    r["threads"] = opt.threads;
    if (opt.have_seed) r["seed"] = opt.seed;
    return r;
}

int cmd_imse(const Options& opt) {
    json cfg = load_config(opt.config_path);
    auto model = model_from_config(cfg);
    auto densities = densities_from_config(cfg, model);
    auto spec = quad_from_config(cfg, opt);
    auto rows = run_rows(cfg, opt, model, densities, spec, cfg.value("sup_mse", true));
    std::string out = csv_header(resolved_config(cfg, spec, opt), model.decomposition().k);
    for (const Row& r : rows) out += csv_row(r);
    emit(opt, out);
    return 0;
}

int cmd_sweep(const Options& opt) {
    json cfg = load_config(opt.config_path);
    auto model = model_from_config(cfg);
    auto densities = densities_from_config(cfg, model);
    auto spec = quad_from_config(cfg, opt);
    auto rows = run_rows(cfg, opt, model, densities, spec, cfg.value("sup_mse", false));

    std::vector<double> xs, ys;
    for (const Row& r : rows) {
        xs.push_back(static_cast<double>(r.n_actual));
        double y = r.imse2;
        if (cfg.contains("subtract")) {
            // remove a known closed-form share before fitting, e.g. c * N^p
            double c = cfg.at("subtract").at("coeff").get<double>();
            double p = cfg.at("subtract").at("exponent").get<double>();
            y -= c * std::pow(xs.back(), p);
        }
        ys.push_back(y);
    }
    Fit fit = fit_upper_half(xs, ys);

    json report;
    report["config"] = resolved_config(cfg, spec, opt);
    report["slope"] = fit.slope;
    report["intercept"] = fit.intercept;
    report["residuals"] = fit.residuals;
    report["points_used"] = xs.size() - fit.first;
    if (cfg.contains("theory_slope")) {
        double ts = cfg.at("theory_slope").get<double>();
        std::vector<double> scaled;
        for (size_t i = 0; i < xs.size(); ++i) scaled.push_back(rows[i].imse2 * std::pow(xs[i], -ts));
        report["theory_slope"] = ts;
        report["scaled_constant"] = scaled;
    }
    std::string csv = csv_header(resolved_config(cfg, spec, opt), model.decomposition().k);
    for (const Row& r : rows) csv += csv_row(r);
    report["csv"] = csv;

    if (!opt.out_path.empty()) atomic_write(opt.out_path, csv);
    std::printf("%s\n", report.dump(2).c_str());
    return 0;
}

int cmd_asym(const Options& opt) {
    json cfg = load_config(opt.config_path);
    auto model = model_from_config(cfg);
    auto densities = densities_from_config(cfg, model);
    auto spec = quad_from_config(cfg, opt);
    const Decomposition& dec = model.decomposition();
    const Smoothness& sm = model.smoothness();

    std::vector<double> v = resolve_v(cfg, model, densities, spec);
    auto p = profile(v, sm, dec);

    json report;
    report["config"] = resolved_config(cfg, spec, opt);
    report["profile"] = to_json(p);
    json a = json::array();
    for (double alpha : sm.alpha) a.push_back(a_beta(alpha));
    report["a"] = a;
    report["optimal_bound_at_1"] = p.optimal_bound(1.0);

    json allocs = json::array();
    if (cfg.contains("N")) {
        for (double target : target_list(cfg)) {
            Allocation alloc = optimal_allocation(v, sm, dec, target);
            json row;
            row["N"] = target;
            row["n"] = alloc.n;
            // continuous solution before the ceiling
            json cont = json::array();
            double log_kappa = std::log(p.kappa);
            for (int j = 0; j < dec.k; ++j) {
                double aj = sm.alpha[static_cast<size_t>(j)];
                cont.push_back(std::exp(p.rho / aj * (std::log(target) - log_kappa) +
                                        std::log(v[static_cast<size_t>(j)]) / aj));
            }
            row["n_continuous"] = cont;
            row["N_actual"] = actual_points(alloc, dec);
            row["predicted_imse2"] = predicted_imse(v, sm, alloc);
            allocs.push_back(row);
        }
    }
    report["allocations"] = allocs;
    emit(opt, report.dump(2) + "\n");
    return 0;
}

int cmd_design(const Options& opt) {
    json cfg = load_config(opt.config_path);
    auto model = model_from_config(cfg);
    auto densities = densities_from_config(cfg, model);
    auto spec = quad_from_config(cfg, opt);
    std::vector<double> v;
    if (cfg.value("strategy", std::string("uniform")) == "optimal")
        v = resolve_v(cfg, model, densities, spec);

    json report;
    report["config"] = resolved_config(cfg, spec, opt);
    json designs = json::array();
    auto targets = target_list(cfg);
    for (size_t i = 0; i < targets.size(); ++i) {
        Allocation alloc = allocation_for(cfg, model, v, targets[i], i);
        Design design = build_design(densities, alloc, model.decomposition());
        json row = to_json(design);
        row["N"] = targets[i];
        row["N_actual"] = actual_points(alloc, model.decomposition());
        designs.push_back(row);
    }
    report["designs"] = designs;
    emit(opt, report.dump(2) + "\n");
    return 0;
}

int cmd_kernel_check(const Options& opt) {
    json cfg = load_config(opt.config_path);
    auto model = model_from_config(cfg);
    double step = cfg.value("step", 1e-4);
    std::uint64_t seed = opt.have_seed ? opt.seed : cfg.value("seed", 20240901ull);
    auto check = local_stationarity_check(model, step, cfg.value("grid_per_dim", 4),
                                          cfg.value("directions", 8), seed);
    json report;
    report["model"] = model.name();
    report["step"] = check.step;
    report["samples"] = check.samples;
    report["max_rel_deviation"] = check.max_rel_deviation;
    bool ok = true;
    if (cfg.contains("tolerance")) {
        ok = check.max_rel_deviation <= cfg.at("tolerance").get<double>();
        report["within_tolerance"] = ok;
    }
    emit(opt, report.dump(2) + "\n");
    return ok ? 0 : 1;
}

// 3-d fractional Brownian benchmark: alpha = (1/2, 3/2), l = (1, 2)
int reproduce_fbf3d(const Options& opt) {
    Decomposition dec({1, 2});
    Smoothness sm({0.5, 1.5});
    auto model = CovarianceModel::fractional_brownian(dec, sm);
    QuadratureSpec spec{16, 12, 5};

    double a_half = a_beta(0.5);
    std::vector<double> ones{1.0, 1.0};
    double b_tilde = b_const(1.5, 2, ones, spec);
    auto p = profile({a_half, b_tilde}, sm, dec);

    json report;
    report["case"] = "fbf3d";
    report["a_half"] = a_half;
    report["b_tilde"] = b_tilde;
    report["rho"] = p.rho;
    report["kappa"] = p.kappa;
    report["bound_constant"] = p.optimal_bound(1.0);
    report["reference"] = {{"a_half", 0.3667}, {"b_tilde", 0.0935}, {"rho", 0.3},
                           {"bound_constant", 0.4245}};

    QuadratureSpec sweep_spec{16, 0, 5};
    std::vector<Density> uniform_d(2, Density::uniform());
    std::string csv = "N_actual,n_1,n_2,imse2,log10N,log10e2\n";
    json sweeps = json::array();
    {
        std::vector<double> xs, ys;
        for (int n = 9; n <= 20; ++n) {
            Allocation alloc{{n, n}};
            auto r = imse(model, build_design(uniform_d, alloc, dec), sweep_spec, false, opt.threads);
            double n_actual = static_cast<double>(actual_points(alloc, dec));
            xs.push_back(n_actual);
            ys.push_back(r.imse2 - b_tilde * std::pow(n_actual, -0.5));
            csv += std::to_string(static_cast<long long>(n_actual)) + "," + std::to_string(n) + "," +
                   std::to_string(n) + "," + fmt(r.imse2) + "," + fmt(std::log10(n_actual)) + "," +
                   fmt(std::log10(r.imse2)) + "\n";
        }
        Fit fit = fit_upper_half(xs, ys);
        sweeps.push_back({{"allocation", "uniform"},
                          {"slope_after_subtraction", fit.slope},
                          {"expected_slope", -1.0 / 6.0}});
    }
    {
        std::vector<double> v{a_half, b_tilde};
        std::vector<double> xs, ys;
        for (double target : {410.0, 469.0, 537.0, 614.0, 702.0, 803.0, 919.0, 1051.0, 1202.0,
                              1375.0, 1573.0, 1800.0}) {
            Allocation alloc = optimal_allocation(v, sm, dec, target);
            auto r = imse(model, build_design(uniform_d, alloc, dec), sweep_spec, false, opt.threads);
            double n_actual = static_cast<double>(actual_points(alloc, dec));
            xs.push_back(n_actual);
            ys.push_back(r.imse2);
            csv += std::to_string(static_cast<long long>(n_actual)) + "," +
                   std::to_string(alloc.n[0]) + "," + std::to_string(alloc.n[1]) + "," +
                   fmt(r.imse2) + "," + fmt(std::log10(n_actual)) + "," + fmt(std::log10(r.imse2)) +
                   "\n";
        }
        Fit fit = fit_upper_half(xs, ys);
        sweeps.push_back(
            {{"allocation", "optimal"}, {"slope", fit.slope}, {"expected_slope", -0.3}});
    }
    report["sweeps"] = sweeps;
    report["csv"] = csv;

    if (!opt.out_path.empty()) atomic_write(opt.out_path, csv);
    std::printf("%s\n", report.dump(2).c_str());
    return 0;
}

// 2-d scaled exponential kernel: adapted vs uniform knot densities
int reproduce_expquad2d(const Options& opt) {
    auto model = CovarianceModel::scaled_exponential2d();
    QuadratureSpec spec{12, 0, 5};

    auto C1 = integrated_C(model, 0);
    auto h_adapted = density_from_C([C1](double x) { return C1(x); }, 1.0);
    double v_uniform = v_general(model, Density::uniform(), 0, spec);
    double v_adapted = v_general(model, h_adapted, 0, spec);

    json report;
    report["case"] = "expquad2d";
    report["v_uniform"] = v_uniform;
    report["v_adapted"] = v_adapted;
    report["constant_reduction"] = 1.0 - v_adapted / v_uniform;

    // scaled errors N^{1/2} e_N^2 approach the corresponding constant
    std::string csv = "N_actual,n_1,imse2,scaled,density\n";
    json sweeps = json::array();
    for (int pass = 0; pass < 2; ++pass) {
        Density h = pass == 0 ? Density::uniform() : h_adapted;
        const char* label = pass == 0 ? "uniform" : "adapted";
        std::vector<Density> ds{h};
        json scaled = json::array();
        for (int n : {8, 12, 18, 27, 40}) {
            Allocation alloc{{n}};
            auto r = imse(model, build_design(ds, alloc, model.decomposition()), spec, false,
                          opt.threads);
            double n_actual = static_cast<double>(actual_points(alloc, model.decomposition()));
            double s = std::sqrt(n_actual) * r.imse2;
            scaled.push_back(s);
            csv += std::to_string(static_cast<long long>(n_actual)) + "," + std::to_string(n) + "," +
                   fmt(r.imse2) + "," + fmt(s) + "," + label + "\n";
        }
        sweeps.push_back({{"density", label},
                          {"scaled_errors", scaled},
                          {"limit_constant", pass == 0 ? v_uniform : v_adapted}});
    }
    report["sweeps"] = sweeps;
    report["csv"] = csv;

    if (!opt.out_path.empty()) atomic_write(opt.out_path, csv);
    std::printf("%s\n", report.dump(2).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sampling designs and interpolation error for random fields on the unit cube"};
    app.require_subcommand(1);

    Options opt;
    std::string repro_case;
    app.add_option("--config", opt.config_path, "JSON configuration file");
    app.add_option("--out", opt.out_path, "output file (written atomically)");
    app.add_option("--quad-order", opt.quad_order, "override quadrature order");
    app.add_option("--threads", opt.threads, "worker threads for cell quadrature");
    auto* seed_opt = app.add_option("--seed", opt.seed, "random seed");
    app.fallthrough();

    auto* c_imse = app.add_subcommand("imse", "error of the configured designs, one CSV row per N");
    auto* c_sweep = app.add_subcommand("sweep", "convergence sweep with a log-log rate fit");
    auto* c_asym = app.add_subcommand("asym", "asymptotic constants and optimal allocations");
    auto* c_design = app.add_subcommand("design", "emit the design knots as JSON");
    auto* c_kernel = app.add_subcommand("kernel-check", "local-stationarity diagnostic");
    auto* c_repro = app.add_subcommand("reproduce", "run a built-in benchmark case");
    c_repro->add_option("--case", repro_case, "fbf3d | expquad2d")->required();

    CLI11_PARSE(app, argc, argv);
    opt.have_seed = seed_opt->count() > 0;

    try {
        if (c_imse->parsed()) return cmd_imse(opt);
        if (c_sweep->parsed()) return cmd_sweep(opt);
        if (c_asym->parsed()) return cmd_asym(opt);
        if (c_design->parsed()) return cmd_design(opt);
        if (c_kernel->parsed()) return cmd_kernel_check(opt);
        if (c_repro->parsed()) {
            if (repro_case == "fbf3d") return reproduce_fbf3d(opt);
            if (repro_case == "expquad2d") return reproduce_expquad2d(opt);
            throw std::runtime_error("unknown case: " + repro_case + " (expected fbf3d or expquad2d)");
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
