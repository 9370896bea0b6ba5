// rnstab: command-line driver for spectra, characteristic roots, modal
// simulations, threshold tables, stability maps, critical steps and accuracy
// scans. Exit codes: 0 success, 1 usage error, 2 I/O error.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rnstab/rnstab.hpp"

namespace {

using nlohmann::ordered_json;
using namespace rnstab;

struct Globals {
    std::string config;
    std::string out;
    std::string format = "csv";
    int jobs = 1;
    std::map<std::string, std::string> overrides;
};

RunConfig resolve_config(const Globals& g) {
    RunConfig cfg = g.config.empty() ? RunConfig{} : load_config(g.config);
    apply_key_values(cfg, g.overrides);
    return cfg;
}

void emit_text(const Globals& g, const std::string& text) {
    if (g.out.empty()) std::cout << text;
    else write_text_file(g.out, text);
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(detail::parse_double(what, item));
    if (out.empty()) throw InvalidParameter(std::string(what) + ": empty list");
    return out;
}

InitialData parse_init(const std::string& text) {
    const auto v = parse_list(text, "init");
    if (v.size() != 3) throw InvalidParameter("init must be eta1,eta0,u0");
    return InitialData{v[0], v[1], v[2]};
}

ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

// --- subcommands -----------------------------------------------------------

void cmd_spectrum(const Globals& g, std::optional<double> h) {
    RunConfig cfg = resolve_config(g);
    if (h) cfg.disc.n_modes = truncation_from_h(cfg.params.length, *h);
    (void)validate_params(cfg.params, cfg.disc);
    const auto spectrum = build_spectrum(cfg.params, cfg.disc.n_modes);
    if (g.format == "json") {
        auto arr = ordered_json::array();
        for (const auto& m : spectrum) arr.push_back({{"i", m.index}, {"mu", m.mu}, {"lambda", m.lambda}});
        emit_text(g, arr.dump(2) + '\n');
        return;
    }
    std::string text = "i,mu,lambda\n";
    for (const auto& m : spectrum)
        text += std::to_string(m.index) + ',' + format_double(m.mu) + ',' + format_double(m.lambda) + '\n';
    emit_text(g, text);
}

void cmd_roots(const Globals& g, int mode_index) {
    const RunConfig cfg = resolve_config(g);
    (void)validate_params(cfg.params, cfg.disc);
    if (cfg.alpha < 0.0) throw InvalidParameter("alpha must be >= 0");
    const Mode mode = make_mode(cfg.params, mode_index);
    const RootSet roots = chi_roots(cfg.params, mode, cfg.alpha, cfg.disc.dt);
    const auto cls = classify_radius(roots.spectral_radius);
    if (g.format == "json") {
        ordered_json doc;
        doc["mode"] = mode_index;
        doc["alpha"] = cfg.alpha;
        doc["dt"] = cfg.disc.dt;
        auto arr = ordered_json::array();
        for (std::size_t k = 0; k < 4; ++k)
            arr.push_back({{"re", roots.roots[k].real()},
                           {"im", roots.roots[k].imag()},
                           {"modulus", roots.moduli[k]},
                           {"simple", static_cast<bool>(roots.simple[k])}});
        doc["roots"] = arr;
        doc["spectral_radius"] = roots.spectral_radius;
        doc["classification"] = to_string(cls);
        emit_text(g, doc.dump(2) + '\n');
        return;
    }
    std::string text = "re,im,modulus,simple\n";
    for (std::size_t k = 0; k < 4; ++k)
        text += format_double(roots.roots[k].real()) + ',' + format_double(roots.roots[k].imag()) + ',' +
                format_double(roots.moduli[k]) + ',' + (roots.simple[k] ? "true" : "false") + '\n';
    emit_text(g, text);
}

void cmd_simulate(const Globals& g, const std::string& scheme_name, int mode_index, const std::string& init_text) {
    const RunConfig cfg = resolve_config(g);
    (void)validate_params(cfg.params, cfg.disc);
    const Scheme scheme = parse_scheme(scheme_name);
    const Mode mode = make_mode(cfg.params, mode_index);
    const auto traj = simulate(scheme, cfg.params, cfg.disc, mode, cfg.alpha, parse_init(init_text));
    if (g.format == "json") {
        ordered_json doc;
        doc["scheme"] = to_string(scheme);
        doc["mode"] = mode_index;
        doc["alpha"] = cfg.alpha;
        doc["dt"] = cfg.disc.dt;
        doc["blow_up_step"] = traj.blow_up ? ordered_json(*traj.blow_up) : ordered_json(nullptr);
        auto arr = ordered_json::array();
        for (const auto& r : traj.series)
            arr.push_back({{"step", r.step}, {"time", r.time}, {"eta", number(r.eta)}, {"u", number(r.u)},
                           {"p", number(r.p)}, {"blown_up", traj.blow_up && r.step >= *traj.blow_up}});
        doc["series"] = arr;
        emit_text(g, doc.dump(2) + '\n');
        return;
    }
    std::string text = "step,time,eta,u,p,blown_up\n";
    for (const auto& r : traj.series)
        text += std::to_string(r.step) + ',' + format_double(r.time) + ',' + format_double(r.eta) + ',' +
                format_double(r.u) + ',' + format_double(r.p) + ',' +
                (traj.blow_up && r.step >= *traj.blow_up ? "true" : "false") + '\n';
    emit_text(g, text);
}

void cmd_thresholds(const Globals& g, std::optional<double> h) {
    RunConfig cfg = resolve_config(g);
    if (h) cfg.disc.n_modes = truncation_from_h(cfg.params.length, *h);
    (void)validate_params(cfg.params, cfg.disc);
    const auto spectrum = build_spectrum(cfg.params, cfg.disc.n_modes);
    const Thresholds t = thresholds(cfg.params, spectrum, cfg.disc.dt, cfg.alpha);
    const double m = cfg.params.structure_mass();
    ordered_json doc;
    doc["structure_mass"] = m;
    doc["alpha"] = cfg.alpha;
    doc["dt"] = cfg.disc.dt;
    doc["n_modes"] = cfg.disc.n_modes;
    doc["eta_bar"] = t.eta_bar;
    doc["unstable_by_eta_bar"] = m < t.eta_bar;
    doc["eta_1"] = t.eta_1;
    doc["alpha_1_applicable"] = t.alpha_1.has_value();
    doc["alpha_1"] = t.alpha_1 ? ordered_json(*t.alpha_1) : ordered_json(nullptr);
    doc["eta_2"] = t.eta_2;
    doc["alpha_2_applicable"] = t.alpha_2.has_value();
    doc["alpha_2"] = t.alpha_2 ? ordered_json(*t.alpha_2) : ordered_json(nullptr);
    if (g.format == "json") {
        emit_text(g, doc.dump(2) + '\n');
        return;
    }
    std::string text = "key,value\n";
    for (const auto& [key, value] : doc.items()) text += key + ',' + (value.is_null() ? "" : value.dump()) + '\n';
    emit_text(g, text);
}

struct MapArgs {
    std::string alpha_range = "1e2:1e5:7:log";
    std::string dt_range = "1e-5:1e-2:7:log";
    std::string meshes;
    std::string hs;
    std::string eval = "analytic";
    int empirical_steps = 2000;
    std::string init = "1,1,0";
};

void cmd_stability_map(const Globals& g, const MapArgs& a) {
    const RunConfig cfg = resolve_config(g);
    validate_params(cfg.params);
    SweepSpec spec;
    spec.alpha_grid = parse_range(a.alpha_range);
    spec.dt_grid = parse_range(a.dt_range);
    if (!a.meshes.empty())
        for (double n : parse_list(a.meshes, "meshes")) spec.mesh_grid.push_back(static_cast<int>(n));
    if (!a.hs.empty()) {
        const auto extra = meshes_from_h(cfg.params.length, parse_list(a.hs, "h"));
        spec.mesh_grid.insert(spec.mesh_grid.end(), extra.begin(), extra.end());
    }
    if (spec.mesh_grid.empty()) spec.mesh_grid.push_back(cfg.disc.n_modes);
    for (int n : spec.mesh_grid)
        if (n < 1) throw InvalidParameter("zero modes");
    spec.params = cfg.params;
    spec.mode = parse_eval_mode(a.eval);
    spec.empirical_steps = a.empirical_steps;
    spec.init = parse_init(a.init);
    spec.jobs = g.jobs;
    const auto records = run_stability_map(spec);
    for (const auto& w : monotonicity_warnings(records)) std::cerr << "warning: " << w << '\n';
    for (const auto& r : records)
        if (r.empirical_agrees && !*r.empirical_agrees)
            std::cerr << "warning: empirical verdict disagrees at alpha=" << r.alpha << " dt=" << r.dt
                      << " n_modes=" << r.n_modes << '\n';
    const auto format = parse_report_format(g.format);
    if (g.out.empty()) std::cout << (format == ReportFormat::csv ? format_csv(records) : format_json(records));
    else emit_report(records, format, g.out);
}

struct CriticalArgs {
    std::string alphas;
    std::string alpha_range;
    double dt_lo = 1e-8;
    double dt_hi = 1e-1;
    double tol = 1e-6;
};

void cmd_critical_dt(const Globals& g, const CriticalArgs& a) {
    const RunConfig cfg = resolve_config(g);
    (void)validate_params(cfg.params, cfg.disc);
    std::vector<double> alphas;
    if (!a.alphas.empty()) alphas = parse_list(a.alphas, "alphas");
    if (!a.alpha_range.empty()) {
        const auto more = parse_range(a.alpha_range).values();
        alphas.insert(alphas.end(), more.begin(), more.end());
    }
    if (alphas.empty()) alphas.push_back(cfg.alpha);
    const auto spectrum = build_spectrum(cfg.params, cfg.disc.n_modes);
    std::vector<CriticalStep> steps(alphas.size());
    parallel_for(alphas.size(), g.jobs,
                 [&](std::size_t k) { steps[k] = critical_dt(cfg.params, spectrum, alphas[k], a.dt_lo, a.dt_hi, a.tol); });
    if (g.format == "json") {
        auto arr = ordered_json::array();
        for (std::size_t k = 0; k < alphas.size(); ++k) {
            const auto& s = steps[k];
            arr.push_back({{"alpha", alphas[k]},
                           {"found", s.found},
                           {"stable_dt", s.found ? ordered_json(s.stable_dt) : ordered_json(nullptr)},
                           {"unstable_dt", s.found ? ordered_json(s.unstable_dt) : ordered_json(nullptr)},
                           {"critical_dt", s.found ? ordered_json(s.estimate) : ordered_json(nullptr)},
                           {"alpha_times_dt", s.found ? ordered_json(alphas[k] * s.estimate) : ordered_json(nullptr)},
                           {"iterations", s.iterations},
                           {"note", s.note}});
        }
        emit_text(g, arr.dump(2) + '\n');
        return;
    }
    std::string text = "alpha,found,stable_dt,unstable_dt,critical_dt,alpha_times_dt,iterations,note\n";
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        const auto& s = steps[k];
        auto cell = [&](double v) { return s.found ? format_double(v) : std::string(); };
        text += format_double(alphas[k]) + ',' + (s.found ? "true" : "false") + ',' + cell(s.stable_dt) + ',' +
                cell(s.unstable_dt) + ',' + cell(s.estimate) + ',' + cell(alphas[k] * s.estimate) + ',' +
                std::to_string(s.iterations) + ',' + s.note + '\n';
    }
    emit_text(g, text);
}

struct AccuracyArgs {
    std::string alphas;
    std::string alpha_range;
    std::string init = "1,1,0";
};

void cmd_accuracy_scan(const Globals& g, const AccuracyArgs& a) {
    const RunConfig cfg = resolve_config(g);
    (void)validate_params(cfg.params, cfg.disc);
    std::vector<double> alphas;
    if (!a.alphas.empty()) alphas = parse_list(a.alphas, "alphas");
    if (!a.alpha_range.empty()) {
        const auto more = parse_range(a.alpha_range).values();
        alphas.insert(alphas.end(), more.begin(), more.end());
    }
    if (alphas.empty()) alphas.push_back(cfg.alpha);
    const auto spectrum = build_spectrum(cfg.params, cfg.disc.n_modes);
    const auto records =
        run_accuracy_scan(cfg.params, spectrum, cfg.disc.dt, alphas, cfg.disc.n_steps, parse_init(a.init), g.jobs);
    if (const auto best = accuracy_argmin(records))
        std::cerr << "argmin alpha = " << format_double(records[*best].alpha) << '\n';
    const auto format = parse_report_format(g.format);
    if (g.out.empty()) std::cout << (format == ReportFormat::csv ? format_csv(records) : format_json(records));
    else emit_report(records, format, g.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stability analysis of the explicit Robin-Neumann coupling on the modal model problem"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config, "key-value parameter file");
    app.add_option("--out", g.out, "output path (default: stdout)");
    app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);
    for (const char* key :
         {"rho_f", "rho_s", "h_s", "beta", "psi", "radius", "length", "dt", "n_modes", "n_steps", "alpha"}) {
        app.add_option_function<std::string>(
            std::string("--") + key, [&g, key](const std::string& v) { g.overrides[key] = v; },
            std::string("override ") + key);
    }

    // --h is the mesh size, so subcommands keep only the long help flag.
    std::optional<double> h;
    auto* spectrum = app.add_subcommand("spectrum", "added-mass and Laplace eigenvalues");
    spectrum->set_help_flag("--help", "Print this help message and exit");
    spectrum->add_option("--h", h, "mesh size; sets n_modes = round(length / h)");

    int mode_index = 1;
    auto* roots = app.add_subcommand("roots", "roots of the characteristic polynomial of one mode");
    roots->add_option("--mode-index", mode_index)->check(CLI::PositiveNumber);

    std::string scheme = "explicit-rn", init = "1,1,0";
    auto* sim = app.add_subcommand("simulate", "time history of one mode");
    sim->add_option("--scheme", scheme, "explicit-rn, recurrence or implicit");
    sim->add_option("--mode-index", mode_index)->check(CLI::PositiveNumber);
    sim->add_option("--steps", g.overrides["n_steps"], "number of steps")->default_str("");
    sim->add_option("--init", init, "eta1,eta0,u0");

    auto* thr = app.add_subcommand("thresholds", "sufficient-instability and threshold quantities");
    thr->set_help_flag("--help", "Print this help message and exit");
    thr->add_option("--h", h, "mesh size; sets n_modes = round(length / h)");

    MapArgs map_args;
    auto* smap = app.add_subcommand("stability-map", "classification over an (alpha, dt, mesh) grid");
    smap->add_option("--alpha-range", map_args.alpha_range, "min:max:count[:log|:lin]");
    smap->add_option("--dt-range", map_args.dt_range, "min:max:count[:log|:lin]");
    smap->add_option("--meshes", map_args.meshes, "comma-separated n_modes list");
    smap->set_help_flag("--help", "Print this help message and exit");
    smap->add_option("--h", map_args.hs, "comma-separated mesh sizes");
    smap->add_option("--eval", map_args.eval)->check(CLI::IsMember({"analytic", "empirical", "both"}));
    smap->add_option("--empirical-steps", map_args.empirical_steps)->check(CLI::PositiveNumber);
    smap->add_option("--init", map_args.init, "eta1,eta0,u0 for empirical runs");

    CriticalArgs crit;
    auto* cdt = app.add_subcommand("critical-dt", "largest stable dt per alpha by bisection");
    cdt->add_option("--alphas", crit.alphas, "comma-separated alpha list");
    cdt->add_option("--alpha-range", crit.alpha_range, "min:max:count[:log|:lin]");
    cdt->add_option("--dt-min", crit.dt_lo, "lower end of the bracket");
    cdt->add_option("--dt-max", crit.dt_hi, "upper end of the bracket");
    cdt->add_option("--tol", crit.tol, "relative bracket width");

    AccuracyArgs acc;
    auto* ascan = app.add_subcommand("accuracy-scan", "error against the implicit reference per alpha");
    ascan->add_option("--alphas", acc.alphas, "comma-separated alpha list");
    ascan->add_option("--alpha-range", acc.alpha_range, "min:max:count[:log|:lin]");
    ascan->add_option("--steps", g.overrides["n_steps"], "horizon")->default_str("");
    ascan->add_option("--init", acc.init, "eta1,eta0,u0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    // Unset --steps leaves an empty placeholder behind.
    if (auto it = g.overrides.find("n_steps"); it != g.overrides.end() && it->second.empty()) g.overrides.erase(it);

    try {
        if (*spectrum) cmd_spectrum(g, h);
        else if (*roots) cmd_roots(g, mode_index);
        else if (*sim) cmd_simulate(g, scheme, mode_index, init);
        else if (*thr) cmd_thresholds(g, h);
        else if (*smap) cmd_stability_map(g, map_args);
        else if (*cdt) cmd_critical_dt(g, crit);
        else if (*ascan) cmd_accuracy_scan(g, acc);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
