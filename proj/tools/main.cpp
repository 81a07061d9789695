#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dichospec/errors.hpp"
#include "dichospec/output.hpp"
#include "dichospec/runconfig.hpp"
#include "dichospec/spectra.hpp"
#include "dichospec/systems.hpp"
#include "dichospec/wis.hpp"

namespace ds = dichospec;

namespace {

struct CliOverrides {
    std::string config_path;
    std::string system_name;
    std::string out_path;
    std::string format;
    std::string plot_dir;
    std::optional<double> H, T1, T2, t0, T_end, grid_step, epsilon;
};

// Attaches the flags shared by every procedure subcommand.
void add_common_flags(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "run configuration file (INI-style)");
    cmd->add_option("--system", o.system_name, "builtin system name");
    cmd->add_option("--out", o.out_path, "output path (default: stdout)");
    cmd->add_option("--format", o.format, "csv | json | table")
        ->check(CLI::IsMember({"csv", "json", "table"}));
    cmd->add_option("--plot-data", o.plot_dir, "directory for (t, value) series CSVs");
    cmd->add_option("--grid-step", [&o](const std::vector<std::string>& v) {
        o.grid_step = std::stod(v[0]);
        return true;
    }, "scan grid step");
}

void add_opt(CLI::App* cmd, const std::string& name, std::optional<double>& slot,
             const std::string& help) {
    cmd->add_option(name, [&slot](const std::vector<std::string>& v) {
        slot = std::stod(v[0]);
        return true;
    }, help);
}

ds::RunConfig load_config(const CliOverrides& o) {
    ds::RunConfig cfg;
    if (!o.config_path.empty()) cfg = ds::parse_config_file(o.config_path);
    if (!o.system_name.empty()) {
        cfg.system_name = o.system_name;
        cfg.inline_bodies.clear();
        cfg.inline_antiderivatives.clear();
        cfg.inline_domain_starts.clear();
    }
    if (!o.out_path.empty()) cfg.out_path = o.out_path;
    if (!o.format.empty()) cfg.format = o.format;
    if (!o.plot_dir.empty()) cfg.plot_dir = o.plot_dir;
    return cfg;
}

void fold(std::optional<double>& dst, const std::optional<double>& src) {
    if (src) dst = src;
}

void emit_intervals(const ds::RunConfig& cfg, const std::vector<ds::SpectralInterval>& intervals,
                    const std::string& kind, const std::string& title) {
    if (cfg.format == "csv") ds::emit(cfg.out_path, ds::csv_intervals(intervals));
    else if (cfg.format == "json") ds::emit(cfg.out_path, ds::json_intervals(intervals, kind));
    else ds::emit(cfg.out_path, ds::table_intervals(intervals, title));
}

int run_lyap(const CliOverrides& o) {
    ds::RunConfig cfg = load_config(o);
    fold(cfg.lyap.t1, o.T1);
    fold(cfg.lyap.t2, o.T2);
    fold(cfg.lyap.grid_step, o.grid_step);
    ds::DiagonalSystem sys = ds::materialize_system(cfg);
    double t1 = cfg.lyap.t1.value_or(1e2), t2 = cfg.lyap.t2.value_or(1e4);
    std::vector<ds::Series> series;
    auto intervals =
        ds::lyapunov_intervals(sys, t1, t2, cfg.lyap.grid_step.value_or(0.0),
                               cfg.error_target.value_or(1e-6),
                               cfg.plot_dir.empty() ? nullptr : &series);
    if (!cfg.plot_dir.empty()) ds::write_plot_data(cfg.plot_dir, series);
    emit_intervals(cfg, intervals, "lyapunov", "lyapunov spectrum");
    return 0;
}

int run_ed(const CliOverrides& o) {
    ds::RunConfig cfg = load_config(o);
    fold(cfg.ed.window, o.H);
    fold(cfg.ed.t0, o.t0);
    fold(cfg.ed.t_end, o.T_end);
    fold(cfg.ed.grid_step, o.grid_step);
    ds::DiagonalSystem sys = ds::materialize_system(cfg);
    std::vector<ds::Series> series;
    auto intervals = ds::ed_intervals(
        sys, cfg.ed.window.value_or(1e4), cfg.ed.t0.value_or(1e5), cfg.ed.t_end.value_or(1e8),
        cfg.ed.grid_step.value_or(0.0), cfg.error_target.value_or(1e-6),
        cfg.divergence_factor.value_or(1e3), cfg.plot_dir.empty() ? nullptr : &series);
    if (!cfg.plot_dir.empty()) ds::write_plot_data(cfg.plot_dir, series);
    emit_intervals(cfg, intervals, "ed", "exponential-dichotomy spectrum");
    return 0;
}

int run_ned(const CliOverrides& o) {
    ds::RunConfig cfg = load_config(o);
    fold(cfg.ned.window, o.H);
    fold(cfg.ned.t1, o.T1);
    fold(cfg.ned.t2, o.T2);
    fold(cfg.ned.grid_step, o.grid_step);
    ds::DiagonalSystem sys = ds::materialize_system(cfg);
    std::vector<ds::Series> series;
    auto intervals = ds::ned_intervals(
        sys, cfg.ned.window.value_or(1e6), cfg.ned.t1.value_or(1e2), cfg.ned.t2.value_or(1e3),
        cfg.ned.grid_step.value_or(0.0), cfg.error_target.value_or(1e-6),
        cfg.ratio_min.value_or(10.0), cfg.plot_dir.empty() ? nullptr : &series);
    if (!cfg.plot_dir.empty()) ds::write_plot_data(cfg.plot_dir, series);
    emit_intervals(cfg, intervals, "ned", "nonuniform exponential-dichotomy spectrum");
    return 0;
}

int run_bias(const CliOverrides& o) {
    ds::RunConfig cfg = load_config(o);
    fold(cfg.bias.window, o.H);
    fold(cfg.bias.t1, o.T1);
    fold(cfg.bias.t2, o.T2);
    fold(cfg.bias.grid_step, o.grid_step);
    fold(cfg.bias.epsilon, o.epsilon);
    ds::DiagonalSystem sys = ds::materialize_system(cfg);
    std::vector<ds::Series> series;
    ds::BiasReport report = ds::nonuniform_bias(
        sys, cfg.bias.window.value_or(1e2), cfg.bias.t1.value_or(1e5), cfg.bias.t2.value_or(1e6),
        cfg.bias.grid_step.value_or(0.0), cfg.bias.epsilon.value_or(0.01),
        cfg.error_target.value_or(1e-6), cfg.ratio_min.value_or(10.0),
        cfg.plot_dir.empty() ? nullptr : &series);
    if (!cfg.plot_dir.empty()) ds::write_plot_data(cfg.plot_dir, series);
    if (cfg.format == "csv") ds::emit(cfg.out_path, ds::csv_bias(report));
    else if (cfg.format == "json") ds::emit(cfg.out_path, ds::json_bias(report));
    else ds::emit(cfg.out_path, ds::table_bias(report));
    return 0;
}

int run_report(const CliOverrides& o) {
    ds::RunConfig cfg = load_config(o);
    fold(cfg.bias.epsilon, o.epsilon);
    ds::DiagonalSystem sys = ds::materialize_system(cfg);
    ds::ReportConfig rc = ds::to_report_config(cfg);
    if (o.grid_step) rc.grid_step = *o.grid_step;
    std::vector<ds::Series> series;
    ds::SpectrumReport report =
        ds::full_report(sys, rc, cfg.plot_dir.empty() ? nullptr : &series);
    if (!cfg.plot_dir.empty()) ds::write_plot_data(cfg.plot_dir, series);
    if (cfg.format == "json" || cfg.format == "csv")
        ds::emit(cfg.out_path, ds::json_report(report));
    else
        ds::emit(cfg.out_path, ds::table_report(report));
    return 0;
}

int run_check_wis(const CliOverrides& o, int component, double lambda, double horizon,
                  double b_max) {
    ds::RunConfig cfg = load_config(o);
    ds::DiagonalSystem sys = ds::materialize_system(cfg);
    auto pairs = ds::make_pair_grid(horizon);
    bool member = ds::wis_membership(sys, component, lambda, pairs, b_max,
                                     cfg.error_target.value_or(1e-6));
    std::string out = "lambda = " + ds::format_table(lambda) + " component " +
                      std::to_string(component) + ": " +
                      (member ? "inside the separation-based spectrum estimate"
                              : "outside the separation-based spectrum estimate") +
                      "\n";
    ds::emit(cfg.out_path, out);
    return 0;
}

int run_growth(const CliOverrides& o, int component, std::vector<double> a_candidates,
               double horizon, bool absolute) {
    ds::RunConfig cfg = load_config(o);
    ds::DiagonalSystem sys = ds::materialize_system(cfg);
    if (component < 1 || component > sys.dimension())
        throw ds::PreconditionError("component index out of range");
    if (a_candidates.empty()) a_candidates = {1.0, 2.0, 4.0};
    const ds::CoefficientFunction& f = sys.coefficients[component - 1];
    double error_target = cfg.error_target.value_or(1e-6);
    ds::CumulativeIntegral F = ds::build_cumulative(f, 0.0, error_target, horizon + 1.0);
    auto pairs = ds::make_pair_grid(horizon);
    auto bounds = ds::estimate_growth_bounds(F, absolute ? &f : nullptr, pairs, a_candidates,
                                             error_target);
    std::string out = "growth bounds, component " + std::to_string(component) + ", horizon " +
                      ds::format_table(horizon) + "\n";
    for (const ds::GrowthBound& g : bounds)
        out += std::string("  mode ") +
               (g.mode == ds::GrowthMode::Signed ? "signed" : "absolute") +
               ": a_tilde = " + ds::format_table(g.a_tilde) +
               "  b_tilde = " + ds::format_table(g.b_tilde) +
               "  d_tilde = " + ds::format_table(g.d_tilde) +
               (g.satisfied ? "" : "  (bound not satisfied on the grid)") + "\n";
    ds::emit(cfg.out_path, out);
    return 0;
}

// Reproduces the published tables for the planar system; each table names
// its scan grid so deviations from other tools are attributable.
int run_tables(const CliOverrides& o) {
    ds::RunConfig cfg = load_config(o);
    if (cfg.system_name.empty() && cfg.inline_bodies.empty()) cfg.system_name = "planar-nubg";
    ds::DiagonalSystem sys = ds::materialize_system(cfg);
    std::string out;
    auto grid_line = [](double a, double b) {
        double step = ds::default_grid_step(a, b);
        return "  grid: [" + ds::format_table(a) + ", " + ds::format_table(b) + "], step " +
               ds::format_table(step) + "\n";
    };

    out += "Table 1: lyapunov spectrum\n";
    for (auto [t1, t2] : {std::pair{1e2, 1e4}, std::pair{1e4, 1e6}}) {
        out += "  window [" + ds::format_table(t1) + ", " + ds::format_table(t2) + "]\n";
        out += grid_line(t1, t2);
        out += ds::table_intervals(ds::lyapunov_intervals(sys, t1, t2), "  intervals");
    }

    out += "Table 2: nonuniform bias (epsilon = 0.0100)\n";
    for (auto [H, t1, t2] : {std::tuple{1e2, 1e4, 1e5}, std::tuple{1e4, 1e6, 1e7}}) {
        out += "  H = " + ds::format_table(H) + ", window [" + ds::format_table(t1) + ", " +
               ds::format_table(t2) + "]\n";
        out += grid_line(t1, t2);
        out += ds::table_bias(ds::nonuniform_bias(sys, H, t1, t2, 0.0, 0.01));
    }

    out += "Table 3: exponential-dichotomy spectrum (H = 1.0000e+04, t0 = 1.0000e+05, T = "
           "1.0000e+08)\n";
    out += grid_line(1e5, 1e8 - 1e4);
    out += ds::table_intervals(ds::ed_intervals(sys, 1e4, 1e5, 1e8), "  intervals");

    out += "Table 4: nonuniform exponential-dichotomy spectrum, window [100.0000, 1000.0000]\n";
    for (double H : {1e6, 1e4}) {
        out += "  H = " + ds::format_table(H) + "\n";
        out += grid_line(1e2, 1e3);
        out += ds::table_intervals(ds::ned_intervals(sys, H, 1e2, 1e3), "  intervals");
    }

    ds::emit(cfg.out_path, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-time spectra of linear nonautonomous diagonal systems"};
    app.require_subcommand(1);

    CliOverrides o;
    int component = 1;
    double lambda = 0.0, horizon = 200.0, b_max = 10.0;
    std::vector<double> a_candidates;
    bool absolute = false;

    CLI::App* lyap = app.add_subcommand("lyap", "Lyapunov spectrum intervals");
    add_common_flags(lyap, o);
    add_opt(lyap, "--T1", o.T1, "scan start");
    add_opt(lyap, "--T2", o.T2, "scan end");

    CLI::App* ed = app.add_subcommand("ed", "exponential-dichotomy spectrum intervals");
    add_common_flags(ed, o);
    add_opt(ed, "--H", o.H, "Steklov window length");
    add_opt(ed, "--t0", o.t0, "scan start");
    add_opt(ed, "--T", o.T_end, "integration end (scan ends at T - H)");

    CLI::App* ned = app.add_subcommand("ned", "nonuniform dichotomy spectrum intervals");
    add_common_flags(ned, o);
    add_opt(ned, "--H", o.H, "Steklov window length (must dwarf T2)");
    add_opt(ned, "--T1", o.T1, "scan start");
    add_opt(ned, "--T2", o.T2, "scan end");

    CLI::App* bias = app.add_subcommand("bias", "nonuniform bias detector");
    add_common_flags(bias, o);
    add_opt(bias, "--H", o.H, "Steklov window length");
    add_opt(bias, "--T1", o.T1, "scan start (must dwarf H)");
    add_opt(bias, "--T2", o.T2, "scan end");
    add_opt(bias, "--epsilon", o.epsilon, "decision threshold");

    CLI::App* report = app.add_subcommand("report", "all procedures plus the decision pipeline");
    add_common_flags(report, o);
    add_opt(report, "--epsilon", o.epsilon, "bias decision threshold");

    CLI::App* wis = app.add_subcommand("check-wis", "separation-based membership test");
    add_common_flags(wis, o);
    wis->add_option("--component", component, "1-based component index");
    wis->add_option("--lambda", lambda, "shift to test");
    wis->add_option("--horizon", horizon, "pair-grid horizon");
    wis->add_option("--b-max", b_max, "cap of the nonuniform certificate slope");

    CLI::App* growth = app.add_subcommand("growth", "transition growth-bound estimation");
    add_common_flags(growth, o);
    growth->add_option("--component", component, "1-based component index");
    growth->add_option("--a-tilde", a_candidates, "candidate exponential rates");
    growth->add_option("--horizon", horizon, "pair-grid horizon");
    growth->add_flag("--absolute", absolute, "also fit the integral of |a|");

    CLI::App* tables = app.add_subcommand("tables", "reproduce the published tables");
    add_common_flags(tables, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (lyap->parsed()) return run_lyap(o);
        if (ed->parsed()) return run_ed(o);
        if (ned->parsed()) return run_ned(o);
        if (bias->parsed()) return run_bias(o);
        if (report->parsed()) return run_report(o);
        if (wis->parsed()) return run_check_wis(o, component, lambda, horizon, b_max);
        if (growth->parsed()) return run_growth(o, component, a_candidates, horizon, absolute);
        if (tables->parsed()) return run_tables(o);
    } catch (const ds::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ds::ParseError& e) {
        std::cerr << "expression error: " << e.what() << " (offset " << e.offset() << ")\n";
        return 2;
    } catch (const ds::PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const ds::RangeError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const ds::DomainError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
