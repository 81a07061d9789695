#include "dichospec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dichospec/errors.hpp"
#include "dichospec/parallel.hpp"
#include "dichospec/wis.hpp"

namespace dichospec {

namespace {

struct ScanResult {
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
};

// Deterministic min/max of value(grid[i]) regardless of worker count:
// per-chunk extrema are merged in chunk order.
template <typename Value>
ScanResult scan_grid(const std::vector<double>& grid, Value&& value,
                     std::vector<double>* samples) {
    std::size_t n = grid.size();
    if (samples) samples->assign(n, 0.0);
    std::vector<ScanResult> partial(worker_count() + 1);
    parallel_chunks(n, [&](std::size_t b, std::size_t e, std::size_t chunk) {
        ScanResult local;
        for (std::size_t i = b; i < e; ++i) {
            double v = value(grid[i]);
            local.min = std::min(local.min, v);
            local.max = std::max(local.max, v);
            if (samples) (*samples)[i] = v;
        }
        partial[chunk] = local;
    });
    ScanResult out;
    for (const ScanResult& p : partial) {
        out.min = std::min(out.min, p.min);
        out.max = std::max(out.max, p.max);
    }
    return out;
}

void require_dimension(const DiagonalSystem& sys) {
    if (sys.coefficients.empty()) throw PreconditionError("system has no components");
}

void push_series(std::vector<Series>* series, int component, const std::string& quantity,
                 const std::vector<double>& grid, const std::vector<double>& values) {
    if (!series) return;
    Series s;
    s.component = component;
    s.quantity = quantity;
    s.points.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) s.points.emplace_back(grid[i], values[i]);
    series->push_back(std::move(s));
}

} // namespace

double default_grid_step(double t_begin, double t_end) {
    // pi/8 resolves the trig oscillations in the target coefficient class;
    // the span/1e4 branch caps the sample count on very long windows.
    return std::max(std::numbers::pi / 8.0, (t_end - t_begin) / 1e4);
}

std::vector<double> make_grid(double a, double b, double step) {
    if (!(step > 0.0)) throw PreconditionError("grid step must be > 0");
    if (!(a < b)) throw PreconditionError("grid requires T1 < T2");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>((b - a) / step) + 2);
    double tol = 1e-12 * std::max(1.0, std::fabs(b));
    for (std::size_t k = 0;; ++k) {
        double t = a + static_cast<double>(k) * step;
        if (t > b + tol) break;
        grid.push_back(t);
    }
    if (grid.empty() || grid.back() < b - tol) grid.push_back(b);
    else grid.back() = b;
    return grid;
}

std::vector<CumulativeIntegral> build_system_integrals(const DiagonalSystem& sys,
                                                       double ref_time, double error_target,
                                                       double max_time) {
    require_dimension(sys);
    std::vector<CumulativeIntegral> out;
    out.reserve(sys.coefficients.size());
    for (const CoefficientFunction& f : sys.coefficients)
        out.push_back(build_cumulative(f, ref_time, error_target, max_time));
    return out;
}

std::vector<SpectralInterval> lyapunov_intervals(const DiagonalSystem& sys, double t1, double t2,
                                                 double grid_step, double error_target,
                                                 std::vector<Series>* series) {
    require_dimension(sys);
    if (!(0.0 < t1 && t1 < t2)) throw PreconditionError("lyapunov window requires 0 < T1 < T2");
    if (grid_step <= 0.0) grid_step = default_grid_step(t1, t2);
    std::vector<double> grid = make_grid(t1, t2, grid_step);
    std::vector<CumulativeIntegral> F = build_system_integrals(sys, 0.0, error_target, t2);

    std::vector<SpectralInterval> out;
    for (int j = 0; j < sys.dimension(); ++j) {
        std::vector<double> samples;
        ScanResult r = scan_grid(
            grid, [&](double t) { return F[j].value(t) / t; }, series ? &samples : nullptr);
        push_series(series, j + 1, "lambda", grid, samples);
        out.push_back({j + 1, r.min, r.max, false, SpectrumKind::Lyapunov});
    }
    return out;
}

std::vector<SpectralInterval> ed_intervals(const DiagonalSystem& sys, double window, double t0,
                                           double t_end, double grid_step, double error_target,
                                           double divergence_factor,
                                           std::vector<Series>* series) {
    require_dimension(sys);
    if (!(window > 0.0)) throw PreconditionError("window length H must be > 0");
    if (!(0.0 < t0 && t0 + window < t_end))
        throw PreconditionError("ED scan requires 0 < t0 and t0 + H < T");
    double scan_end = t_end - window;
    if (grid_step <= 0.0) grid_step = default_grid_step(t0, scan_end);
    std::vector<double> grid = make_grid(t0, scan_end, grid_step);
    std::vector<CumulativeIntegral> F = build_system_integrals(sys, 0.0, error_target, t_end);

    // Half-range scan endpoint: stability of the extrema under doubling the
    // scan range is the non-divergence check.
    double half_end = t0 + 0.5 * (scan_end - t0);
    std::size_t half_count = 0;
    while (half_count < grid.size() && grid[half_count] <= half_end) ++half_count;

    std::vector<SpectralInterval> out;
    for (int j = 0; j < sys.dimension(); ++j) {
        std::vector<double> samples;
        ScanResult full = scan_grid(
            grid, [&](double t) { return steklov_average(F[j], t, window); },
            &samples);
        ScanResult half;
        for (std::size_t i = 0; i < half_count; ++i) {
            half.min = std::min(half.min, samples[i]);
            half.max = std::max(half.max, samples[i]);
        }
        push_series(series, j + 1, "ed", grid, samples);

        double w_full = full.max - full.min;
        double w_half = half.max - half.min;
        bool divergent = w_full > divergence_factor * 1.0;
        if (w_full > 0.0 && std::fabs(w_full - w_half) > 0.5 * w_full) divergent = true;
        out.push_back({j + 1, full.min, full.max, divergent, SpectrumKind::ED});
    }
    return out;
}

std::vector<SpectralInterval> ned_intervals(const DiagonalSystem& sys, double window, double t1,
                                            double t2, double grid_step, double error_target,
                                            double ratio_min, std::vector<Series>* series) {
    require_dimension(sys);
    if (!(0.0 < t1 && t1 < t2)) throw PreconditionError("NED scan requires 0 < T1 < T2");
    if (!(window >= ratio_min * t2))
        throw PreconditionError("NED scan requires H >= " + std::to_string(ratio_min) +
                               " * T2 (window must dwarf the scan range)");
    if (grid_step <= 0.0) grid_step = default_grid_step(t1, t2);
    std::vector<double> grid = make_grid(t1, t2, grid_step);
    std::vector<CumulativeIntegral> F =
        build_system_integrals(sys, 0.0, error_target, t2 + window);

    std::vector<SpectralInterval> out;
    for (int j = 0; j < sys.dimension(); ++j) {
        std::vector<double> samples;
        ScanResult r = scan_grid(
            grid, [&](double t) { return steklov_average(F[j], t, window); },
            series ? &samples : nullptr);
        push_series(series, j + 1, "ned", grid, samples);
        out.push_back({j + 1, r.min, r.max, false, SpectrumKind::NED});
    }
    return out;
}

BiasReport nonuniform_bias(const DiagonalSystem& sys, double window, double t1, double t2,
                           double grid_step, double epsilon, double error_target,
                           double ratio_min, std::vector<Series>* series) {
    require_dimension(sys);
    if (!(0.0 < t1 && t1 < t2)) throw PreconditionError("bias scan requires 0 < T1 < T2");
    if (!(window > 0.0)) throw PreconditionError("window length H must be > 0");
    if (!(t1 >= ratio_min * window))
        throw PreconditionError("bias scan requires T1 >= " + std::to_string(ratio_min) +
                               " * H (the 1/t scaling needs t >> H)");
    if (!(epsilon > 0.0)) throw PreconditionError("epsilon must be > 0");
    if (grid_step <= 0.0) grid_step = default_grid_step(t1, t2);
    std::vector<double> grid = make_grid(t1, t2, grid_step);
    std::vector<CumulativeIntegral> F =
        build_system_integrals(sys, 0.0, error_target, t2 + window);

    BiasReport report;
    report.epsilon = epsilon;
    report.params = {window, t1, t2, grid_step};
    for (int j = 0; j < sys.dimension(); ++j) {
        std::vector<double> samples;
        ScanResult r = scan_grid(
            grid, [&](double t) { return std::fabs(F[j].between(t, t + window)) / t; },
            series ? &samples : nullptr);
        push_series(series, j + 1, "bias", grid, samples);
        report.per_component.push_back({j + 1, r.max, r.max >= epsilon});
    }
    return report;
}

SpectrumReport full_report(const DiagonalSystem& sys, const ReportConfig& cfg,
                           std::vector<Series>* series) {
    require_dimension(sys);
    SpectrumReport report;
    report.system_name = sys.name;
    report.parameters = sys.parameters;
    report.config = cfg;

    report.bias = nonuniform_bias(sys, cfg.bias_window, cfg.bias_t1, cfg.bias_t2, cfg.grid_step,
                                  cfg.epsilon, cfg.error_target, cfg.ratio_min, series);
    report.lyapunov = lyapunov_intervals(sys, cfg.lyap_t1, cfg.lyap_t2, cfg.grid_step,
                                         cfg.error_target, series);
    report.ed = ed_intervals(sys, cfg.ed_window, cfg.ed_t0, cfg.ed_t_end, cfg.grid_step,
                             cfg.error_target, cfg.divergence_factor, series);

    bool any_nonuniform = false;
    for (const BiasComponent& b : report.bias.per_component) any_nonuniform |= b.nonuniform;

    std::vector<SpectralInterval> ned_scan;
    if (any_nonuniform)
        ned_scan = ned_intervals(sys, cfg.ned_window, cfg.ned_t1, cfg.ned_t2, cfg.grid_step,
                                 cfg.error_target, cfg.ratio_min, series);

    report.ned.reserve(report.ed.size());
    for (int j = 0; j < sys.dimension(); ++j) {
        if (report.bias.per_component[j].nonuniform) {
            // A nonuniform bias term means the windowed means drift without
            // bound in the t >> H regime: the ED spectrum is the whole line.
            report.ed[j].divergent = true;
            report.ned.push_back(ned_scan[j]);
        } else {
            SpectralInterval ned = report.ed[j];
            ned.kind = SpectrumKind::NED;
            report.ned.push_back(ned);
        }
    }

    report.containment_violations = check_containment(report, cfg.containment_tolerance);
    return report;
}

} // namespace dichospec
