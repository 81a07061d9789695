#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dichospec/coefficient.hpp"
#include "dichospec/steklov.hpp"

namespace dichospec {

struct DiagonalSystem {
    std::string name;
    std::vector<CoefficientFunction> coefficients;
    std::map<std::string, double> parameters;

    int dimension() const { return static_cast<int>(coefficients.size()); }
};

enum class SpectrumKind { Lyapunov, ED, NED };

// One closed interval per component; `divergent` is the finite-time
// surrogate for a spectrum equal to the whole real line (bounds are then
// informational only).
struct SpectralInterval {
    int component = 0; // 1-based
    double lower = 0.0;
    double upper = 0.0;
    bool divergent = false;
    SpectrumKind kind = SpectrumKind::Lyapunov;

    double width() const { return upper - lower; }
};

struct BiasComponent {
    int component = 0;
    double b_bar = 0.0;
    bool nonuniform = false;
};

struct BiasReport {
    std::vector<BiasComponent> per_component;
    double epsilon = 0.01;
    SteklovParams params;
};

struct ContainmentViolation {
    int component = 0;
    std::string relation; // e.g. "lyapunov.upper > ned.upper"
    double excess = 0.0;
};

// Two-column (t, value) sample series for external plotting.
struct Series {
    int component = 0;
    std::string quantity; // "lambda", "steklov", "bias"
    std::vector<std::pair<double, double>> points;
};

struct ReportConfig {
    double lyap_t1 = 1e2, lyap_t2 = 1e4;
    double ed_window = 1e4, ed_t0 = 1e5, ed_t_end = 1e8;
    double ned_window = 1e6, ned_t1 = 1e2, ned_t2 = 1e3;
    double bias_window = 1e2, bias_t1 = 1e5, bias_t2 = 1e6;
    double epsilon = 0.01;
    double grid_step = 0.0; // 0 = per-procedure default
    double error_target = 1e-6;
    double ratio_min = 10.0;
    double divergence_factor = 1e3;
    double containment_tolerance = 0.05;
};

struct SpectrumReport {
    std::string system_name;
    std::map<std::string, double> parameters;
    std::vector<SpectralInterval> lyapunov;
    std::vector<SpectralInterval> ed;
    std::vector<SpectralInterval> ned;
    BiasReport bias;
    std::vector<ContainmentViolation> containment_violations;
    ReportConfig config; // provenance: windows, grid, tolerances
};

// Trig resolution floor pi/8, at most ~1e4 samples above it.
double default_grid_step(double t_begin, double t_end);

// Closed grid {a, a+step, ...} with b always included.
std::vector<double> make_grid(double a, double b, double step);

// Cumulative integrals for every component, origin at refTime with the
// start-gap rule, covering [refTime, maxTime].
std::vector<CumulativeIntegral> build_system_integrals(const DiagonalSystem& sys,
                                                       double ref_time, double error_target,
                                                       double max_time);

// [inf, sup] of the running average F_j(t)/t over the grid on [T1, T2].
std::vector<SpectralInterval> lyapunov_intervals(const DiagonalSystem& sys, double t1, double t2,
                                                 double grid_step = 0.0,
                                                 double error_target = 1e-6,
                                                 std::vector<Series>* series = nullptr);

// Bounded-growth regime (t ranges far beyond H): [inf, sup] of the Steklov
// average over t in [t0, T-H], with the divergence classification.
std::vector<SpectralInterval> ed_intervals(const DiagonalSystem& sys, double window, double t0,
                                           double t_end, double grid_step = 0.0,
                                           double error_target = 1e-6,
                                           double divergence_factor = 1e3,
                                           std::vector<Series>* series = nullptr);

// H >> T2 regime: [inf, sup] of the Steklov average over t in [T1, T2].
std::vector<SpectralInterval> ned_intervals(const DiagonalSystem& sys, double window, double t1,
                                            double t2, double grid_step = 0.0,
                                            double error_target = 1e-6, double ratio_min = 10.0,
                                            std::vector<Series>* series = nullptr);

// b_bar_j = sup over the grid of |(1/t) * integral of a_j over [t, t+H]|,
// with the epsilon decision; requires T1 >> H.
BiasReport nonuniform_bias(const DiagonalSystem& sys, double window, double t1, double t2,
                           double grid_step, double epsilon, double error_target = 1e-6,
                           double ratio_min = 10.0, std::vector<Series>* series = nullptr);

// Bias first; uniform components keep ED and get NED := ED, nonuniform
// components get ED flagged divergent and NED from the H >> T2 scan. Runs
// the containment diagnostic. No partial reports.
SpectrumReport full_report(const DiagonalSystem& sys, const ReportConfig& config = {},
                           std::vector<Series>* series = nullptr);

} // namespace dichospec
