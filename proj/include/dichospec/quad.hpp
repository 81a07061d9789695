#pragma once

#include <cstdint>
#include <vector>

#include "dichospec/coefficient.hpp"
#include "dichospec/errors.hpp"

namespace dichospec {

struct QuadOptions {
    double max_panel_width = 0.5;      // oscillation safety cap
    double checkpoint_spacing = 1e3;   // sparse-mode checkpoint distance (time units)
    std::int64_t panel_cap = 1'000'000'000;  // refuse numeric builds beyond this
    std::int64_t dense_limit = 4'000'000;    // store per-panel prefixes up to this
    // Near t=0 the paper's ln-driven coefficients oscillate in ln t; panels
    // below t=1 shrink proportionally to t down to this floor.
    double start_gap = 1e-6;
};

// Queryable F(t) = integral of a from refTime, with value(refTime) = 0.
// Exact mode evaluates the closed-form antiderivative; numeric mode uses
// fixed-order Gauss-Legendre on capped panels with cached prefix values.
class CumulativeIntegral {
public:
    enum class Mode { Exact, Numeric };

    double value(double t) const;
    double between(double s, double t) const { return value(t) - value(s); }

    Mode mode() const noexcept { return mode_; }
    double ref_time() const noexcept { return ref_time_; }
    double covered_min() const noexcept { return cover_min_; }
    double covered_max() const noexcept { return cover_max_; }
    double error_target() const noexcept { return error_target_; }
    // Additive bias assigned to the skipped [refTime, start] segment, bounded
    // by sup|a| * start_gap; zero in exact mode.
    double start_gap_bias_bound() const noexcept { return start_bias_bound_; }

private:
    friend CumulativeIntegral build_cumulative(const CoefficientFunction&, double, double,
                                               double, const QuadOptions&);
    void check_range(double t) const;
    double numeric_value(double t) const;
    double panel_width_for(std::size_t idx) const;

    Mode mode_ = Mode::Numeric;
    CoefficientFunction source_;
    double ref_time_ = 0.0;
    double cover_min_ = 0.0;
    double cover_max_ = 0.0;
    double error_target_ = 1e-6;
    double start_bias_bound_ = 0.0;

    double exact_anchor_ = 0.0;

    // Numeric mode: strictly increasing boundary grid with prefix values.
    // Dense builds store every panel boundary; large ranges fall back to
    // checkpoints with panel-local requadrature per query.
    std::vector<double> grid_;
    std::vector<double> prefix_;
    double panel_width_ = 0.5;
};

// Covers [refTime, maxTime]; callers add their largest window t+H to maxTime.
// refTime >= f.domain_start, or refTime = 0 with the start-gap rule (the
// segment [0, start] is assigned integral 0).
CumulativeIntegral build_cumulative(const CoefficientFunction& f, double ref_time,
                                    double error_target, double max_time,
                                    const QuadOptions& opts = {});

double integral_between(const CumulativeIntegral& F, double s, double t);

// Numeric integral of |f| over [s, t]; sign changes of f are located by
// bisection so each sub-panel integrand is smooth.
double integral_of_abs(const CoefficientFunction& f, double s, double t, double error_target,
                       const QuadOptions& opts = {});

} // namespace dichospec
