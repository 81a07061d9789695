#include "dichospec/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dichospec {

namespace {

// 7-point Gauss-Legendre on [-1, 1].
constexpr double kGlNode[7] = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
    0.0,
    0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
constexpr double kGlWeight[7] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694,
    0.3818300505051189, 0.2797053914892767, 0.1294849661688697};

double gl_panel(const CoefficientFunction& f, double a, double b) {
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 7; ++i) acc += kGlWeight[i] * f(mid + half * kGlNode[i]);
    return acc * half;
}

// Composite GL with panel width capped for oscillation safety.
double integrate_segment(const CoefficientFunction& f, double a, double b, double max_width) {
    if (b <= a) return 0.0;
    auto n = static_cast<std::int64_t>(std::ceil((b - a) / max_width));
    n = std::max<std::int64_t>(n, 1);
    double w = (b - a) / static_cast<double>(n);
    double acc = 0.0;
    for (std::int64_t i = 0; i < n; ++i)
        acc += gl_panel(f, a + w * static_cast<double>(i), a + w * static_cast<double>(i + 1));
    return acc;
}

double exact_eval(const CoefficientFunction& f, double t) {
    try {
        return f.antiderivative_at(t);
    } catch (const DomainError&) {
        // Limit proxy for antiderivatives like t*sin(ln t) that are only
        // undefined at t = 0 itself.
        if (t == 0.0) return f.antiderivative_at(1e-300);
        throw;
    }
}

} // namespace

void CumulativeIntegral::check_range(double t) const {
    double tol = 1e-9 * std::max(1.0, std::fabs(t));
    if (t < cover_min_ - tol || t > cover_max_ + tol) {
        std::ostringstream os;
        os << "query t=" << t << " outside covered range [" << cover_min_ << ", " << cover_max_
           << "]";
        throw RangeError(os.str());
    }
}

double CumulativeIntegral::numeric_value(double t) const {
    if (t <= grid_.front()) return 0.0; // start-gap segment
    auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
    auto idx = static_cast<std::size_t>(it - grid_.begin()) - 1;
    idx = std::min(idx, grid_.size() - 1);
    double base = prefix_[idx];
    if (t > grid_[idx]) base += integrate_segment(source_, grid_[idx], t, panel_width_for(idx));
    return base;
}

double CumulativeIntegral::value(double t) const {
    check_range(t);
    if (mode_ == Mode::Exact) return exact_eval(source_, t) - exact_anchor_;
    return numeric_value(t);
}

double CumulativeIntegral::panel_width_for(std::size_t) const { return panel_width_; }

CumulativeIntegral build_cumulative(const CoefficientFunction& f, double ref_time,
                                    double error_target, double max_time,
                                    const QuadOptions& opts) {
    if (!(error_target > 0.0) || error_target > 1e-3)
        throw PreconditionError("errorTarget must lie in (0, 1e-3]");
    if (!(max_time > ref_time)) throw PreconditionError("maxTime must exceed refTime");
    if (ref_time < 0.0) throw PreconditionError("refTime must be >= 0");
    if (ref_time < f.domain_start && ref_time != 0.0)
        throw PreconditionError("refTime below the coefficient's domain start");

    CumulativeIntegral F;
    F.source_ = f;
    F.ref_time_ = ref_time;
    F.error_target_ = error_target;
    F.cover_min_ = ref_time;

    if (f.has_antiderivative()) {
        F.mode_ = CumulativeIntegral::Mode::Exact;
        F.cover_max_ = std::numeric_limits<double>::infinity();
        F.exact_anchor_ = exact_eval(f, ref_time);
        return F;
    }

    F.mode_ = CumulativeIntegral::Mode::Numeric;
    F.cover_max_ = max_time;
    double start = std::max(ref_time, f.domain_start);
    if (start == 0.0 && f.domain_start == 0.0) {
        // nothing to skip
    } else if (ref_time < start) {
        // [refTime, start] is assigned integral 0; record the bias bound.
        double sup = 0.0;
        for (int i = 1; i <= 4; ++i) sup = std::max(sup, std::fabs(f(start * i)));
        F.start_bias_bound_ = (start - ref_time) * (sup + 1.0);
    }

    std::vector<double>& grid = F.grid_;
    grid.push_back(start);
    // ln-driven oscillation near 0: geometric boundaries below t = 1.
    if (f.domain_start > 0.0 && start < 1.0) {
        double b = start;
        while (b * 1.25 < 1.0) {
            b *= 1.25;
            grid.push_back(b);
        }
        grid.push_back(1.0);
    }
    double u0 = grid.back();
    if (u0 >= max_time) {
        grid.resize(1);
        grid[0] = start;
        u0 = start;
    }

    auto panels = static_cast<std::int64_t>(std::ceil((max_time - u0) / opts.max_panel_width));
    if (panels > opts.panel_cap) {
        std::ostringstream os;
        os << "numeric build needs " << panels << " panels (cap " << opts.panel_cap
           << "); supply a closed-form antiderivative for this range";
        throw ResourceError(os.str());
    }

    double spacing = panels <= opts.dense_limit ? opts.max_panel_width : opts.checkpoint_spacing;
    F.panel_width_ = opts.max_panel_width;

    auto n = static_cast<std::int64_t>(std::ceil((max_time - u0) / spacing));
    n = std::max<std::int64_t>(n, 1);
    double step = (max_time - u0) / static_cast<double>(n);
    grid.reserve(grid.size() + static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i < n; ++i) grid.push_back(u0 + step * static_cast<double>(i));
    grid.push_back(max_time);

    F.prefix_.resize(grid.size());
    F.prefix_[0] = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        F.prefix_[i] =
            F.prefix_[i - 1] + integrate_segment(f, grid[i - 1], grid[i], opts.max_panel_width);
    return F;
}

double integral_between(const CumulativeIntegral& F, double s, double t) {
    return F.value(t) - F.value(s);
}

double integral_of_abs(const CoefficientFunction& f, double s, double t, double error_target,
                       const QuadOptions& opts) {
    if (!(error_target > 0.0) || error_target > 1e-3)
        throw PreconditionError("errorTarget must lie in (0, 1e-3]");
    if (t < s) throw PreconditionError("integral_of_abs requires s <= t");
    if (t == s) return 0.0;

    double lo = std::max(s, f.domain_start);
    double total = 0.0;

    auto panel_abs = [&](double a, double b) {
        // Locate sign changes on a fine sample, split at the roots, then each
        // piece is single-signed and |integral| equals the integral of |f|.
        constexpr int kSamples = 9;
        double xs[kSamples];
        double vs[kSamples];
        for (int i = 0; i < kSamples; ++i) {
            xs[i] = a + (b - a) * i / (kSamples - 1);
            vs[i] = f(xs[i]);
        }
        double piece_start = a;
        double acc = 0.0;
        for (int i = 1; i < kSamples; ++i) {
            if (vs[i - 1] == 0.0 || vs[i - 1] * vs[i] >= 0.0) continue;
            double left = xs[i - 1], right = xs[i], fl = vs[i - 1];
            for (int iter = 0; iter < 80 && right - left > 1e-15 * std::max(1.0, right); ++iter) {
                double mid = 0.5 * (left + right);
                double fm = f(mid);
                if (fm == 0.0) { left = right = mid; break; }
                if (fl * fm < 0.0)
                    right = mid;
                else { left = mid; fl = fm; }
            }
            double root = 0.5 * (left + right);
            acc += std::fabs(gl_panel(f, piece_start, root));
            piece_start = root;
        }
        acc += std::fabs(gl_panel(f, piece_start, b));
        return acc;
    };

    auto n = static_cast<std::int64_t>(std::ceil((t - lo) / opts.max_panel_width));
    n = std::max<std::int64_t>(n, 1);
    if (n > opts.panel_cap)
        throw ResourceError("integral_of_abs range exceeds the panel cap");
    double w = (t - lo) / static_cast<double>(n);
    for (std::int64_t i = 0; i < n; ++i)
        total += panel_abs(lo + w * static_cast<double>(i), lo + w * static_cast<double>(i + 1));
    return total;
}

} // namespace dichospec
