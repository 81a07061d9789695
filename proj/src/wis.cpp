#include "dichospec/wis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dichospec/errors.hpp"

namespace dichospec {

namespace {

constexpr int kSweepCells = 32;

struct PairData {
    std::vector<double> s, gap, G; // G = F_high - F_low over [s, t]
};

PairData gather_pairs(const CumulativeIntegral& F_low, const CumulativeIntegral& F_high,
                      const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 2) throw PreconditionError("separation check needs at least 2 pairs");
    PairData d;
    d.s.reserve(pairs.size());
    d.gap.reserve(pairs.size());
    d.G.reserve(pairs.size());
    for (const auto& [s, t] : pairs) {
        if (!(0.0 <= s && s <= t)) throw PreconditionError("pair grid requires 0 <= s <= t");
        d.s.push_back(s);
        d.gap.push_back(t - s);
        d.G.push_back(F_high.between(s, t) - F_low.between(s, t));
    }
    return d;
}

double min_slack_d(const PairData& pd, double a, double b) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pd.G.size(); ++i)
        d = std::min(d, pd.G[i] - a * pd.gap[i] + b * pd.s[i]);
    return d;
}

struct Candidate {
    double a = -1.0, b = 0.0, d = 0.0;
};

// Larger a wins, then smaller b, then larger d; exact comparisons keep the
// lexicographic sweep order deterministic.
bool better(const Candidate& x, const Candidate& y) {
    if (x.a != y.a) return x.a > y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.d > y.d;
}

Candidate sweep(const PairData& pd, double a_lo, double a_hi, double b_lo, double b_hi) {
    Candidate best;
    for (int ia = 0; ia < kSweepCells; ++ia) {
        double a = a_lo + (a_hi - a_lo) * ia / (kSweepCells - 1);
        for (int ib = 0; ib < kSweepCells; ++ib) {
            double b = b_lo + (b_hi - b_lo) * ib / (kSweepCells - 1);
            Candidate c{a, b, min_slack_d(pd, a, b)};
            if (best.a < 0.0 || better(c, best)) best = c;
        }
    }
    return best;
}

} // namespace

std::vector<std::pair<double, double>> make_pair_grid(double horizon, int s_points,
                                                      int gap_points, std::size_t cap) {
    if (!(horizon > 2.0)) throw PreconditionError("pair grid needs horizon > 2");
    if (s_points < 2 || gap_points < 2) throw PreconditionError("pair grid needs >= 2 points per axis");
    std::vector<std::pair<double, double>> pairs;
    double ls_max = std::log(horizon - 1.0);
    for (int i = 0; i < s_points; ++i) {
        double s = std::exp(ls_max * i / (s_points - 1));
        double gap_max = horizon - s;
        if (gap_max < 1.0) continue;
        double lg_max = std::log(gap_max);
        for (int k = 0; k < gap_points; ++k) {
            double gap = std::exp(lg_max * k / (gap_points - 1));
            pairs.emplace_back(s, s + gap);
            if (pairs.size() >= cap) return pairs;
        }
    }
    return pairs;
}

SeparationCertificate check_weak_separation(const CumulativeIntegral& F_low,
                                            const CumulativeIntegral& F_high,
                                            const std::vector<std::pair<double, double>>& pairs,
                                            double b_max) {
    if (!(b_max >= 0.0)) throw PreconditionError("bMax must be >= 0");
    PairData pd = gather_pairs(F_low, F_high, pairs);

    double a_max = 0.0;
    for (std::size_t i = 0; i < pd.G.size(); ++i)
        if (pd.gap[i] > 0.0) a_max = std::max(a_max, pd.G[i] / pd.gap[i]);

    SeparationCertificate cert;
    cert.pair_count = pairs.size();
    if (!(a_max > 0.0)) {
        cert.d = min_slack_d(pd, 0.0, 0.0);
        return cert; // no positive separation rate anywhere
    }

    Candidate best = sweep(pd, 0.0, a_max, 0.0, b_max);
    double da = a_max / (kSweepCells - 1);
    double db = b_max > 0.0 ? b_max / (kSweepCells - 1) : 0.0;
    Candidate refined = sweep(pd, std::max(0.0, best.a - da), std::min(a_max, best.a + da),
                              std::max(0.0, best.b - db), std::min(b_max, best.b + db));
    if (better(refined, best)) best = refined;

    cert.a = best.a;
    cert.b = best.b;
    cert.d = best.d;
    cert.margin = 0.0; // d is the exact minimum slack by construction
    cert.feasible = best.a > 0.0;
    return cert;
}

bool certificate_holds(const SeparationCertificate& cert, const CumulativeIntegral& F_low,
                       const CumulativeIntegral& F_high,
                       const std::vector<std::pair<double, double>>& pairs, double slack_tol) {
    for (const auto& [s, t] : pairs) {
        double G = F_high.between(s, t) - F_low.between(s, t);
        double rhs = cert.a * (t - s) - cert.b * s + cert.d;
        double scale = 1.0 + std::fabs(G) + std::fabs(rhs);
        if (G < rhs - slack_tol * scale) return false;
    }
    return true;
}

bool wis_membership(const DiagonalSystem& sys, int component, double lambda,
                    const std::vector<std::pair<double, double>>& pairs, double b_max,
                    double error_target) {
    if (component < 1 || component > sys.dimension())
        throw PreconditionError("component index out of range");
    double horizon = 0.0;
    for (const auto& [s, t] : pairs) horizon = std::max(horizon, t);
    CumulativeIntegral Fj =
        build_cumulative(sys.coefficients[component - 1], 0.0, error_target, horizon + 1.0);
    CumulativeIntegral Fl =
        build_cumulative(constant_coefficient(lambda), 0.0, error_target, horizon + 1.0);
    // lambda separated below the component, or the component below lambda,
    // each pushes lambda out of the spectrum estimate.
    SeparationCertificate below = check_weak_separation(Fl, Fj, pairs, b_max);
    SeparationCertificate above = check_weak_separation(Fj, Fl, pairs, b_max);
    return !below.feasible && !above.feasible;
}

std::vector<GrowthBound> estimate_growth_bounds(const CumulativeIntegral& F,
                                                const CoefficientFunction* f_abs,
                                                const std::vector<std::pair<double, double>>& pairs,
                                                const std::vector<double>& a_candidates,
                                                double error_target) {
    if (pairs.empty()) throw PreconditionError("growth estimation needs a nonempty pair grid");
    if (a_candidates.empty()) throw PreconditionError("growth estimation needs aTilde candidates");

    // Absolute mode shares segment integrals of |f| via prefix sums over the
    // sorted set of pair endpoints.
    std::vector<double> abs_at;
    std::vector<double> endpoints;
    if (f_abs) {
        for (const auto& [s, t] : pairs) {
            endpoints.push_back(s);
            endpoints.push_back(t);
        }
        std::sort(endpoints.begin(), endpoints.end());
        endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());
        abs_at.assign(endpoints.size(), 0.0);
        for (std::size_t i = 1; i < endpoints.size(); ++i)
            abs_at[i] = abs_at[i - 1] +
                        integral_of_abs(*f_abs, endpoints[i - 1], endpoints[i], error_target);
    }
    auto abs_between = [&](double s, double t) {
        auto is = std::lower_bound(endpoints.begin(), endpoints.end(), s) - endpoints.begin();
        auto it = std::lower_bound(endpoints.begin(), endpoints.end(), t) - endpoints.begin();
        return abs_at[static_cast<std::size_t>(it)] - abs_at[static_cast<std::size_t>(is)];
    };

    auto fit = [&](GrowthMode mode, double a_tilde) {
        // Constraints: base - aTilde*|t-s| <= bTilde*init + dTilde, with the
        // initial time being either end of the transition.
        std::vector<std::pair<double, double>> constraints; // (excess, init)
        for (const auto& [s, t] : pairs) {
            double base = mode == GrowthMode::Signed ? std::fabs(F.between(s, t))
                                                     : abs_between(s, t);
            double excess = base - a_tilde * (t - s);
            constraints.emplace_back(excess, s);
            constraints.emplace_back(excess, t);
        }
        GrowthBound g;
        g.a_tilde = a_tilde;
        g.mode = mode;
        // Defect absorbs the small-initial-time excess; the nonuniform slope
        // covers what remains, keeping bTilde minimal for this dTilde.
        double d_tilde = 0.0;
        for (const auto& [excess, init] : constraints)
            if (init <= 1.0) d_tilde = std::max(d_tilde, excess);
        double b_tilde = 0.0;
        for (const auto& [excess, init] : constraints)
            if (init > 1.0) b_tilde = std::max(b_tilde, (excess - d_tilde) / init);
        g.d_tilde = d_tilde;
        g.b_tilde = std::max(0.0, b_tilde);
        g.satisfied = true;
        for (const auto& [excess, init] : constraints) {
            double bound = g.b_tilde * init + g.d_tilde;
            if (excess > bound + 1e-9 * (1.0 + std::fabs(bound))) g.satisfied = false;
        }
        return g;
    };

    std::vector<GrowthBound> out;
    for (double a_tilde : a_candidates) {
        if (!(a_tilde > 0.0)) throw PreconditionError("aTilde candidates must be > 0");
        out.push_back(fit(GrowthMode::Signed, a_tilde));
    }
    if (f_abs)
        for (double a_tilde : a_candidates) out.push_back(fit(GrowthMode::Absolute, a_tilde));
    return out;
}

std::vector<ContainmentViolation> check_containment(const SpectrumReport& report,
                                                    double tolerance) {
    std::vector<ContainmentViolation> out;
    auto check = [&](const SpectralInterval& inner, const SpectralInterval& outer,
                     const std::string& inner_name, const std::string& outer_name) {
        if (inner.divergent || outer.divergent) return; // divergent = whole line
        if (inner.lower < outer.lower - tolerance)
            out.push_back({inner.component,
                           inner_name + ".lower < " + outer_name + ".lower",
                           outer.lower - inner.lower});
        if (inner.upper > outer.upper + tolerance)
            out.push_back({inner.component,
                           inner_name + ".upper > " + outer_name + ".upper",
                           inner.upper - outer.upper});
    };
    std::size_t n = report.lyapunov.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (j < report.ned.size()) check(report.lyapunov[j], report.ned[j], "lyapunov", "ned");
        if (j < report.ned.size() && j < report.ed.size())
            check(report.ned[j], report.ed[j], "ned", "ed");
    }
    return out;
}

} // namespace dichospec
