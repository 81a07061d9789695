#pragma once

#include <utility>
#include <vector>

#include "dichospec/quad.hpp"
#include "dichospec/spectra.hpp"

namespace dichospec {

// Certificate for F_high - F_low >= a*(t-s) - b*s + d over a pair grid:
// linear separation rate a, nonuniform allowance b growing with the initial
// time, and additive defect d. Feasible means a > 0.
struct SeparationCertificate {
    double a = 0.0;
    double b = 0.0;
    double d = 0.0;
    double margin = 0.0; // min slack of the inequality over the grid
    bool feasible = false;
    std::size_t pair_count = 0;
};

enum class GrowthMode { Signed, Absolute };

// Transition-bound fit |F(t) - F(s)| <= a_tilde*|t-s| + b_tilde*s + d_tilde
// (s the initial time). b_tilde = 0 recovers uniformly bounded growth.
struct GrowthBound {
    double a_tilde = 0.0;
    double b_tilde = 0.0;
    double d_tilde = 0.0;
    GrowthMode mode = GrowthMode::Signed;
    bool satisfied = false;
};

// Logarithmically spaced (s, t) pairs with 1 <= s < t <= horizon; at most
// `cap` pairs. Both s and the gap t-s sweep decades.
std::vector<std::pair<double, double>> make_pair_grid(double horizon, int s_points = 32,
                                                      int gap_points = 32,
                                                      std::size_t cap = 4096);

// Best certificate over a coarse-plus-refined sweep of (a, b), d set to the
// minimal slack. Preference order: larger a, then smaller b, then larger d.
SeparationCertificate check_weak_separation(const CumulativeIntegral& F_low,
                                            const CumulativeIntegral& F_high,
                                            const std::vector<std::pair<double, double>>& pairs,
                                            double b_max = 10.0);

// Direct re-validation of a certificate against every grid pair.
bool certificate_holds(const SeparationCertificate& cert, const CumulativeIntegral& F_low,
                       const CumulativeIntegral& F_high,
                       const std::vector<std::pair<double, double>>& pairs,
                       double slack_tol = 1e-9);

// lambda is inside component j's separation-based spectrum when neither the
// shifted component above lambda nor lambda above the shifted component
// admits a feasible certificate.
bool wis_membership(const DiagonalSystem& sys, int component, double lambda,
                    const std::vector<std::pair<double, double>>& pairs, double b_max = 10.0,
                    double error_target = 1e-6);

// Smallest (b_tilde, d_tilde) fit for each candidate a_tilde, signed mode
// (net integral, both transition directions). When f_abs is given, a second
// batch of bounds in absolute mode (integral of |f_abs|, the strict reading
// of bounded growth) is appended.
std::vector<GrowthBound> estimate_growth_bounds(const CumulativeIntegral& F,
                                                const CoefficientFunction* f_abs,
                                                const std::vector<std::pair<double, double>>& pairs,
                                                const std::vector<double>& a_candidates,
                                                double error_target = 1e-6);

// Per-component check that Lyapunov fits inside NED fits inside ED, up to
// `tolerance` at each endpoint; divergent intervals contain everything.
std::vector<ContainmentViolation> check_containment(const SpectrumReport& report,
                                                    double tolerance = 0.05);

} // namespace dichospec
