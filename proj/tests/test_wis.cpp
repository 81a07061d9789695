#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dichospec/steklov.hpp"
#include "dichospec/systems.hpp"
#include "dichospec/wis.hpp"

using namespace dichospec;

namespace {
constexpr double kPi = std::numbers::pi;

CumulativeIntegral build(const CoefficientFunction& f, double max_time) {
    return build_cumulative(f, 0.0, 1e-6, max_time);
}
} // namespace

TEST_CASE("pair grid shape") {
    auto pairs = make_pair_grid(200.0);
    CHECK(pairs.size() >= 64);
    CHECK(pairs.size() <= 4096);
    for (const auto& [s, t] : pairs) {
        CHECK(s >= 1.0);
        CHECK(t > s);
        CHECK(t <= 200.0 + 1e-9);
    }
    CHECK_THROWS_AS(make_pair_grid(1.5), PreconditionError);
}

TEST_CASE("separation of 0 and 1 yields the exact unit certificate") {
    CumulativeIntegral F0 = build(constant_coefficient(0.0), 300.0);
    CumulativeIntegral F1 = build(constant_coefficient(1.0), 300.0);
    auto pairs = make_pair_grid(200.0);
    SeparationCertificate cert = check_weak_separation(F0, F1, pairs);
    CHECK(cert.feasible);
    CHECK(cert.a == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cert.b == doctest::Approx(0.0));
    CHECK(std::fabs(cert.d) <= 1e-9);
    CHECK(certificate_holds(cert, F0, F1, pairs));
}

TEST_CASE("identical coefficients admit no feasible certificate") {
    CumulativeIntegral F = build(constant_coefficient(2.0), 300.0);
    SeparationCertificate cert = check_weak_separation(F, F, make_pair_grid(200.0));
    CHECK_FALSE(cert.feasible);
    CHECK(cert.a == doctest::Approx(0.0));
}

TEST_CASE("planar pair is weakly separated on [0, 200]") {
    DiagonalSystem sys = builtin("planar-nubg");
    CumulativeIntegral F1 = build(sys.coefficients[0], 300.0);
    CumulativeIntegral F2 = build(sys.coefficients[1], 300.0);
    auto pairs = make_pair_grid(200.0);
    SeparationCertificate cert = check_weak_separation(F1, F2, pairs);
    CHECK(cert.feasible);
    CHECK(cert.a >= 0.5);
    CHECK(certificate_holds(cert, F1, F2, pairs));

    // the analytically derived certificate (a=1, b=6, d=-4) also re-validates
    SeparationCertificate analytic{1.0, 6.0, -4.0, 0.0, true, pairs.size()};
    CHECK(certificate_holds(analytic, F1, F2, pairs));
}

TEST_CASE("for fixed a the minimal d never decreases as b grows") {
    DiagonalSystem sys = builtin("planar-nubg");
    CumulativeIntegral F1 = build(sys.coefficients[0], 300.0);
    CumulativeIntegral F2 = build(sys.coefficients[1], 300.0);
    auto pairs = make_pair_grid(200.0);
    // d(a, b) = min over pairs of G - a*(t-s) + b*s; monotone in b since s >= 0
    auto min_d = [&](double a, double b) {
        double d = 1e300;
        for (const auto& [s, t] : pairs)
            d = std::min(d, F2.between(s, t) - F1.between(s, t) - a * (t - s) + b * s);
        return d;
    };
    for (double a : {0.25, 1.0, 2.0}) {
        double prev = min_d(a, 0.0);
        for (double b : {1.0, 2.0, 4.0, 8.0}) {
            double cur = min_d(a, b);
            CHECK(cur >= prev - 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("certificates are consistent with the large-window gap bound") {
    // A certificate (a, b, d) on pairs within [0, T] forces the window-H gap
    // at every t <= T to be at least a - b*t/H - |d|/H once H >= 10*T.
    DiagonalSystem sys = builtin("planar-nubg");
    double T = 200.0, H = 1e4;
    CumulativeIntegral F1 = build(sys.coefficients[0], T + H + 1);
    CumulativeIntegral F2 = build(sys.coefficients[1], T + H + 1);
    SeparationCertificate analytic{1.0, 6.0, -4.0, 0.0, true, 0};
    CHECK(certificate_holds(analytic, F1, F2, make_pair_grid(T)));
    for (double t = 1.0; t <= T; t += kPi / 8) {
        double gap = steklov_gap(F1, F2, t, H);
        CHECK(gap >= analytic.a - analytic.b * t / H - std::fabs(analytic.d) / H - 1e-9);
    }
}

TEST_CASE("membership for constant coefficients") {
    DiagonalSystem sys = builtin("constant", {{"c1", 2.0}});
    auto pairs = make_pair_grid(200.0);
    CHECK(wis_membership(sys, 1, 2.0, pairs));        // zero gap both ways
    CHECK_FALSE(wis_membership(sys, 1, 3.0, pairs));  // separates with a = 1
    CHECK_FALSE(wis_membership(sys, 1, 1.0, pairs));
    CHECK_THROWS_AS(wis_membership(sys, 2, 0.0, pairs), PreconditionError);
}

TEST_CASE("membership rejects shifts outside the sampled component range") {
    DiagonalSystem sys = builtin("planar-nubg");
    auto pairs = make_pair_grid(200.0);
    CHECK_FALSE(wis_membership(sys, 2, 0.0, pairs)); // below the [2, 6] band
    CHECK_FALSE(wis_membership(sys, 2, 50.0, pairs));
    CHECK_FALSE(wis_membership(sys, 1, -10.0, pairs));
    CHECK_FALSE(wis_membership(sys, 1, 10.0, pairs));
}

TEST_CASE("growth bounds: constants need no nonuniform slope") {
    CumulativeIntegral F = build(constant_coefficient(-2.0), 300.0);
    CoefficientFunction c = constant_coefficient(-2.0);
    auto bounds = estimate_growth_bounds(F, &c, make_pair_grid(200.0), {2.0});
    REQUIRE(bounds.size() == 2);
    for (const GrowthBound& g : bounds) {
        CHECK(g.b_tilde == doctest::Approx(0.0));
        CHECK(std::fabs(g.d_tilde) <= 1e-9);
        CHECK(g.satisfied);
    }
    CHECK(bounds[0].mode == GrowthMode::Signed);
    CHECK(bounds[1].mode == GrowthMode::Absolute);
}

TEST_CASE("growth bounds for t sin t + 1 on grids up to T = 1e3") {
    DiagonalSystem sys = builtin("no-ubg-scalar");
    CumulativeIntegral F = build(sys.coefficients[0], 1100.0);
    for (double T : {100.0, 1000.0}) {
        auto bounds = estimate_growth_bounds(F, nullptr, make_pair_grid(T), {2.0});
        REQUIRE(bounds.size() == 1);
        CHECK(bounds[0].a_tilde == 2.0);
        CHECK(bounds[0].b_tilde <= 2.0 + 1e-9);
        CHECK(bounds[0].satisfied);
        CHECK(std::fabs(bounds[0].d_tilde) <= 10.0);
    }
}

TEST_CASE("the growth bound is tight at pi-multiple pairs (exact mode)") {
    DiagonalSystem sys = builtin("no-ubg-scalar");
    CumulativeIntegral F = build(sys.coefficients[0], 1100.0);
    REQUIRE(F.mode() == CumulativeIntegral::Mode::Exact);
    for (int k : {1, 5, 50, 150}) {
        double s = 2 * k * kPi, t = s + kPi;
        // integral over [2k*pi, 2k*pi + pi] equals 2*(t - s) + 2*s exactly
        double lhs = F.between(s, t);
        double rhs = 2.0 * (t - s) + 2.0 * s;
        CHECK(std::fabs(lhs - rhs) <= 1e-9 * std::max(1.0, std::fabs(rhs)));
    }
}

TEST_CASE("containment diagnostic flags synthetic violations only") {
    SpectrumReport report;
    report.lyapunov = {{1, 0.0, 2.0, false, SpectrumKind::Lyapunov}};
    report.ned = {{1, 0.0, 1.0, false, SpectrumKind::NED}};
    report.ed = {{1, -1.0, 3.0, false, SpectrumKind::ED}};
    auto violations = check_containment(report, 0.05);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].component == 1);
    CHECK(violations[0].relation == "lyapunov.upper > ned.upper");
    CHECK(violations[0].excess == doctest::Approx(1.0));

    // divergent ED swallows anything
    report.ned = {{1, 0.0, 2.5, false, SpectrumKind::NED}};
    report.ed = {{1, 0.0, 0.0, true, SpectrumKind::ED}};
    CHECK(check_containment(report, 0.05).empty());

    SpectrumReport ok = full_report(builtin("constant", {{"c1", -1.0}}));
    CHECK(check_containment(ok, 0.05).empty());
}
