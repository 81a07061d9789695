#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dichospec/spectra.hpp"
#include "dichospec/systems.hpp"

using namespace dichospec;

namespace {
constexpr double kPi = std::numbers::pi;

bool close(double v, double target, double tol) { return std::fabs(v - target) <= tol; }
} // namespace

TEST_CASE("grid construction includes both endpoints") {
    std::vector<double> g = make_grid(1.0, 2.0, 0.3);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == doctest::Approx(1.0));
    CHECK(g.back() == doctest::Approx(2.0));
    // exact fit keeps the final point single
    std::vector<double> h = make_grid(0.0, 1.0, 0.25);
    CHECK(h.size() == 5);
    CHECK(h.back() == doctest::Approx(1.0));
}

TEST_CASE("default grid step floors at pi/8 and caps the sample count") {
    CHECK(default_grid_step(0.0, 1.0) == doctest::Approx(kPi / 8));
    CHECK(default_grid_step(1e4, 1e6) == doctest::Approx((1e6 - 1e4) / 1e4));
}

TEST_CASE("lyapunov intervals of a constant system collapse to the constant") {
    DiagonalSystem sys = builtin("constant", {{"c1", -1.5}, {"c2", 2.0}});
    auto iv = lyapunov_intervals(sys, 10.0, 100.0);
    REQUIRE(iv.size() == 2);
    CHECK(iv[0].lower == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(iv[0].upper == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(iv[1].lower == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(iv[0].kind == SpectrumKind::Lyapunov);
}

TEST_CASE("planar system lyapunov intervals match the published window values") {
    DiagonalSystem sys = builtin("planar-nubg");
    auto iv = lyapunov_intervals(sys, 1e2, 1e4);
    REQUIRE(iv.size() == 2);
    CHECK(close(iv[0].lower, -1.0098, 0.05));
    CHECK(close(iv[0].upper, 1.0004, 0.05));
    CHECK(close(iv[1].lower, 2.0019, 0.05));
    CHECK(close(iv[1].upper, 6.0000, 0.05));
    // component 1 is sin(ln t) exactly, so the interval sits inside [-1, 1]
    CHECK(iv[0].lower >= -1.0 - 1e-6);
    CHECK(iv[0].upper <= 1.0 + 1e-6);
}

TEST_CASE("ed intervals: constants are tight and not divergent") {
    DiagonalSystem sys = builtin("constant", {{"c1", 0.5}});
    auto iv = ed_intervals(sys, 10.0, 20.0, 2000.0);
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].lower == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(iv[0].upper == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_FALSE(iv[0].divergent);
}

TEST_CASE("ed intervals grow linearly for the no-bounded-growth scalar") {
    DiagonalSystem sys = builtin("no-ubg-scalar");
    // Steklov window pi sampled at pi multiples: the average at t = 2k*pi is
    // 4k + 2 and at t = (2k+1)*pi is -(4k + 2).
    auto iv = ed_intervals(sys, kPi, kPi, 100 * kPi, kPi);
    REQUIRE(iv.size() == 1);
    int k = 49; // largest even multiple 2k*pi on the scan grid [pi, 99*pi]
    CHECK(iv[0].upper >= 4 * k + 2 - 1e-9);
    CHECK(iv[0].lower <= -(4 * k + 2) + 1e-9);
    // doubling the scan range roughly doubles the width: linear growth in T
    auto iv2 = ed_intervals(sys, kPi, kPi, 200 * kPi, kPi);
    CHECK(iv2[0].width() >= 1.8 * iv[0].width());
    // once the width clears the absolute threshold the flag trips
    auto iv3 = ed_intervals(sys, kPi, kPi, 600 * kPi, kPi);
    CHECK(iv3[0].divergent);
}

TEST_CASE("planar ed intervals reproduce the published table") {
    DiagonalSystem sys = builtin("planar-nubg");
    auto iv = ed_intervals(sys, 1e4, 1e5, 1e8);
    REQUIRE(iv.size() == 2);
    CHECK(close(iv[0].lower, -1.4142, 0.01));
    CHECK(close(iv[0].upper, 1.4142, 0.01));
    CHECK_FALSE(iv[0].divergent);
    CHECK(iv[1].width() >= 1e3);
    CHECK(iv[1].divergent);
}

TEST_CASE("ned intervals honor the H >> T2 precondition") {
    DiagonalSystem sys = builtin("planar-nubg");
    CHECK_THROWS_AS(ned_intervals(sys, 5e3, 1e2, 1e3), PreconditionError);
    auto iv = ned_intervals(sys, 1e6, 1e2, 1e3);
    REQUIRE(iv.size() == 2);
    CHECK(close(iv[1].lower, 1.9999, 0.02));
    CHECK(close(iv[1].upper, 5.9985, 0.02));
    auto iv2 = ned_intervals(sys, 1e4, 1e2, 1e3);
    CHECK(close(iv2[1].lower, 1.6649, 0.05));
    CHECK(close(iv2[1].upper, 6.3694, 0.05));
}

TEST_CASE("ned of a constant collapses to the constant") {
    DiagonalSystem sys = builtin("constant", {{"c1", -0.25}});
    auto iv = ned_intervals(sys, 1e5, 10.0, 100.0);
    CHECK(iv[0].lower == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(iv[0].upper == doctest::Approx(-0.25).epsilon(1e-12));
}

TEST_CASE("bias detector on the planar system and on trivial coefficients") {
    DiagonalSystem sys = builtin("planar-nubg");
    CHECK_THROWS_AS(nonuniform_bias(sys, 1e2, 5e2, 1e5, 0.0, 0.01), PreconditionError);
    BiasReport r = nonuniform_bias(sys, 1e2, 1e4, 1e5, 0.0, 0.01);
    REQUIRE(r.per_component.size() == 2);
    CHECK(r.per_component[0].b_bar <= 0.01);
    CHECK_FALSE(r.per_component[0].nonuniform);
    CHECK(close(r.per_component[1].b_bar, 1.09, 0.05));
    CHECK(r.per_component[1].nonuniform);

    DiagonalSystem zero = builtin("constant", {{"c1", 0.0}});
    BiasReport z = nonuniform_bias(zero, 10.0, 100.0, 1000.0, 0.0, 0.01);
    CHECK(z.per_component[0].b_bar == doctest::Approx(0.0));
    CHECK_FALSE(z.per_component[0].nonuniform);

    // constant c: b_bar = |c|*H/T1, the sup sits at t = T1
    DiagonalSystem c = builtin("constant", {{"c1", -3.0}});
    BiasReport rc = nonuniform_bias(c, 10.0, 100.0, 1000.0, 0.0, 0.01);
    CHECK(rc.per_component[0].b_bar == doctest::Approx(3.0 * 10.0 / 100.0).epsilon(1e-12));
}

TEST_CASE("bias of the bounded planar component decays as T1 grows") {
    DiagonalSystem sys = builtin("planar-nubg");
    double prev = 1e9;
    for (double t1 : {1e3, 1e4, 1e5}) {
        BiasReport r = nonuniform_bias(sys, 1e2, t1, 10.0 * t1, 0.0, 0.01);
        CHECK(r.per_component[0].b_bar < prev);
        prev = r.per_component[0].b_bar;
    }
}

TEST_CASE("shift equivariance of every interval endpoint (exact mode)") {
    double lambda = 0.6;
    DiagonalSystem sys = builtin("planar-nubg");
    DiagonalSystem moved = shifted_system(sys, -lambda); // adds +lambda to coefficients
    auto base = lyapunov_intervals(sys, 1e2, 1e3);
    auto shifted_iv = lyapunov_intervals(moved, 1e2, 1e3);
    for (std::size_t j = 0; j < base.size(); ++j) {
        CHECK(std::fabs(shifted_iv[j].lower - base[j].lower - lambda) <= 1e-12);
        CHECK(std::fabs(shifted_iv[j].upper - base[j].upper - lambda) <= 1e-12);
    }
    auto base_ned = ned_intervals(sys, 1e5, 1e2, 1e3);
    auto moved_ned = ned_intervals(moved, 1e5, 1e2, 1e3);
    for (std::size_t j = 0; j < base_ned.size(); ++j) {
        CHECK(std::fabs(moved_ned[j].lower - base_ned[j].lower - lambda) <= 1e-12);
        CHECK(std::fabs(moved_ned[j].upper - base_ned[j].upper - lambda) <= 1e-12);
    }
}

TEST_CASE("halving the grid step never shrinks an interval") {
    DiagonalSystem sys = builtin("planar-nubg");
    double step = kPi / 4;
    auto coarse = lyapunov_intervals(sys, 1e2, 1e3, step);
    auto fine = lyapunov_intervals(sys, 1e2, 1e3, step / 2);
    for (std::size_t j = 0; j < coarse.size(); ++j) {
        CHECK(fine[j].lower <= coarse[j].lower + 1e-12);
        CHECK(fine[j].upper >= coarse[j].upper - 1e-12);
    }
    auto coarse_ned = ned_intervals(sys, 1e5, 1e2, 1e3, step);
    auto fine_ned = ned_intervals(sys, 1e5, 1e2, 1e3, step / 2);
    for (std::size_t j = 0; j < coarse_ned.size(); ++j) {
        CHECK(fine_ned[j].lower <= coarse_ned[j].lower + 1e-12);
        CHECK(fine_ned[j].upper >= coarse_ned[j].upper - 1e-12);
    }
}

TEST_CASE("full_report routes components per the bias decision") {
    SUBCASE("planar system") {
        SpectrumReport r = full_report(builtin("planar-nubg"));
        REQUIRE(r.lyapunov.size() == 2);
        CHECK_FALSE(r.bias.per_component[0].nonuniform);
        CHECK(r.bias.per_component[1].nonuniform);
        // uniform component: NED copied from ED
        CHECK_FALSE(r.ed[0].divergent);
        CHECK(r.ned[0].lower == r.ed[0].lower);
        CHECK(r.ned[0].upper == r.ed[0].upper);
        CHECK(r.ned[0].kind == SpectrumKind::NED);
        CHECK(close(r.ned[0].lower, -std::sqrt(2.0), 0.01));
        // nonuniform component: ED divergent, NED from the H >> T2 scan
        CHECK(r.ed[1].divergent);
        CHECK(close(r.ned[1].lower, 2.0, 0.05));
        CHECK(close(r.ned[1].upper, 6.0, 0.05));
        CHECK(r.containment_violations.empty());
    }
    SUBCASE("intro system") {
        SpectrumReport r = full_report(builtin("intro-diagonal"));
        CHECK_FALSE(r.bias.per_component[0].nonuniform);
        CHECK(close(r.ned[0].lower, 4.0, 0.01));
        CHECK(close(r.ned[0].upper, 4.0, 0.01));
        CHECK(r.bias.per_component[1].nonuniform);
        CHECK(r.ed[1].divergent);
        CHECK(close(r.ned[1].lower, -2.0, 0.05));
        CHECK(close(r.ned[1].upper, 2.0, 0.05));
        CHECK(r.containment_violations.empty());
    }
    SUBCASE("constant system") {
        SpectrumReport r = full_report(builtin("constant", {{"c1", 1.25}}));
        for (const auto& list : {r.lyapunov, r.ed, r.ned}) {
            CHECK(list[0].lower == doctest::Approx(1.25).epsilon(1e-12));
            CHECK(list[0].upper == doctest::Approx(1.25).epsilon(1e-12));
            CHECK_FALSE(list[0].divergent);
        }
        CHECK_FALSE(r.bias.per_component[0].nonuniform);
        CHECK(r.containment_violations.empty());
    }
}

TEST_CASE("series capture emits one (t, value) track per component") {
    std::vector<Series> series;
    DiagonalSystem sys = builtin("constant", {{"c1", 1.0}, {"c2", 2.0}});
    lyapunov_intervals(sys, 10.0, 20.0, 1.0, 1e-6, &series);
    REQUIRE(series.size() == 2);
    CHECK(series[0].quantity == "lambda");
    CHECK(series[0].component == 1);
    CHECK(series[0].points.size() == 11);
    CHECK(series[0].points.front().first == doctest::Approx(10.0));
    CHECK(series[1].points.back().second == doctest::Approx(2.0).epsilon(1e-12));
}
