#pragma once

#include "dichospec/quad.hpp"

namespace dichospec {

// Window parameters shared by the sliding-average procedures.
struct SteklovParams {
    double window = 0.0;    // H
    double t_begin = 0.0;   // T1
    double t_end = 0.0;     // T2
    double grid_step = 0.0;

    void validate() const;
};

// (F(t+H) - F(t)) / H, the windowed mean of the integrand over [t, t+H].
double steklov_average(const CumulativeIntegral& F, double t, double H);

// Separation gap between two components' windowed means.
double steklov_gap(const CumulativeIntegral& F1, const CumulativeIntegral& F2, double t,
                   double H);

// (H/t)*|gap|, the scale that exposes a nonuniform term when t >> H.
double scaled_gap(const CumulativeIntegral& F1, const CumulativeIntegral& F2, double t,
                  double H);

} // namespace dichospec
