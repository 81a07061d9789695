#include "dichospec/steklov.hpp"

#include <cmath>
#include <numbers>

namespace dichospec {

void SteklovParams::validate() const {
    if (!(window > 0.0)) throw PreconditionError("window length H must be > 0");
    if (!(0.0 < t_begin && t_begin < t_end))
        throw PreconditionError("window bounds must satisfy 0 < T1 < T2");
    if (!(grid_step > 0.0) || grid_step > t_end - t_begin)
        throw PreconditionError("gridStep must lie in (0, T2 - T1]");
}

double steklov_average(const CumulativeIntegral& F, double t, double H) {
    if (!(H > 0.0)) throw PreconditionError("Steklov window H must be > 0");
    return (F.value(t + H) - F.value(t)) / H;
}

double steklov_gap(const CumulativeIntegral& F1, const CumulativeIntegral& F2, double t,
                   double H) {
    return steklov_average(F2, t, H) - steklov_average(F1, t, H);
}

double scaled_gap(const CumulativeIntegral& F1, const CumulativeIntegral& F2, double t,
                  double H) {
    if (!(t > 0.0)) throw PreconditionError("scaled_gap requires t > 0");
    return (H / t) * std::fabs(steklov_gap(F1, F2, t, H));
}

} // namespace dichospec
