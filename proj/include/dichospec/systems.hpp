#pragma once

#include <map>
#include <string>
#include <vector>

#include "dichospec/spectra.hpp"

namespace dichospec {

// Catalog names accepted by builtin().
std::vector<std::string> builtin_names();

// Materializes a named example system. Parameters: "intro-diagonal" and
// "planar-nubg" take omega1 (default 4) and omega2 (default 2); "constant"
// takes c1..cn (default a single c1 = 0); the scalar examples take none.
// Every entry carries a closed-form antiderivative for exact-mode quadrature.
DiagonalSystem builtin(const std::string& name,
                       const std::map<std::string, double>& overrides = {});

// The system with lambda subtracted from every diagonal coefficient.
DiagonalSystem shifted_system(const DiagonalSystem& sys, double lambda);

} // namespace dichospec
