#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dichospec/spectra.hpp"

namespace dichospec {

// Window parameters for one procedure; unset fields fall back to the
// subcommand's documented defaults.
struct ProcedureParams {
    std::optional<double> window;    // H
    std::optional<double> t1, t2;    // T1, T2
    std::optional<double> t0, t_end; // t0, T (ed only)
    std::optional<double> grid_step;
    std::optional<double> epsilon;   // bias only
};

// Parsed INI-style run configuration. Sections: [system] (name, params, or
// inline a1=/F1=/start1= expressions), [params] (builtin parameter
// overrides), [lyap], [ed], [ned], [bias], [numerics] (errorTarget,
// ratioMin, divergenceFactor, containmentTolerance), [output] (format,
// path, plotData).
struct RunConfig {
    std::string system_name;
    std::map<std::string, double> overrides;
    std::vector<std::string> inline_bodies;
    std::vector<std::string> inline_antiderivatives; // parallel, "" = none
    std::vector<double> inline_domain_starts;        // parallel, 0 = none

    ProcedureParams lyap, ed, ned, bias;

    std::optional<double> error_target;
    std::optional<double> ratio_min;
    std::optional<double> divergence_factor;
    std::optional<double> containment_tolerance;

    std::string format = "table"; // csv | json | table
    std::string out_path;         // empty = stdout
    std::string plot_dir;         // empty = no plot data
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");

// Builds the system the config names (builtin + overrides) or defines
// inline. A config with neither is an error.
DiagonalSystem materialize_system(const RunConfig& config);

// ReportConfig with this run's overrides folded over the built-in defaults.
ReportConfig to_report_config(const RunConfig& config);

} // namespace dichospec
