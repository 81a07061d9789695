#pragma once

#include <string>
#include <vector>

#include "dichospec/spectra.hpp"

namespace dichospec {

// Fixed float formats keep identical configs byte-identical across runs:
// CSV/JSON use 17 significant digits; text tables use 4 decimals, switching
// to scientific notation at 1e4.
std::string format_full(double v);
std::string format_table(double v);

std::string csv_intervals(const std::vector<SpectralInterval>& intervals);
std::string csv_bias(const BiasReport& bias);
std::string table_intervals(const std::vector<SpectralInterval>& intervals,
                            const std::string& title);
std::string table_bias(const BiasReport& bias);

std::string json_intervals(const std::vector<SpectralInterval>& intervals,
                           const std::string& kind);
std::string json_bias(const BiasReport& bias);
std::string json_report(const SpectrumReport& report);
std::string table_report(const SpectrumReport& report);

// One CSV file per series: <dir>/<quantity>_c<component>.csv, rows t,value.
void write_plot_data(const std::string& dir, const std::vector<Series>& series);

// Writes to the path, or to stdout when the path is empty.
void emit(const std::string& path, const std::string& content);

} // namespace dichospec
