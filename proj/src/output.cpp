#include "dichospec/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dichospec/errors.hpp"

namespace dichospec {

namespace {

const char* kind_name(SpectrumKind k) {
    switch (k) {
        case SpectrumKind::Lyapunov: return "lyapunov";
        case SpectrumKind::ED: return "ed";
        case SpectrumKind::NED: return "ned";
    }
    return "?";
}

std::string json_interval_array(const std::vector<SpectralInterval>& intervals) {
    std::string out = "[";
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const SpectralInterval& iv = intervals[i];
        if (i) out += ",";
        out += "{\"component\":" + std::to_string(iv.component) +
               ",\"lower\":" + format_full(iv.lower) + ",\"upper\":" + format_full(iv.upper) +
               ",\"divergent\":" + (iv.divergent ? "true" : "false") + "}";
    }
    return out + "]";
}

std::string json_bias_array(const BiasReport& bias) {
    std::string out = "[";
    for (std::size_t i = 0; i < bias.per_component.size(); ++i) {
        const BiasComponent& b = bias.per_component[i];
        if (i) out += ",";
        out += "{\"component\":" + std::to_string(b.component) +
               ",\"b_bar\":" + format_full(b.b_bar) + ",\"decision\":\"" +
               (b.nonuniform ? "nonuniform" : "uniform") + "\"}";
    }
    return out + "]";
}

} // namespace

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_table(double v) {
    char buf[40];
    if (std::fabs(v) >= 1e4) std::snprintf(buf, sizeof(buf), "%.4e", v);
    else std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string csv_intervals(const std::vector<SpectralInterval>& intervals) {
    bool lyap = !intervals.empty() && intervals.front().kind == SpectrumKind::Lyapunov;
    std::string out = lyap ? "component,lower,upper\n" : "component,lower,upper,divergent\n";
    for (const SpectralInterval& iv : intervals) {
        out += std::to_string(iv.component) + "," + format_full(iv.lower) + "," +
               format_full(iv.upper);
        if (!lyap) out += iv.divergent ? ",true" : ",false";
        out += "\n";
    }
    return out;
}

std::string csv_bias(const BiasReport& bias) {
    std::string out = "component,b_bar,decision\n";
    for (const BiasComponent& b : bias.per_component)
        out += std::to_string(b.component) + "," + format_full(b.b_bar) + "," +
               (b.nonuniform ? "nonuniform" : "uniform") + "\n";
    return out;
}

std::string table_intervals(const std::vector<SpectralInterval>& intervals,
                            const std::string& title) {
    std::string out = title + "\n";
    for (const SpectralInterval& iv : intervals) {
        out += "  component " + std::to_string(iv.component) + ": [" +
               format_table(iv.lower) + ", " + format_table(iv.upper) + "]";
        if (iv.kind != SpectrumKind::Lyapunov && iv.divergent)
            out += "  (divergent: treated as the whole real line)";
        out += "\n";
    }
    return out;
}

std::string table_bias(const BiasReport& bias) {
    std::string out = "nonuniform bias (epsilon = " + format_table(bias.epsilon) + ")\n";
    for (const BiasComponent& b : bias.per_component)
        out += "  component " + std::to_string(b.component) + ": b_bar = " +
               format_table(b.b_bar) + "  -> " + (b.nonuniform ? "nonuniform" : "uniform") +
               "\n";
    return out;
}

std::string json_intervals(const std::vector<SpectralInterval>& intervals,
                           const std::string& kind) {
    return "{\"schema\":1,\"" + kind + "\":" + json_interval_array(intervals) + "}\n";
}

std::string json_bias(const BiasReport& bias) {
    return std::string("{\"schema\":1,\"epsilon\":") + format_full(bias.epsilon) +
           ",\"bias\":" + json_bias_array(bias) + "}\n";
}

std::string json_report(const SpectrumReport& r) {
    std::string out = "{\"schema\":1,\"system\":\"" + r.system_name + "\",\"parameters\":{";
    bool first = true;
    for (const auto& [key, value] : r.parameters) {
        if (!first) out += ",";
        first = false;
        out += "\"" + key + "\":" + format_full(value);
    }
    out += "},\"lyapunov\":" + json_interval_array(r.lyapunov) +
           ",\"ed\":" + json_interval_array(r.ed) + ",\"ned\":" + json_interval_array(r.ned) +
           ",\"epsilon\":" + format_full(r.bias.epsilon) + ",\"bias\":" + json_bias_array(r.bias) +
           ",\"containment_violations\":[";
    for (std::size_t i = 0; i < r.containment_violations.size(); ++i) {
        const ContainmentViolation& v = r.containment_violations[i];
        if (i) out += ",";
        out += "{\"component\":" + std::to_string(v.component) + ",\"relation\":\"" + v.relation +
               "\",\"excess\":" + format_full(v.excess) + "}";
    }
    return out + "]}\n";
}

std::string table_report(const SpectrumReport& r) {
    std::string out = "system: " + r.system_name;
    for (const auto& [key, value] : r.parameters) out += "  " + key + " = " + format_table(value);
    out += "\n" + table_bias(r.bias);
    out += table_intervals(r.lyapunov, "lyapunov spectrum");
    out += table_intervals(r.ed, "exponential-dichotomy spectrum");
    out += table_intervals(r.ned, "nonuniform exponential-dichotomy spectrum");
    if (r.containment_violations.empty()) {
        out += "containment: lyapunov within ned within ed holds for every component\n";
    } else {
        out += "containment violations:\n";
        for (const ContainmentViolation& v : r.containment_violations)
            out += "  component " + std::to_string(v.component) + ": " + v.relation +
                   " by " + format_table(v.excess) + "\n";
    }
    return out;
}

void write_plot_data(const std::string& dir, const std::vector<Series>& series) {
    std::filesystem::create_directories(dir);
    for (const Series& s : series) {
        std::string path =
            dir + "/" + s.quantity + "_c" + std::to_string(s.component) + ".csv";
        std::ofstream out(path);
        if (!out) throw ConfigError("cannot write plot data file: " + path);
        out << "t,value\n";
        for (const auto& [t, v] : s.points) out << format_full(t) << "," << format_full(v) << "\n";
    }
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write output file: " + path);
    out << content;
}

} // namespace dichospec
