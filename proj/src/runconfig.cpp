#include "dichospec/runconfig.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dichospec/errors.hpp"
#include "dichospec/systems.hpp"

namespace dichospec {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_number(const std::string& section, const std::string& key,
                    const std::string& value) {
    char* end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("[" + section + "] " + key + ": not a number: '" + value + "'");
    return v;
}

// Index suffix of inline-system keys like a3 / F3 / start3; 0 when absent.
std::size_t key_index(const std::string& key, const std::string& prefix) {
    if (key.size() <= prefix.size() || key.compare(0, prefix.size(), prefix) != 0) return 0;
    std::size_t idx = 0;
    for (std::size_t i = prefix.size(); i < key.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(key[i]))) return 0;
        idx = idx * 10 + static_cast<std::size_t>(key[i] - '0');
    }
    return idx;
}

void ensure_inline_slot(RunConfig& cfg, std::size_t idx) {
    if (cfg.inline_bodies.size() < idx) {
        cfg.inline_bodies.resize(idx);
        cfg.inline_antiderivatives.resize(idx);
        cfg.inline_domain_starts.resize(idx, 0.0);
    }
}

void apply_procedure_key(ProcedureParams& p, const std::string& section, const std::string& key,
                         const std::string& value, bool has_t0) {
    double v = parse_number(section, key, value);
    if (key == "H") p.window = v;
    else if (key == "T1" && !has_t0) p.t1 = v;
    else if (key == "T2" && !has_t0) p.t2 = v;
    else if (key == "t0" && has_t0) p.t0 = v;
    else if (key == "T" && has_t0) p.t_end = v;
    else if (key == "gridStep") p.grid_step = v;
    else if (key == "epsilon") p.epsilon = v;
    else throw ConfigError("[" + section + "] unknown key '" + key + "'");
}

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": unterminated section");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "system" && section != "params" && section != "lyap" &&
                section != "ed" && section != "ned" && section != "bias" &&
                section != "numerics" && section != "output")
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown section [" +
                                  section + "]");
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (section.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": key '" + key + "' outside any section");

        if (section == "system") {
            if (key == "name") {
                cfg.system_name = value;
            } else if (std::size_t idx = key_index(key, "a"); idx > 0) {
                ensure_inline_slot(cfg, idx);
                cfg.inline_bodies[idx - 1] = value;
            } else if (std::size_t fidx = key_index(key, "F"); fidx > 0) {
                ensure_inline_slot(cfg, fidx);
                cfg.inline_antiderivatives[fidx - 1] = value;
            } else if (std::size_t sidx = key_index(key, "start"); sidx > 0) {
                ensure_inline_slot(cfg, sidx);
                cfg.inline_domain_starts[sidx - 1] = parse_number(section, key, value);
            } else {
                throw ConfigError("[system] unknown key '" + key + "'");
            }
        } else if (section == "params") {
            cfg.overrides[key] = parse_number(section, key, value);
        } else if (section == "lyap") {
            apply_procedure_key(cfg.lyap, section, key, value, false);
            if (cfg.lyap.window || cfg.lyap.epsilon)
                throw ConfigError("[lyap] unknown key '" + key + "'");
        } else if (section == "ed") {
            apply_procedure_key(cfg.ed, section, key, value, true);
            if (cfg.ed.epsilon) throw ConfigError("[ed] unknown key '" + key + "'");
        } else if (section == "ned") {
            apply_procedure_key(cfg.ned, section, key, value, false);
            if (cfg.ned.epsilon) throw ConfigError("[ned] unknown key '" + key + "'");
        } else if (section == "bias") {
            apply_procedure_key(cfg.bias, section, key, value, false);
        } else if (section == "numerics") {
            double v = parse_number(section, key, value);
            if (key == "errorTarget") cfg.error_target = v;
            else if (key == "ratioMin") cfg.ratio_min = v;
            else if (key == "divergenceFactor") cfg.divergence_factor = v;
            else if (key == "containmentTolerance") cfg.containment_tolerance = v;
            else throw ConfigError("[numerics] unknown key '" + key + "'");
        } else { // output
            if (key == "format") {
                if (value != "csv" && value != "json" && value != "table")
                    throw ConfigError("[output] format must be csv, json or table");
                cfg.format = value;
            } else if (key == "path") {
                cfg.out_path = value;
            } else if (key == "plotData") {
                cfg.plot_dir = value;
            } else {
                throw ConfigError("[output] unknown key '" + key + "'");
            }
        }
    }
    for (std::size_t i = 0; i < cfg.inline_bodies.size(); ++i)
        if (cfg.inline_bodies[i].empty())
            throw ConfigError("[system] missing coefficient a" + std::to_string(i + 1));
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

DiagonalSystem materialize_system(const RunConfig& cfg) {
    if (!cfg.inline_bodies.empty()) {
        if (!cfg.system_name.empty())
            throw ConfigError("[system] give either name or inline a1.. expressions, not both");
        DiagonalSystem sys;
        sys.name = "inline";
        for (std::size_t i = 0; i < cfg.inline_bodies.size(); ++i)
            sys.coefficients.push_back(make_coefficient(cfg.inline_bodies[i],
                                                        cfg.inline_antiderivatives[i],
                                                        cfg.inline_domain_starts[i]));
        return sys;
    }
    if (cfg.system_name.empty()) throw ConfigError("no system configured");
    return builtin(cfg.system_name, cfg.overrides);
}

ReportConfig to_report_config(const RunConfig& cfg) {
    ReportConfig rc;
    if (cfg.lyap.t1) rc.lyap_t1 = *cfg.lyap.t1;
    if (cfg.lyap.t2) rc.lyap_t2 = *cfg.lyap.t2;
    if (cfg.lyap.grid_step) rc.grid_step = *cfg.lyap.grid_step;
    if (cfg.ed.window) rc.ed_window = *cfg.ed.window;
    if (cfg.ed.t0) rc.ed_t0 = *cfg.ed.t0;
    if (cfg.ed.t_end) rc.ed_t_end = *cfg.ed.t_end;
    if (cfg.ned.window) rc.ned_window = *cfg.ned.window;
    if (cfg.ned.t1) rc.ned_t1 = *cfg.ned.t1;
    if (cfg.ned.t2) rc.ned_t2 = *cfg.ned.t2;
    if (cfg.bias.window) rc.bias_window = *cfg.bias.window;
    if (cfg.bias.t1) rc.bias_t1 = *cfg.bias.t1;
    if (cfg.bias.t2) rc.bias_t2 = *cfg.bias.t2;
    if (cfg.bias.epsilon) rc.epsilon = *cfg.bias.epsilon;
    if (cfg.error_target) rc.error_target = *cfg.error_target;
    if (cfg.ratio_min) rc.ratio_min = *cfg.ratio_min;
    if (cfg.divergence_factor) rc.divergence_factor = *cfg.divergence_factor;
    if (cfg.containment_tolerance) rc.containment_tolerance = *cfg.containment_tolerance;
    return rc;
}

} // namespace dichospec
