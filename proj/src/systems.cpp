#include "dichospec/systems.hpp"

#include <cstdio>

#include "dichospec/errors.hpp"

namespace dichospec {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string("(") + buf + ")";
}

// Replaces each "{key}" placeholder with the parenthesized parameter value.
std::string fill(std::string templ, const std::map<std::string, double>& params) {
    for (const auto& [key, value] : params) {
        std::string token = "{" + key + "}";
        for (std::size_t pos; (pos = templ.find(token)) != std::string::npos;)
            templ.replace(pos, token.size(), num(value));
    }
    return templ;
}

std::map<std::string, double> merge_params(const std::map<std::string, double>& defaults,
                                           const std::map<std::string, double>& overrides,
                                           const std::string& name) {
    std::map<std::string, double> out = defaults;
    for (const auto& [key, value] : overrides) {
        auto it = out.find(key);
        if (it == out.end())
            throw ConfigError("unknown parameter '" + key + "' for system '" + name + "'");
        it->second = value;
    }
    return out;
}

} // namespace

std::vector<std::string> builtin_names() {
    return {"constant", "intro-diagonal", "no-ubg-scalar", "no-ubg-scalar-literal",
            "planar-nubg"};
}

DiagonalSystem builtin(const std::string& name, const std::map<std::string, double>& overrides) {
    DiagonalSystem sys;
    sys.name = name;

    if (name == "constant") {
        // Parameters c1..cn select the diagonal; default is the 1-d zero system.
        std::map<std::string, double> params =
            overrides.empty() ? std::map<std::string, double>{{"c1", 0.0}} : overrides;
        for (std::size_t j = 1;; ++j) {
            auto it = params.find("c" + std::to_string(j));
            if (it == params.end()) break;
            sys.coefficients.push_back(constant_coefficient(it->second));
        }
        if (sys.coefficients.size() != params.size())
            throw ConfigError("system 'constant' takes contiguous parameters c1..cn");
        sys.parameters = params;
        return sys;
    }

    if (name == "intro-diagonal") {
        sys.parameters = merge_params({{"omega1", 4.0}, {"omega2", 2.0}}, overrides, name);
        sys.coefficients.push_back(
            make_coefficient(fill("{omega1}", sys.parameters), fill("{omega1}*t", sys.parameters)));
        sys.coefficients.push_back(
            make_coefficient(fill("{omega2}*t*sin(t)", sys.parameters),
                             fill("{omega2}*(sin(t) - t*cos(t))", sys.parameters)));
        return sys;
    }

    if (name == "no-ubg-scalar") {
        merge_params({}, overrides, name);
        sys.coefficients.push_back(
            make_coefficient("t*sin(t) + 1", "sin(t) - t*cos(t) + t"));
        return sys;
    }

    if (name == "no-ubg-scalar-literal") {
        merge_params({}, overrides, name);
        sys.coefficients.push_back(
            make_coefficient("t*(sin(t) + 1)", "sin(t) - t*cos(t) + t^2/2"));
        return sys;
    }

    if (name == "planar-nubg") {
        sys.parameters = merge_params({{"omega1", 4.0}, {"omega2", 2.0}}, overrides, name);
        // sin(ln t) + cos(ln t) is undefined at t = 0; the cumulative
        // integral's start-gap rule bridges [0, domain_start].
        sys.coefficients.push_back(
            make_coefficient("sin(ln(t)) + cos(ln(t))", "t*sin(ln(t))", 1e-6));
        sys.coefficients.push_back(make_coefficient(
            fill("{omega1} - {omega2}*t*sin(t)", sys.parameters),
            fill("{omega1}*t + {omega2}*t*cos(t) - {omega2}*sin(t)", sys.parameters)));
        return sys;
    }

    std::string known;
    for (const std::string& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown system '" + name + "' (known: " + known + ")");
}

DiagonalSystem shifted_system(const DiagonalSystem& sys, double lambda) {
    DiagonalSystem out;
    out.name = sys.name;
    out.parameters = sys.parameters;
    out.coefficients.reserve(sys.coefficients.size());
    for (const CoefficientFunction& f : sys.coefficients)
        out.coefficients.push_back(shifted(f, -lambda));
    return out;
}

} // namespace dichospec
