#include "dichospec/coefficient.hpp"

#include <cmath>

namespace dichospec {

CoefficientFunction make_coefficient(const std::string& body, const std::string& antiderivative,
                                     double domain_start) {
    CoefficientFunction f;
    f.body = expr::parse_expression(body);
    if (!antiderivative.empty()) f.antiderivative = expr::parse_expression(antiderivative);
    f.domain_start = domain_start;
    return f;
}

bool antiderivative_consistent(const CoefficientFunction& f, double hi, int samples,
                               double rel_tol) {
    if (!f.has_antiderivative()) return false;
    double lo = std::max(f.domain_start, 1.0);
    for (int i = 0; i < samples; ++i) {
        double t = lo + (hi - lo) * i / (samples - 1);
        double h = 3e-7 * std::max(1.0, std::fabs(t));
        double fd = (f.antiderivative_at(t + h) - f.antiderivative_at(t - h)) / (2.0 * h);
        double body = f(t);
        // Scale includes |t|: the truncation term h^2 f''/6 grows with the
        // oscillation amplitude of the paper's t*sin t class.
        double scale = 1.0 + std::fabs(body) + std::fabs(t);
        if (std::fabs(fd - body) > rel_tol * scale) return false;
    }
    return true;
}

CoefficientFunction shifted(const CoefficientFunction& f, double lambda) {
    CoefficientFunction g;
    g.domain_start = f.domain_start;
    g.body = expr::Ast(
        expr::make_binary(expr::NodeKind::Add, f.body.root(), expr::make_number(lambda)));
    if (f.has_antiderivative()) {
        auto lam_t = expr::make_binary(expr::NodeKind::Mul, expr::make_number(lambda),
                                       expr::make_variable());
        g.antiderivative = expr::Ast(expr::make_binary(
            expr::NodeKind::Add, f.antiderivative->root(), std::move(lam_t)));
    }
    return g;
}

CoefficientFunction constant_coefficient(double c) {
    CoefficientFunction f;
    f.body = expr::Ast(expr::make_number(c));
    f.antiderivative = expr::Ast(expr::make_binary(
        expr::NodeKind::Mul, expr::make_number(c), expr::make_variable()));
    return f;
}

} // namespace dichospec
