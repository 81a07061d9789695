#pragma once

#include <optional>
#include <string>

#include "dichospec/expr.hpp"

namespace dichospec {

// A scalar coefficient t -> a(t), optionally carrying a closed-form
// antiderivative F with F' = a for exact-mode integration.
struct CoefficientFunction {
    expr::Ast body;
    std::optional<expr::Ast> antiderivative;
    double domain_start = 0.0;

    double operator()(double t) const { return expr::evaluate(body, t); }

    bool has_antiderivative() const { return antiderivative.has_value(); }
    double antiderivative_at(double t) const { return expr::evaluate(*antiderivative, t); }
};

CoefficientFunction make_coefficient(const std::string& body,
                                     const std::string& antiderivative = "",
                                     double domain_start = 0.0);

// Central-difference check of F' = body at `samples` points of
// [max(domain_start, 1), hi], scale-aware relative tolerance.
bool antiderivative_consistent(const CoefficientFunction& f, double hi = 1e3,
                               int samples = 1000, double rel_tol = 1e-6);

// New coefficient a(t) + lambda; the antiderivative, when present, gains
// lambda*t. Computational content of the shifted system.
CoefficientFunction shifted(const CoefficientFunction& f, double lambda);

// Constant coefficient c with antiderivative c*t.
CoefficientFunction constant_coefficient(double c);

} // namespace dichospec
