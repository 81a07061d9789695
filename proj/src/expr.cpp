#include "dichospec/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <vector>

namespace dichospec::expr {

namespace {

struct FuncInfo {
    Func id;
    const char* name;
    double (*eval)(double);
};

constexpr std::array<FuncInfo, 7> kFuncs = {{
    {Func::Sin, "sin", [](double x) { return std::sin(x); }},
    {Func::Cos, "cos", [](double x) { return std::cos(x); }},
    {Func::Tan, "tan", [](double x) { return std::tan(x); }},
    {Func::Exp, "exp", [](double x) { return std::exp(x); }},
    {Func::Ln, "ln", [](double x) { return std::log(x); }},
    {Func::Sqrt, "sqrt", [](double x) { return std::sqrt(x); }},
    {Func::Abs, "abs", [](double x) { return std::fabs(x); }},
}};

const FuncInfo& info(Func f) {
    for (const auto& fi : kFuncs)
        if (fi.id == f) return fi;
    std::abort();
}

} // namespace

const char* func_name(Func f) { return info(f).name; }

NodePtr make_number(double value) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Number;
    n->number = value;
    return n;
}

NodePtr make_variable() {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Variable;
    return n;
}

NodePtr make_unary(NodeKind kind, NodePtr child) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(child);
    return n;
}

NodePtr make_binary(NodeKind kind, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_call(Func f, NodePtr arg) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Call;
    n->func = f;
    n->lhs = std::move(arg);
    return n;
}

namespace {

// Recursive-descent parser over a flat character view.
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Ast parse() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("empty expression", 0);
        NodePtr root = parse_sum();
        skip_ws();
        if (pos_ < text_.size())
            fail("unexpected trailing input");
        return Ast(std::move(root));
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream os;
        os << what << " at offset " << pos_;
        throw ParseError(os.str(), pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) {
            std::ostringstream os;
            os << "expected '" << c << "'";
            fail(os.str());
        }
    }

    NodePtr parse_sum() {
        NodePtr lhs = parse_product();
        for (;;) {
            if (accept('+'))
                lhs = make_binary(NodeKind::Add, std::move(lhs), parse_product());
            else if (accept('-'))
                lhs = make_binary(NodeKind::Sub, std::move(lhs), parse_product());
            else
                return lhs;
        }
    }

    NodePtr parse_product() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = make_binary(NodeKind::Mul, std::move(lhs), parse_unary());
            else if (accept('/'))
                lhs = make_binary(NodeKind::Div, std::move(lhs), parse_unary());
            else
                return lhs;
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make_unary(NodeKind::Negate, parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (accept('^')) {
            // Right-associative; the exponent may carry its own unary minus.
            NodePtr exp = accept('-') ? make_unary(NodeKind::Negate, parse_power())
                                      : parse_power();
            return make_binary(NodeKind::Pow, std::move(base), std::move(exp));
        }
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_sum();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail("unexpected character");
    }

    NodePtr parse_number() {
        const char* begin = text_.data() + pos_;
        char* end = nullptr;
        double value = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        return make_number(value);
    }

    NodePtr parse_identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string_view name = text_.substr(start, pos_ - start);
        if (name == "t") return make_variable();
        if (name == "pi") return make_number(std::numbers::pi);
        if (name == "e") return make_number(std::numbers::e);
        for (const auto& fi : kFuncs) {
            if (name == fi.name) {
                if (!peek('(')) {
                    pos_ = start;
                    fail("function application requires parentheses");
                }
                ++pos_;
                NodePtr arg = parse_sum();
                expect(')');
                return make_call(fi.id, std::move(arg));
            }
        }
        pos_ = start;
        std::ostringstream os;
        os << "unknown identifier '" << name
           << "' (allowed: t, pi, e, sin, cos, tan, exp, ln, sqrt, abs)";
        fail(os.str());
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

double eval_node(const Node& n, double t) {
    switch (n.kind) {
        case NodeKind::Number: return n.number;
        case NodeKind::Variable: return t;
        case NodeKind::Negate: return -eval_node(*n.lhs, t);
        case NodeKind::Add: return eval_node(*n.lhs, t) + eval_node(*n.rhs, t);
        case NodeKind::Sub: return eval_node(*n.lhs, t) - eval_node(*n.rhs, t);
        case NodeKind::Mul: return eval_node(*n.lhs, t) * eval_node(*n.rhs, t);
        case NodeKind::Div: {
            double den = eval_node(*n.rhs, t);
            if (den == 0.0) throw DomainError("division by zero in '" + serialize(Ast(n.rhs)) + "'");
            return eval_node(*n.lhs, t) / den;
        }
        case NodeKind::Pow: {
            double base = eval_node(*n.lhs, t);
            double exp = eval_node(*n.rhs, t);
            double v = std::pow(base, exp);
            if (!std::isfinite(v))
                throw DomainError("pow out of domain in '" + serialize(Ast(n.lhs)) + "^...'");
            return v;
        }
        case NodeKind::Call: {
            double arg = eval_node(*n.lhs, t);
            if (n.func == Func::Ln && arg <= 0.0)
                throw DomainError("ln of non-positive argument in 'ln(" + serialize(Ast(n.lhs)) + ")'");
            if (n.func == Func::Sqrt && arg < 0.0)
                throw DomainError("sqrt of negative argument in 'sqrt(" + serialize(Ast(n.lhs)) + ")'");
            double v = info(n.func).eval(arg);
            if (!std::isfinite(v))
                throw DomainError(std::string(func_name(n.func)) + " out of domain");
            return v;
        }
    }
    std::abort();
}

int precedence(NodeKind k) {
    switch (k) {
        case NodeKind::Add:
        case NodeKind::Sub: return 1;
        case NodeKind::Mul:
        case NodeKind::Div: return 2;
        case NodeKind::Negate: return 3;
        case NodeKind::Pow: return 4;
        default: return 5;
    }
}

void serialize_node(const Node& n, std::ostream& os, int parent_prec, bool right_side) {
    int prec = precedence(n.kind);
    bool need_paren = prec < parent_prec ||
                      (prec == parent_prec && right_side && n.kind != NodeKind::Pow);
    if (need_paren) os << '(';
    switch (n.kind) {
        case NodeKind::Number: {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", n.number);
            os << buf;
            break;
        }
        case NodeKind::Variable: os << 't'; break;
        case NodeKind::Negate:
            os << '-';
            serialize_node(*n.lhs, os, prec + 1, false);
            break;
        case NodeKind::Add:
        case NodeKind::Sub:
        case NodeKind::Mul:
        case NodeKind::Div:
        case NodeKind::Pow: {
            char op = n.kind == NodeKind::Add   ? '+'
                      : n.kind == NodeKind::Sub ? '-'
                      : n.kind == NodeKind::Mul ? '*'
                      : n.kind == NodeKind::Div ? '/'
                                                : '^';
            // ^ is right-associative, everything else left.
            bool ra = n.kind == NodeKind::Pow;
            serialize_node(*n.lhs, os, ra ? prec + 1 : prec, false);
            os << op;
            serialize_node(*n.rhs, os, ra ? prec : prec, !ra ? true : false);
            break;
        }
        case NodeKind::Call:
            os << func_name(n.func) << '(';
            serialize_node(*n.lhs, os, 0, false);
            os << ')';
            break;
    }
    if (need_paren) os << ')';
}

bool equal_node(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Number: return a.number == b.number;
        case NodeKind::Variable: return true;
        case NodeKind::Negate: return equal_node(*a.lhs, *b.lhs);
        case NodeKind::Call:
            return a.func == b.func && equal_node(*a.lhs, *b.lhs);
        default:
            return equal_node(*a.lhs, *b.lhs) && equal_node(*a.rhs, *b.rhs);
    }
}

} // namespace

Ast parse_expression(std::string_view text) {
    if (text.empty()) throw ParseError("empty expression", 0);
    return Parser(text).parse();
}

double evaluate(const Ast& ast, double t) {
    if (!ast) throw DomainError("empty AST");
    return eval_node(*ast.root(), t);
}

std::string serialize(const Ast& ast) {
    if (!ast) return "";
    std::ostringstream os;
    serialize_node(*ast.root(), os, 0, false);
    return os.str();
}

bool structurally_equal(const Ast& a, const Ast& b) {
    if (!a || !b) return static_cast<bool>(a) == static_cast<bool>(b);
    return equal_node(*a.root(), *b.root());
}

} // namespace dichospec::expr
