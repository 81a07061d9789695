#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "dichospec/errors.hpp"

namespace dichospec::expr {

enum class NodeKind {
    Number,   // numeric literal
    Variable, // the single variable t
    Negate,   // unary minus
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Call, // builtin function application
};

enum class Func { Sin, Cos, Tan, Exp, Ln, Sqrt, Abs };

const char* func_name(Func f);

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Immutable expression tree in the single variable t.
struct Node {
    NodeKind kind;
    double number = 0.0; // Number
    Func func = Func::Sin; // Call
    NodePtr lhs;           // left operand / unary or call argument
    NodePtr rhs;           // right operand (binary ops only)
};

class Ast {
public:
    Ast() = default;
    explicit Ast(NodePtr root) : root_(std::move(root)) {}
    const NodePtr& root() const noexcept { return root_; }
    explicit operator bool() const noexcept { return root_ != nullptr; }

private:
    NodePtr root_;
};

// Construction helpers for programmatic trees (shifts, constants).
NodePtr make_number(double value);
NodePtr make_variable();
NodePtr make_unary(NodeKind kind, NodePtr child);
NodePtr make_binary(NodeKind kind, NodePtr lhs, NodePtr rhs);
NodePtr make_call(Func f, NodePtr arg);

// Standard precedence: ^ binds tightest and is right-associative, then unary
// minus, then * and /, then + and -. Function application requires
// parentheses. Named constants pi and e are accepted.
// Throws ParseError with the byte offset of the first offending character.
Ast parse_expression(std::string_view text);

// Throws DomainError naming the offending node.
double evaluate(const Ast& ast, double t);

std::string serialize(const Ast& ast);

bool structurally_equal(const Ast& a, const Ast& b);

} // namespace dichospec::expr
