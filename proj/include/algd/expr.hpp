#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "algd/scalar_field.hpp"

namespace algd {

/// Parse/evaluation error with a 0-based character offset into the source.
struct ParseError : Error {
    int position;
    ParseError(const std::string& what, int pos) : Error(what), position(pos) {}
};

/// Variables visible to an expression: x0..x{base_dim-1} and, where fiber
/// variables are permitted, v0..v{fiber_dim-1}.
struct VarSpec {
    int base_dim = 0;
    int fiber_dim = 0;

    int arity() const { return base_dim + fiber_dim; }
};

enum class ExprKind { Number, BaseVar, FiberVar, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Func { Sin, Cos, Exp, Ln, Sqrt };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    double number = 0.0; // Number
    int index = 0;       // BaseVar / FiberVar slot
    Func func = Func::Sin;
    ExprPtr lhs, rhs; // binary children; unary nodes use lhs
};

/// Parse a single expression. Precedence: ^ above unary minus above * / above
/// + -; ^ is right-associative; whitespace is insignificant.
ExprPtr parse(std::string_view src, const VarSpec& vars);

/// Canonical printer; parse(print(parse(s))) == parse(s) structurally.
std::string print(const Expr& e);
inline std::string print(const ExprPtr& e) { return print(*e); }

bool expr_equal(const Expr& a, const Expr& b);
inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) { return expr_equal(*a, *b); }

/// Compile to a field of arity base_dim + fiber_dim (base variables first).
/// Evaluation reports domain failures (division by zero, ln/sqrt out of
/// domain, non-integer power of a non-positive base) with the failing point.
ScalarField compile(const ExprPtr& e, const VarSpec& vars);

/// parse + compile in one step.
ScalarField compile_str(std::string_view src, const VarSpec& vars);

} // namespace algd
