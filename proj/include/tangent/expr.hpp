#ifndef TANGENT_EXPR_HPP
#define TANGENT_EXPR_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "tangent/core.hpp"

// Arithmetic expression AST, parser, and evaluation through the AD
// library. Precedence: ^ binds tightest (right-associative, tighter
// than unary minus), then unary minus, then * /, then + -.

namespace tangent {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, Variable, Unary, Binary, Call };
    Kind kind;
    Scalar number = 0.0;   // Number
    std::string name;      // Variable, Call
    char op = 0;           // Unary ('-'), Binary ('+','-','*','/','^')
    ExprPtr lhs, rhs;      // Unary and Call use lhs only
    std::size_t pos = 0;   // byte offset of this node in the source
    std::size_t len = 0;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t off)
        : std::runtime_error(msg), offset(off) {}
    std::size_t offset;
};

/// Domain or binding failure during evaluation, carrying the source
/// span of the offending sub-expression.
struct EvalError : std::runtime_error {
    EvalError(const std::string& msg, std::size_t p, std::size_t l)
        : std::runtime_error(msg), pos(p), len(l) {}
    std::size_t pos;
    std::size_t len;
};

/// Point of evaluation; ids is filled by eval_expr with the VarId each
/// name was seeded with (lexicographic name order, ids from 0).
struct Bindings {
    std::map<std::string, Scalar> point;
    std::map<std::string, VarId> ids;
};

ExprPtr parse(std::string_view text);

/// Fully parenthesized rendering; reparses to an identical AST.
std::string unparse(const Expr& e);

/// Names of the free variables, sorted.
std::set<std::string> free_variables(const Expr& e);

/// Plain scalar evaluation (no derivative data).
Scalar eval_scalar(const Expr& e, const std::map<std::string, Scalar>& point);

/// Seeds every bound variable to the given order and evaluates the
/// tree through the AD algebra. order 0 evaluates with constants.
Var eval_expr(const Expr& e, Bindings& b, int order);

bool expr_equal(const Expr& a, const Expr& b);

}  // namespace tangent

#endif  // TANGENT_EXPR_HPP
