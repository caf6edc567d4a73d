#include "tangent/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "tangent/algebra.hpp"
#include "tangent/elementary.hpp"

namespace tangent {

namespace {

const std::set<std::string> kFunctions = {"sin", "cos", "exp", "ln", "sqrt"};

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr run() {
        ExprPtr e = sum();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return e;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr make_binary(char op, ExprPtr l, ExprPtr r) {
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Binary;
        e->op = op;
        e->pos = l->pos;
        e->len = r->pos + r->len - l->pos;
        e->lhs = std::move(l);
        e->rhs = std::move(r);
        return e;
    }

    // sum := term (('+'|'-') term)*
    ExprPtr sum() {
        ExprPtr e = term();
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            e = make_binary(c, e, term());
        }
        return e;
    }

    // term := unary (('*'|'/') unary)*
    ExprPtr term() {
        ExprPtr e = unary();
        for (char c = peek(); c == '*' || c == '/'; c = peek()) {
            ++pos_;
            e = make_binary(c, e, unary());
        }
        return e;
    }

    // unary := '-' unary | power   (so -x^2 parses as -(x^2))
    ExprPtr unary() {
        if (peek() == '-') {
            std::size_t start = pos_++;
            ExprPtr child = unary();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Unary;
            e->op = '-';
            e->pos = start;
            e->len = child->pos + child->len - start;
            e->lhs = std::move(child);
            return e;
        }
        return power();
    }

    // power := atom ('^' unary)?   (right-associative via unary)
    ExprPtr power() {
        ExprPtr e = atom();
        if (peek() == '^') {
            ++pos_;
            e = make_binary('^', e, unary());
        }
        return e;
    }

    ExprPtr atom() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of input, expected a number, variable, or '('", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = sum();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        throw ParseError(std::string("unexpected character '") + c +
                             "', expected a number, variable, or '('",
                         pos_);
    }

    ExprPtr number() {
        std::size_t start = pos_;
        double val = 0.0;
        auto [ptr, ec] =
            std::from_chars(text_.data() + start, text_.data() + text_.size(), val);
        if (ec != std::errc()) throw ParseError("malformed number", start);
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Number;
        e->number = val;
        e->pos = start;
        e->len = pos_ - start;
        return e;
    }

    ExprPtr identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (peek() == '(') {
            if (!kFunctions.count(name))
                throw ParseError("unknown function '" + name +
                                     "' (known: cos, exp, ln, sin, sqrt)",
                                 start);
            ++pos_;
            ExprPtr arg = sum();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Call;
            e->name = std::move(name);
            e->pos = start;
            e->len = pos_ - start;
            e->lhs = std::move(arg);
            return e;
        }
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Variable;
        e->name = std::move(name);
        e->pos = start;
        e->len = pos_ - start;
        return e;
    }
};

void collect_vars(const Expr& e, std::set<std::string>& out) {
    switch (e.kind) {
        case Expr::Kind::Variable: out.insert(e.name); break;
        case Expr::Kind::Number: break;
        case Expr::Kind::Unary:
        case Expr::Kind::Call: collect_vars(*e.lhs, out); break;
        case Expr::Kind::Binary:
            collect_vars(*e.lhs, out);
            collect_vars(*e.rhs, out);
            break;
    }
}

Scalar call_scalar(const std::string& name, Scalar x) {
    if (name == "sin") return std::sin(x);
    if (name == "cos") return std::cos(x);
    if (name == "exp") return std::exp(x);
    if (name == "ln") {
        if (x <= 0.0) throw DomainError("ln: argument out of domain");
        return std::log(x);
    }
    if (x <= 0.0) throw DomainError("sqrt: argument out of domain");
    return std::sqrt(x);
}

Var call_var(const std::string& name, const Var& v) {
    if (name == "sin") return sin(v);
    if (name == "cos") return cos(v);
    if (name == "exp") return exp(v);
    if (name == "ln") return ln(v);
    return sqrt(v);
}

Var eval_node(const Expr& e, const std::map<std::string, Var>& env,
              const std::map<std::string, Scalar>& point) {
    try {
        switch (e.kind) {
            case Expr::Kind::Number: return constant(e.number);
            case Expr::Kind::Variable: {
                auto it = env.find(e.name);
                if (it == env.end())
                    throw EvalError("unbound variable '" + e.name + "'", e.pos, e.len);
                return it->second;
            }
            case Expr::Kind::Unary: return neg(eval_node(*e.lhs, env, point));
            case Expr::Kind::Call: return call_var(e.name, eval_node(*e.lhs, env, point));
            case Expr::Kind::Binary: {
                Var l = eval_node(*e.lhs, env, point);
                switch (e.op) {
                    case '+': return add(l, eval_node(*e.rhs, env, point));
                    case '-': return sub(l, eval_node(*e.rhs, env, point));
                    case '*': return mul(l, eval_node(*e.rhs, env, point));
                    case '/': return div(l, eval_node(*e.rhs, env, point));
                    default: {
                        // constant exponent goes through the real power;
                        // a variable exponent desugars to exp(b*ln(a))
                        std::set<std::string> vars;
                        collect_vars(*e.rhs, vars);
                        if (vars.empty()) return pow_scalar(l, eval_scalar(*e.rhs, point));
                        return exp(mul(eval_node(*e.rhs, env, point), ln(l)));
                    }
                }
            }
        }
    } catch (const DomainError& err) {
        throw EvalError(std::string(err.what()) + " in '" +
                            unparse(e).substr(0, 80) + "'",
                        e.pos, e.len);
    }
    throw EvalError("unreachable", e.pos, e.len);
}

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).run(); }

std::string unparse(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Number: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", e.number);
            return buf;
        }
        case Expr::Kind::Variable: return e.name;
        case Expr::Kind::Unary: return "(-" + unparse(*e.lhs) + ")";
        case Expr::Kind::Call: return e.name + "(" + unparse(*e.lhs) + ")";
        case Expr::Kind::Binary:
            return "(" + unparse(*e.lhs) + std::string(1, e.op) + unparse(*e.rhs) + ")";
    }
    return {};
}

std::set<std::string> free_variables(const Expr& e) {
    std::set<std::string> out;
    collect_vars(e, out);
    return out;
}

Scalar eval_scalar(const Expr& e, const std::map<std::string, Scalar>& point) {
    switch (e.kind) {
        case Expr::Kind::Number: return e.number;
        case Expr::Kind::Variable: {
            auto it = point.find(e.name);
            if (it == point.end())
                throw EvalError("unbound variable '" + e.name + "'", e.pos, e.len);
            return it->second;
        }
        case Expr::Kind::Unary: return -eval_scalar(*e.lhs, point);
        case Expr::Kind::Call: return call_scalar(e.name, eval_scalar(*e.lhs, point));
        case Expr::Kind::Binary: {
            Scalar l = eval_scalar(*e.lhs, point);
            Scalar r = eval_scalar(*e.rhs, point);
            switch (e.op) {
                case '+': return l + r;
                case '-': return l - r;
                case '*': return l * r;
                case '/':
                    if (r == 0.0) throw DomainError("division by zero");
                    return l / r;
                default:
                    if (std::nearbyint(r) != r && l <= 0.0)
                        throw DomainError("pow: fractional exponent requires a positive base");
                    if (r < 0.0 && l == 0.0)
                        throw DomainError("pow: zero base with a negative exponent");
                    return std::pow(l, r);
            }
        }
    }
    return 0.0;
}

Var eval_expr(const Expr& e, Bindings& b, int order) {
    std::set<std::string> vars = free_variables(e);
    for (const auto& name : vars)
        if (!b.point.count(name))
            throw EvalError("unbound variable '" + name + "'", e.pos, e.len);
    Registry reg;
    std::map<std::string, Var> env;
    b.ids.clear();
    for (const auto& [name, x] : b.point) {
        if (order > 0) {
            Var v = seed(x, order, reg);
            b.ids.emplace(name, *v.seed_id);
            env.emplace(name, std::move(v));
        } else {
            env.emplace(name, constant(x));
        }
    }
    return eval_node(e, env, b.point);
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Number: return a.number == b.number;
        case Expr::Kind::Variable: return a.name == b.name;
        case Expr::Kind::Unary: return a.op == b.op && expr_equal(*a.lhs, *b.lhs);
        case Expr::Kind::Call: return a.name == b.name && expr_equal(*a.lhs, *b.lhs);
        case Expr::Kind::Binary:
            return a.op == b.op && expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
    }
    return false;
}

}  // namespace tangent
