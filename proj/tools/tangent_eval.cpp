// Command-line expression differentiator: parses an arithmetic
// expression, seeds its variables to the requested order, and prints
// the value and derivative tensor as JSON.
//
//   tangent-eval --expr "x*y + x^2" --at x=3,y=2 --order 2
//
// Exit codes: 0 success, 1 usage error, 2 domain/math error.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tangent/tangent.hpp"

namespace {

using nlohmann::ordered_json;
using namespace tangent;

struct Options {
    std::string expr;
    std::string at;
    int order = 2;
    std::string wrt;
    std::string taylor;
    bool check_fd = false;
};

// signed zero is noise in reports
Scalar clean(Scalar x) { return x == 0.0 ? 0.0 : x; }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

std::map<std::string, Scalar> parse_point(const std::string& at) {
    std::map<std::string, Scalar> point;
    for (const auto& part : split(at, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos || eq == 0)
            throw CLI::ValidationError("--at", "expected name=value pairs, got '" + part + "'");
        std::string name = part.substr(0, eq);
        std::size_t used = 0;
        double val = std::stod(part.substr(eq + 1), &used);
        if (used != part.size() - eq - 1)
            throw CLI::ValidationError("--at", "malformed value in '" + part + "'");
        if (!point.emplace(name, val).second)
            throw CLI::ValidationError("--at", "variable '" + name + "' bound twice");
    }
    return point;
}

// All nondecreasing index tuples of the given length (one per sorted
// multi-index; permutations are recovered by symmetry).
void sorted_tuples(std::size_t nvars, int length, std::vector<std::size_t>& cur,
                   std::size_t start, std::vector<std::vector<std::size_t>>& out) {
    if (static_cast<int>(cur.size()) == length) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < nvars; ++i) {
        cur.push_back(i);
        sorted_tuples(nvars, length, cur, i, out);
        cur.pop_back();
    }
}

int run(const Options& opt) {
    auto point = parse_point(opt.at);

    ExprPtr ast;
    try {
        ast = parse(opt.expr);
    } catch (const ParseError& e) {
        std::cerr << "tangent-eval: syntax error at offset " << e.offset << ": " << e.what()
                  << "\n";
        return 1;
    }

    for (const auto& name : free_variables(*ast))
        if (!point.count(name)) {
            std::cerr << "tangent-eval: variable '" << name << "' is not bound by --at\n";
            return 1;
        }

    std::vector<std::string> reported;
    if (opt.wrt.empty()) {
        for (const auto& [name, _] : point) reported.push_back(name);
    } else {
        for (const auto& name : split(opt.wrt, ',')) {
            if (!point.count(name)) {
                std::cerr << "tangent-eval: --wrt variable '" << name << "' is not bound\n";
                return 1;
            }
            reported.push_back(name);
        }
        std::sort(reported.begin(), reported.end());
        reported.erase(std::unique(reported.begin(), reported.end()), reported.end());
    }

    std::string taylor_name;
    int taylor_order = 0;
    if (!opt.taylor.empty()) {
        auto colon = opt.taylor.find(':');
        if (colon == std::string::npos) {
            std::cerr << "tangent-eval: --taylor expects name:M\n";
            return 1;
        }
        taylor_name = opt.taylor.substr(0, colon);
        taylor_order = std::stoi(opt.taylor.substr(colon + 1));
        if (!point.count(taylor_name)) {
            std::cerr << "tangent-eval: --taylor variable '" << taylor_name << "' is not bound\n";
            return 1;
        }
        if (taylor_order < 0 || taylor_order > opt.order) {
            std::cerr << "tangent-eval: --taylor order must be in [0, --order]\n";
            return 1;
        }
    }

    Bindings b;
    b.point = point;
    Var result;
    try {
        result = eval_expr(*ast, b, opt.order);
    } catch (const EvalError& e) {
        ordered_json err;
        err["error"] = e.what();
        err["span"] = {{"pos", e.pos}, {"len", e.len}};
        std::cout << err.dump() << "\n";
        return 2;
    }

    ordered_json out;
    out["expr"] = opt.expr;
    out["point"] = ordered_json::object();
    for (const auto& [name, x] : point) out["point"][name] = x;
    out["order"] = opt.order;
    out["value"] = clean(value(result));

    out["derivatives"] = ordered_json::object();
    for (int len = 1; len <= opt.order; ++len) {
        std::vector<std::vector<std::size_t>> tuples;
        std::vector<std::size_t> cur;
        sorted_tuples(reported.size(), len, cur, 0, tuples);
        for (const auto& t : tuples) {
            std::string key;
            MultiIndex idx;
            for (std::size_t i : t) {
                if (!key.empty()) key += ',';
                key += reported[i];
                idx.push_back(b.ids.at(reported[i]));
            }
            out["derivatives"][key] = clean(derivative(result, idx));
        }
    }

    if (!taylor_name.empty()) {
        out["taylor"] = ordered_json::object();
        auto coeffs = taylor_coeffs(result, b.ids.at(taylor_name), taylor_order);
        for (auto& c : coeffs) c = clean(c);
        out["taylor"][taylor_name] = coeffs;
    }

    if (opt.check_fd) {
        std::vector<std::string> names;
        for (const auto& [name, _] : point) names.push_back(name);
        std::vector<Scalar> pt;
        for (const auto& name : names) pt.push_back(point.at(name));
        auto f = [&](const std::vector<Scalar>& p) {
            std::map<std::string, Scalar> m;
            for (std::size_t i = 0; i < names.size(); ++i) m[names[i]] = p[i];
            return eval_scalar(*ast, m);
        };
        auto rel = [](Scalar ad, Scalar fd) {
            return std::fabs(ad - fd) / std::max(1.0, std::fabs(ad));
        };
        ordered_json check;
        Scalar max1 = 0.0;
        for (std::size_t i = 0; i < names.size(); ++i) {
            Scalar ad = derivative(result, {b.ids.at(names[i])});
            max1 = std::max(max1, rel(ad, fd_oracle(f, pt, {i})));
        }
        check["max_rel_err_order1"] = max1;
        if (opt.order >= 2) {
            Scalar max2 = 0.0;
            for (std::size_t i = 0; i < names.size(); ++i)
                for (std::size_t j = i; j < names.size(); ++j) {
                    Scalar ad =
                        derivative(result, {b.ids.at(names[i]), b.ids.at(names[j])});
                    max2 = std::max(max2, rel(ad, fd_oracle(f, pt, {i, j})));
                }
            check["max_rel_err_order2"] = max2;
        }
        out["fd_check"] = check;
    }

    std::cout << out.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Evaluates an arithmetic expression and emits its derivative tensor as JSON.\n"
        "Functions: sin, cos, exp, ln, sqrt. Operators: + - * / ^ (right-associative;\n"
        "^ binds tighter than unary minus, so -x^2 means -(x^2))."};
    Options opt;
    app.add_option("--expr", opt.expr, "expression to evaluate")->required();
    app.add_option("--at", opt.at, "point of evaluation, e.g. x=3,y=2")->required();
    app.add_option("--order", opt.order, "derivative order")->default_val(2)
        ->check(CLI::NonNegativeNumber);
    app.add_option("--wrt", opt.wrt, "restrict reported derivatives to these variables");
    app.add_option("--taylor", opt.taylor, "emit Taylor coefficients, e.g. x:3");
    app.add_flag("--check-fd", opt.check_fd, "append a finite-difference comparison");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::Error& e) {
        app.exit(e);
        return 1;
    }

    try {
        return run(opt);
    } catch (const CLI::Error& e) {
        std::cerr << "tangent-eval: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "tangent-eval: " << e.what() << "\n";
        return 1;
    } catch (const OrderError& e) {
        std::cerr << "tangent-eval: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        ordered_json err;
        err["error"] = e.what();
        std::cout << err.dump() << "\n";
        return 2;
    }
}
