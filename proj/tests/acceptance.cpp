// Acceptance suite: one pass/fail line per criterion. Takes the path to
// the tangent-eval binary as its only argument (needed by the CLI golden
// checks). Exits with the number of failed criteria.

#include <array>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "support/testutil.hpp"

using namespace tangent;
using testutil::max_tensor_diff;
using testutil::rel_err;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " " << number << ": " << name;
    if (!ok && !detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++g_failures;
}

// ---------------------------------------------------------------- 1
void criterion_seed_shape() {
    bool ok = true;
    for (int n = 1; n <= 5; ++n) {
        Registry reg;
        Var v = seed(1.25, n, reg);
        ok = ok && v.order == n && v.id == 1.25 && v.seed_id.has_value() && v.dTau.size() == 1;
        if (!ok) break;
        const Var& u = v.dTau.at(*v.seed_id);
        ok = ok && u.order == n - 1 && u.id == 1.0 && u.dTau.empty();
    }
    report(1, "Kronecker seed shape (orders 1..5)", ok);
}

// ---------------------------------------------------------------- 2
void criterion_leibniz() {
    std::mt19937 rng(2026);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    std::uniform_real_distribution<double> coeff(-1.5, 1.5);
    double worst = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        int order = 1 + rep % 4;
        Registry reg;
        Var x = seed(val(rng), order, reg);
        Var y = seed(val(rng), order, reg);
        std::vector<VarId> ids = {*x.seed_id, *y.seed_id};
        auto program = [&]() {
            Var acc = add(mul(x, constant(coeff(rng))), y);
            for (int s = 0; s < 3; ++s) {
                const Var& t = (rng() & 1) ? x : y;
                acc = (rng() & 1) ? mul(acc, t) : add(mul(acc, constant(coeff(rng))), t);
            }
            return acc;
        };
        Var f = program();
        Var g = program();
        Var fg = mul(f, g);
        for (VarId k : ids) {
            Var lhs = d(fg, k);
            Var rhs = add(mul(d(f, k), reduce_or_const(g)), mul(reduce_or_const(f), d(g, k)));
            worst = std::max(worst, max_tensor_diff(lhs, rhs, ids));
        }
    }
    report(2, "Leibniz rule, 200 random cases, rel err <= 1e-11", worst <= 1e-11,
           "worst=" + std::to_string(worst));
}

// ---------------------------------------------------------------- 3
void criterion_chain_rule() {
    struct Named {
        const char* name;
        Var (*fn)(const Var&);
        Var (*prime)(const Var&);
        double lo, hi;
    };
    static const std::array<Named, 5> fns = {{
        {"sin", sin, +[](const Var& v) { return cos(v); }, -3.0, 3.0},
        {"cos", cos, +[](const Var& v) { return neg(sin(v)); }, -3.0, 3.0},
        {"exp", exp, +[](const Var& v) { return exp(v); }, -2.0, 2.0},
        {"ln", ln, +[](const Var& v) { return pow_scalar(v, -1.0); }, 0.3, 4.0},
        {"sqrt", sqrt, +[](const Var& v) { return scalar_mul(pow_scalar(v, -0.5), 0.5); }, 0.3,
         4.0},
    }};
    std::mt19937 rng(3);
    double worst = 0.0;
    for (const auto& f : fns) {
        std::uniform_real_distribution<double> val(f.lo, f.hi);
        for (int rep = 0; rep < 20; ++rep) {
            int order = 1 + rep % 4;
            Registry reg;
            Var x = seed(val(rng), order, reg);
            Var v = add(scalar_mul(x, 0.5), constant(0.5 * x.id));
            Var lhs = d(f.fn(v), *x.seed_id);
            Var rhs = mul(d(v, *x.seed_id), f.prime(reduce(v)));
            worst = std::max(worst, max_tensor_diff(lhs, rhs, {*x.seed_id}));
        }
    }
    report(3, "chain rule for every elementary function, rel err <= 1e-11", worst <= 1e-11,
           "worst=" + std::to_string(worst));
}

// ---------------------------------------------------------------- 4
void criterion_commutation() {
    auto corpus = testutil::make_corpus(100, 2, 4, 2024);
    bool ok = true;
    std::mt19937 rng(4);
    for (const auto& item : corpus) {
        Bindings b;
        b.point = item.point;
        Var v = eval_expr(*item.ast, b, 4);
        std::vector<VarId> ids;
        for (const auto& [_, id] : b.ids) ids.push_back(id);
        for (VarId j : ids) {
            Var dv = d(v, j);
            for (int len = 0; len <= 3; ++len) {
                MultiIndex p;
                for (int i = 0; i < len; ++i)
                    p.push_back(ids[std::uniform_int_distribution<std::size_t>(
                        0, ids.size() - 1)(rng)]);
                MultiIndex full = {j};
                full.insert(full.end(), p.begin(), p.end());
                if (derivative(dv, p) != derivative(v, full)) ok = false;  // must be bit-identical
            }
        }
    }
    report(4, "reduction map commutes with differentiation (bit-identical, 100 programs)", ok);
}

// ---------------------------------------------------------------- 5
void criterion_corollary() {
    Registry reg;
    Var x = seed(0.0, 3, reg);
    Var p = exp(x);
    Var second = d(d(p, *x.seed_id), *x.seed_id);
    bool ok = second.order == 1;
    ok = ok && std::fabs(value(second) - 1.0) <= 1e-12;
    ok = ok && std::fabs(derivative(second, {*x.seed_id}) - 1.0) <= 1e-12;
    report(5, "second derivative of exp is itself differentiable (value 1, derivative 1)", ok);
}

// ---------------------------------------------------------------- 6
void criterion_polynomial_oracle() {
    std::mt19937 rng(6);
    double worst = 0.0;
    bool zeros_exact = true;
    for (int rep = 0; rep < 50; ++rep) {
        int nvars = 1 + rep % 3;
        testutil::Poly p = testutil::random_poly(rng, nvars, 4, 4);
        int degree = 0;
        for (const auto& [e, c] : p.terms) {
            int total = 0;
            for (int x : e) total += x;
            degree = std::max(degree, total);
        }
        std::vector<double> pt;
        std::uniform_real_distribution<double> coord(-1.5, 1.5);
        for (int i = 0; i < nvars; ++i) pt.push_back(coord(rng));
        Registry reg;
        std::vector<Var> xs;
        std::vector<VarId> ids;
        for (int i = 0; i < nvars; ++i) {
            xs.push_back(seed(pt[i], 5, reg));
            ids.push_back(*xs.back().seed_id);
        }
        Var v = testutil::poly_eval_var(p, xs);
        for (const auto& [path, got] : tensor(v, ids, 5).entries) {
            if (static_cast<int>(path.size()) > degree) {
                if (got != 0.0) zeros_exact = false;
                continue;
            }
            testutil::Poly q = p;
            for (VarId k : path)
                q = testutil::poly_diff(
                    q, (int)(std::find(ids.begin(), ids.end(), k) - ids.begin()));
            worst = std::max(worst, rel_err(testutil::poly_eval(q, pt), got));
        }
    }
    report(6, "polynomial derivatives match the symbolic oracle (<=1e-12; zeros above degree)",
           worst <= 1e-12 && zeros_exact, "worst=" + std::to_string(worst));
}

// ---------------------------------------------------------------- 7
void criterion_fd_agreement() {
    auto corpus = testutil::make_corpus(50, 2, 2, 7);
    double max1 = 0.0, max2 = 0.0;
    for (const auto& item : corpus) {
        Bindings b;
        b.point = item.point;
        Var v = eval_expr(*item.ast, b, 2);
        std::vector<std::string> names;
        for (const auto& [n, _] : item.point) names.push_back(n);
        std::vector<double> pt;
        for (const auto& n : names) pt.push_back(item.point.at(n));
        auto f = testutil::scalar_closure(item, names);
        for (std::size_t i = 0; i < names.size(); ++i) {
            max1 = std::max(max1, rel_err(derivative(v, {b.ids.at(names[i])}),
                                          fd_oracle(f, pt, {i})));
            for (std::size_t j = i; j < names.size(); ++j)
                max2 = std::max(
                    max2, rel_err(derivative(v, {b.ids.at(names[i]), b.ids.at(names[j])}),
                                  fd_oracle(f, pt, {i, j})));
        }
    }
    report(7, "FD agreement on 50 random expressions (1e-6 order 1, 1e-4 order 2)",
           max1 <= 1e-6 && max2 <= 1e-4,
           "order1=" + std::to_string(max1) + " order2=" + std::to_string(max2));
}

// ---------------------------------------------------------------- 8
void criterion_taylor() {
    Registry reg;
    Var x = seed(0.0, 5, reg);
    auto ce = taylor_coeffs(exp(x), *x.seed_id, 5);
    auto cs = taylor_coeffs(sin(x), *x.seed_id, 5);
    const std::array<double, 6> ee = {1, 1, 0.5, 1.0 / 6, 1.0 / 24, 1.0 / 120};
    const std::array<double, 6> es = {0, 1, 0, -1.0 / 6, 0, 1.0 / 120};
    bool ok = true;
    for (int j = 0; j <= 5; ++j) {
        ok = ok && std::fabs(ce[j] - ee[j]) <= 1e-12;
        ok = ok && std::fabs(cs[j] - es[j]) <= 1e-12;
    }
    report(8, "Taylor coefficients of exp and sin at 0 to order 5", ok);
}

// ---------------------------------------------------------------- 9
void criterion_symmetry_and_pythagoras() {
    auto corpus = testutil::make_corpus(50, 2, 2, 9);
    double worst_sym = 0.0;
    for (const auto& item : corpus) {
        Bindings b;
        b.point = item.point;
        Var v = eval_expr(*item.ast, b, 2);
        std::vector<VarId> ids;
        for (const auto& [_, id] : b.ids) ids.push_back(id);
        auto h = hessian(v, ids);
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = 0; j < ids.size(); ++j)
                worst_sym = std::max(worst_sym,
                                     std::fabs(h[i][j] - h[j][i]) / (1.0 + std::fabs(h[i][j])));
    }
    bool pyth = true;
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> val(-3.0, 3.0);
    for (int rep = 0; rep < 30 && pyth; ++rep) {
        int order = 1 + rep % 3;
        Registry reg;
        Var x = seed(val(rng), order, reg);
        Var v = mul(x, add(x, constant(0.7)));
        Var p = add(mul(sin(v), sin(v)), mul(cos(v), cos(v)));
        for (const auto& [path, entry] : tensor(p, {*x.seed_id}, order).entries)
            if (std::fabs(entry - (path.empty() ? 1.0 : 0.0)) > 1e-12) pyth = false;
    }
    report(9, "Hessian symmetry <= 1e-9 and Pythagorean identity to order 3",
           worst_sym <= 1e-9 && pyth, "sym=" + std::to_string(worst_sym));
}

// ---------------------------------------------------------------- 10
struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& binary, const std::string& args) {
    CliResult r;
    std::string cmd = binary + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void criterion_cli_golden(const std::string& binary) {
    using nlohmann::json;
    bool ok = true;
    std::string detail;

    auto r1 = run_cli(binary, "--expr \"x*y + x^2\" --at x=3,y=2 --order 2");
    auto r1b = run_cli(binary, "--expr \"x*y + x^2\" --at x=3,y=2 --order 2");
    try {
        json j = json::parse(r1.out);
        ok = ok && r1.exit_code == 0 && r1.out == r1b.out;  // byte-stable across runs
        ok = ok && j.at("value").get<double>() == 15.0;
        const auto& der = j.at("derivatives");
        ok = ok && der.at("x").get<double>() == 8.0 && der.at("y").get<double>() == 3.0;
        ok = ok && der.at("x,x").get<double>() == 2.0 && der.at("x,y").get<double>() == 1.0 &&
             der.at("y,y").get<double>() == 0.0;
        ok = ok && der.size() == 5;  // sorted multi-indices only
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }

    auto r2 = run_cli(binary, "--expr \"sin(x)\" --at x=0 --order 3 --taylor x:3");
    try {
        json j = json::parse(r2.out);
        ok = ok && r2.exit_code == 0;
        auto t = j.at("taylor").at("x").get<std::vector<double>>();
        const std::array<double, 4> expect = {0, 1, 0, -1.0 / 6};
        ok = ok && t.size() == 4;
        for (int i = 0; i < 4; ++i) ok = ok && std::fabs(t[i] - expect[i]) <= 1e-15;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }

    auto r3 = run_cli(binary, "--expr \"1/x\" --at x=0 --order 1");
    try {
        json j = json::parse(r3.out);
        ok = ok && r3.exit_code == 2;
        std::string msg = j.at("error").get<std::string>();
        ok = ok && msg.find("division by zero") != std::string::npos;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }

    report(10, "CLI golden runs (values, key set, exit codes, byte stability)", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
    criterion_seed_shape();
    criterion_leibniz();
    criterion_chain_rule();
    criterion_commutation();
    criterion_corollary();
    criterion_polynomial_oracle();
    criterion_fd_agreement();
    criterion_taylor();
    criterion_symmetry_and_pythagoras();
    if (argc > 1) {
        criterion_cli_golden(argv[1]);
    } else {
        report(10, "CLI golden runs", false, "path to tangent-eval not provided");
    }
    return g_failures;
}
