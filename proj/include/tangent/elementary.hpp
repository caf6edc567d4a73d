#ifndef TANGENT_ELEMENTARY_HPP
#define TANGENT_ELEMENTARY_HPP

#include <cassert>
#include <cmath>
#include <functional>
#include <string>

#include "tangent/algebra.hpp"

// Lifting scalar functions into arbitrarily-often-differentiable ones.
// A lifted function needs only its scalar mapping and the program for
// its first derivative; higher orders come out of the recursion, since
// the primitive is applied at one lower order each time.

namespace tangent {

/// A scalar mapping paired with its derivative program. Applying it to
/// an order-n Var yields an order-n result whose derivative entries are
/// produced by the primitive at order n-1.
struct LiftedFn {
    std::string name;
    std::function<Scalar(Scalar)> mapping;
    std::function<Var(const Var&)> primitive;
    std::function<bool(Scalar)> domain = [](Scalar) { return true; };
};

/// Chain rule through the lifted function: value from the mapping,
/// each derivative entry multiplied by the primitive of the reduced
/// argument.
inline Var apply_lifted(const LiftedFn& f, const Var& v) {
    if (!f.domain(v.id)) throw DomainError(f.name + ": argument out of domain");
    int n = is_constant(v) ? 0 : v.order;
    Var out{n, f.mapping(v.id), {}, std::nullopt};
    if (n > 0) {
        Var g = f.primitive(reduce(v));
        // the primitive must not manufacture derivative depth
        assert(is_constant(g) || g.order <= n - 1);
        for (const auto& [k, w] : v.dTau) out.dTau.emplace(k, mul(w, g));
    }
    return out;
}

Var cos(const Var& v);
Var exp(const Var& v);

/// sin, built explicitly rather than through apply_lifted; the two
/// constructions are pinned together by a differential test.
inline Var sin(const Var& v) {
    int n = is_constant(v) ? 0 : v.order;
    Var out{n, std::sin(v.id), {}, std::nullopt};
    if (n > 0) {
        Var g = cos(reduce(v));
        for (const auto& [k, w] : v.dTau) out.dTau.emplace(k, mul(w, g));
    }
    return out;
}

inline const LiftedFn& lifted_sin() {
    static const LiftedFn f{"sin", [](Scalar x) { return std::sin(x); },
                            [](const Var& u) { return cos(u); }};
    return f;
}

inline const LiftedFn& lifted_cos() {
    static const LiftedFn f{"cos", [](Scalar x) { return std::cos(x); },
                            [](const Var& u) { return neg(sin(u)); }};
    return f;
}

inline const LiftedFn& lifted_exp() {
    static const LiftedFn f{"exp", [](Scalar x) { return std::exp(x); },
                            [](const Var& u) { return exp(u); }};
    return f;
}

inline const LiftedFn& lifted_ln() {
    static const LiftedFn f{"ln", [](Scalar x) { return std::log(x); },
                            [](const Var& u) { return pow_scalar(u, -1.0); },
                            [](Scalar x) { return x > 0.0; }};
    return f;
}

inline const LiftedFn& lifted_sqrt() {
    static const LiftedFn f{"sqrt", [](Scalar x) { return std::sqrt(x); },
                            [](const Var& u) { return scalar_mul(pow_scalar(u, -0.5), 0.5); },
                            [](Scalar x) { return x > 0.0; }};
    return f;
}

inline Var cos(const Var& v) { return apply_lifted(lifted_cos(), v); }
inline Var exp(const Var& v) { return apply_lifted(lifted_exp(), v); }
inline Var ln(const Var& v) { return apply_lifted(lifted_ln(), v); }
inline Var sqrt(const Var& v) { return apply_lifted(lifted_sqrt(), v); }

}  // namespace tangent

#endif  // TANGENT_ELEMENTARY_HPP
