#ifndef TANGENT_ALGEBRA_HPP
#define TANGENT_ALGEBRA_HPP

#include <algorithm>
#include <cmath>
#include <limits>

#include "tangent/core.hpp"

// Vector-space and algebra structure on Var: scalar multiplication,
// componentwise addition, the Leibniz bilinear product, and the
// operators derived from them.

namespace tangent {

namespace detail {

// Constants carry no derivative budget to exhaust, so they combine with
// operands of any order.
inline int effective_order(const Var& v) {
    return is_constant(v) ? std::numeric_limits<int>::max() : v.order;
}

inline Var lower_to(const Var& v, int n) {
    if (is_constant(v)) return v;
    Var out = v;
    while (out.order > n) out = reduce(out);
    return out;
}

inline bool is_integer(Scalar r) { return std::isfinite(r) && std::nearbyint(r) == r; }

}  // namespace detail

inline Var scalar_mul(const Var& v, Scalar c) {
    Var out{v.order, v.id * c, {}, std::nullopt};
    for (const auto& [k, w] : v.dTau) out.dTau.emplace(k, scalar_mul(w, c));
    return out;
}

inline Var add(const Var& a, const Var& b) {
    int n = std::min(detail::effective_order(a), detail::effective_order(b));
    if (n == std::numeric_limits<int>::max()) return constant(a.id + b.id);
    Var x = detail::lower_to(a, n);
    Var y = detail::lower_to(b, n);
    Var out{n, a.id + b.id, std::move(x.dTau), std::nullopt};
    for (const auto& [k, w] : y.dTau) {
        auto it = out.dTau.find(k);
        if (it != out.dTau.end())
            it->second = add(it->second, w);
        else
            out.dTau.emplace(k, w);
    }
    return out;
}

/// Bilinear product; the Leibniz rule applied at every tensor level.
inline Var mul(const Var& a, const Var& b) {
    int n = std::min(detail::effective_order(a), detail::effective_order(b));
    if (n == std::numeric_limits<int>::max()) return constant(a.id * b.id);
    Var x = detail::lower_to(a, n);
    Var y = detail::lower_to(b, n);
    Var out{n, a.id * b.id, {}, std::nullopt};
    if (n > 0) {
        Var rx = reduce_or_const(x);
        Var ry = reduce_or_const(y);
        for (const auto& [k, w] : x.dTau) out.dTau.emplace(k, mul(w, ry));
        for (const auto& [k, w] : y.dTau) {
            Var t = mul(rx, w);
            auto it = out.dTau.find(k);
            if (it != out.dTau.end())
                it->second = add(it->second, t);
            else
                out.dTau.emplace(k, std::move(t));
        }
    }
    return out;
}

inline Var neg(const Var& v) { return scalar_mul(v, -1.0); }

inline Var sub(const Var& a, const Var& b) { return add(a, neg(b)); }

/// Real power with a constant exponent. Integer exponents are valid on
/// any base (except 0 with a negative exponent); fractional exponents
/// require a strictly positive base.
inline Var pow_scalar(const Var& v, Scalar r) {
    if (!detail::is_integer(r) && v.id <= 0.0)
        throw DomainError("pow: fractional exponent requires a positive base");
    if (r < 0.0 && v.id == 0.0)
        throw DomainError("pow: zero base with a negative exponent");
    int n = is_constant(v) ? 0 : v.order;
    if (r == 0.0) return Var{n, 1.0, {}, std::nullopt};
    Var out{n, std::pow(v.id, r), {}, std::nullopt};
    if (n > 0) {
        // chain rule with primitive r * v^(r-1); recursion terminates
        // because the order strictly decreases
        Var g = scalar_mul(pow_scalar(reduce(v), r - 1.0), r);
        for (const auto& [k, w] : v.dTau) out.dTau.emplace(k, mul(w, g));
    }
    return out;
}

inline Var div(const Var& a, const Var& b) {
    if (b.id == 0.0) throw DomainError("division by zero");
    return mul(a, pow_scalar(b, -1.0));
}

// Order logic acts on the value components only.
inline bool eq(const Var& a, const Var& b) { return a.id == b.id; }
inline bool ne(const Var& a, const Var& b) { return a.id != b.id; }
inline bool lt(const Var& a, const Var& b) { return a.id < b.id; }
inline bool le(const Var& a, const Var& b) { return a.id <= b.id; }
inline bool gt(const Var& a, const Var& b) { return a.id > b.id; }
inline bool ge(const Var& a, const Var& b) { return a.id >= b.id; }

// Operator sugar over the named operations.
inline Var operator+(const Var& a, const Var& b) { return add(a, b); }
inline Var operator-(const Var& a, const Var& b) { return sub(a, b); }
inline Var operator*(const Var& a, const Var& b) { return mul(a, b); }
inline Var operator/(const Var& a, const Var& b) { return div(a, b); }
inline Var operator-(const Var& v) { return neg(v); }
inline Var operator*(const Var& v, Scalar c) { return scalar_mul(v, c); }
inline Var operator*(Scalar c, const Var& v) { return scalar_mul(v, c); }
inline Var operator+(const Var& v, Scalar c) { return add(v, constant(c)); }
inline Var operator+(Scalar c, const Var& v) { return add(constant(c), v); }
inline Var operator-(const Var& v, Scalar c) { return sub(v, constant(c)); }
inline Var operator-(Scalar c, const Var& v) { return sub(constant(c), v); }
inline Var operator/(const Var& v, Scalar c) { return div(v, constant(c)); }
inline Var operator/(Scalar c, const Var& v) { return div(constant(c), v); }
inline bool operator==(const Var& a, const Var& b) { return eq(a, b); }
inline bool operator!=(const Var& a, const Var& b) { return ne(a, b); }
inline bool operator<(const Var& a, const Var& b) { return lt(a, b); }
inline bool operator<=(const Var& a, const Var& b) { return le(a, b); }
inline bool operator>(const Var& a, const Var& b) { return gt(a, b); }
inline bool operator>=(const Var& a, const Var& b) { return ge(a, b); }

}  // namespace tangent

#endif  // TANGENT_ALGEBRA_HPP
