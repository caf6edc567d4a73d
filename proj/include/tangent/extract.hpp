#ifndef TANGENT_EXTRACT_HPP
#define TANGENT_EXTRACT_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <vector>

#include "tangent/core.hpp"

// Derivative extraction: mixed partials by multi-index, dense tensors,
// gradient/Hessian slices, Taylor coefficients in one direction, and an
// independent central-difference oracle.

namespace tangent {

/// Ordered sequence of seed ids naming one mixed partial; the empty
/// path names the value itself.
using MultiIndex = std::vector<VarId>;

/// Dense flattened view of the nested derivative structure. Absent
/// nested keys appear as explicit 0.0 entries.
struct DerivTensor {
    std::map<MultiIndex, Scalar> entries;
    int max_order = 0;
    std::map<VarId, Scalar> point;
};

/// Folds the reduction-of-order map along the path and reads the value.
inline Scalar derivative(const Var& v, const MultiIndex& idx) {
    if (static_cast<int>(idx.size()) > v.order)
        throw OrderError("derivative: multi-index longer than the Var's order");
    const Var* cur = &v;
    Var tmp;
    for (VarId k : idx) {
        tmp = d(*cur, k);
        cur = &tmp;
    }
    return cur->id;
}

namespace detail {
inline void tensor_walk(const Var& v, const std::vector<VarId>& seeds, int k, MultiIndex& path,
                        std::map<MultiIndex, Scalar>& entries) {
    entries.emplace(path, v.id);
    if (static_cast<int>(path.size()) == k) return;
    for (VarId s : seeds) {
        path.push_back(s);
        Var w = d(v, s);
        tensor_walk(w, seeds, k, path, entries);
        path.pop_back();
    }
}
}  // namespace detail

/// All mixed partials over the given seeds up to depth k.
inline DerivTensor tensor(const Var& v, const std::vector<VarId>& seeds, int k,
                          std::map<VarId, Scalar> point = {}) {
    if (k > v.order) throw OrderError("tensor: requested depth exceeds the Var's order");
    DerivTensor out{{}, k, std::move(point)};
    MultiIndex path;
    detail::tensor_walk(v, seeds, k, path, out.entries);
    return out;
}

inline std::vector<Scalar> gradient(const Var& v, const std::vector<VarId>& seeds) {
    if (v.order < 1) throw OrderError("gradient: Var must be at least order 1");
    std::vector<Scalar> g;
    g.reserve(seeds.size());
    for (VarId s : seeds) g.push_back(derivative(v, {s}));
    return g;
}

inline std::vector<std::vector<Scalar>> hessian(const Var& v, const std::vector<VarId>& seeds) {
    if (v.order < 2) throw OrderError("hessian: Var must be at least order 2");
    std::vector<std::vector<Scalar>> h(seeds.size(), std::vector<Scalar>(seeds.size()));
    for (std::size_t i = 0; i < seeds.size(); ++i)
        for (std::size_t j = 0; j < seeds.size(); ++j)
            h[i][j] = derivative(v, {seeds[i], seeds[j]});
    return h;
}

/// Coefficients c_0..c_m of the truncated series in the direction k:
/// c_j is the j-th pure partial divided by j!.
inline std::vector<Scalar> taylor_coeffs(const Var& v, VarId k, int m) {
    if (m > v.order) throw OrderError("taylor_coeffs: requested order exceeds the Var's order");
    std::vector<Scalar> c;
    c.reserve(m + 1);
    MultiIndex path;
    Scalar factorial = 1.0;
    for (int j = 0; j <= m; ++j) {
        if (j > 0) {
            path.push_back(k);
            factorial *= j;
        }
        c.push_back(derivative(v, path) / factorial);
    }
    return c;
}

/// Central-difference oracle for first and second partials; idx holds
/// coordinate positions into the point vector (length 1 or 2).
inline Scalar fd_oracle(const std::function<Scalar(const std::vector<Scalar>&)>& f,
                        std::vector<Scalar> point, const std::vector<std::size_t>& idx) {
    constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
    auto step = [&](std::size_t i, Scalar root) {
        return root * std::max(1.0, std::fabs(point[i]));
    };
    if (idx.size() == 1) {
        std::size_t i = idx[0];
        Scalar h = step(i, std::cbrt(eps));
        std::vector<Scalar> p = point;
        p[i] = point[i] + h;
        Scalar fp = f(p);
        p[i] = point[i] - h;
        Scalar fm = f(p);
        return (fp - fm) / (2.0 * h);
    }
    if (idx.size() == 2 && idx[0] == idx[1]) {
        std::size_t i = idx[0];
        Scalar h = step(i, std::pow(eps, 0.25));
        std::vector<Scalar> p = point;
        Scalar f0 = f(p);
        p[i] = point[i] + h;
        Scalar fp = f(p);
        p[i] = point[i] - h;
        Scalar fm = f(p);
        return (fp - 2.0 * f0 + fm) / (h * h);
    }
    if (idx.size() == 2) {
        std::size_t i = idx[0], j = idx[1];
        Scalar hi = step(i, std::pow(eps, 0.25));
        Scalar hj = step(j, std::pow(eps, 0.25));
        auto at = [&](Scalar si, Scalar sj) {
            std::vector<Scalar> p = point;
            p[i] = point[i] + si * hi;
            p[j] = point[j] + sj * hj;
            return f(p);
        };
        return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * hi * hj);
    }
    throw OrderError("fd_oracle: multi-index length must be 1 or 2");
}

}  // namespace tangent

#endif  // TANGENT_EXTRACT_HPP
