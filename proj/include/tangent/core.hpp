#ifndef TANGENT_CORE_HPP
#define TANGENT_CORE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Nested higher-order forward-mode AD values.
//
// A Var holds a scalar value together with derivative tensors up to a
// stated order. Derivatives are kept as a map from variable identity to
// a Var of one lower order, so the k-th derivative of any result is
// itself a (order-k)-differentiable value.

namespace tangent {

using Scalar = double;

/// Raised when a function is evaluated outside its domain (ln of a
/// non-positive value, division by zero, fractional power of a
/// non-positive base).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when more derivative orders are requested than a Var carries.
struct OrderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Stable identity of a seeded independent variable.
struct VarId {
    std::uint32_t value = 0;
    friend auto operator<=>(const VarId&, const VarId&) = default;
};

/// Issues VarIds consecutively from 0. Issuance is not synchronized;
/// callers sharing a Registry across threads must serialize fresh().
class Registry {
  public:
    VarId fresh() {
        VarId id{next_++};
        seeds_.push_back(id);
        return id;
    }
    const std::vector<VarId>& seeds() const { return seeds_; }

  private:
    std::uint32_t next_ = 0;
    std::vector<VarId> seeds_;
};

/// An element of the nested derivative space: a value plus derivative
/// tensors to depth `order`. Immutable by convention after construction;
/// all operations return fresh Vars. A missing dTau key is an exact zero
/// derivative with respect to that variable.
struct Var {
    int order = 0;
    Scalar id = 0.0;
    std::map<VarId, Var> dTau;              // every entry has order == order - 1
    std::optional<VarId> seed_id;           // set only by seed()
};

/// A 0-differentiable value carrying no derivative data.
inline Var constant(Scalar x) { return Var{0, x, {}, std::nullopt}; }

/// Constants combine with a Var of any order without consuming its
/// derivative budget. True for order-0 Vars with no derivative data.
inline bool is_constant(const Var& v) { return v.order == 0 && v.dTau.empty(); }

/// Initializes an n-differentiable independent variable: unit first
/// derivative with respect to its own fresh id, all higher orders zero
/// (encoded as absent keys).
inline Var seed(Scalar x, int n, Registry& reg) {
    if (n < 1)
        throw OrderError("seed: order must be >= 1 (use constant() for order 0)");
    VarId k = reg.fresh();
    Var unit{n - 1, 1.0, {}, std::nullopt};
    Var v{n, x, {}, k};
    v.dTau.emplace(k, std::move(unit));
    return v;
}

/// Truncates v to one lower order, dropping the deepest derivative
/// level. The input is not modified.
inline Var reduce(const Var& v) {
    if (v.order < 1) throw OrderError("reduce: cannot reduce an order-0 Var");
    Var out{v.order - 1, v.id, {}, std::nullopt};
    if (out.order > 0)
        for (const auto& [k, w] : v.dTau) out.dTau.emplace(k, reduce(w));
    return out;
}

/// Like reduce, but passes constants through unchanged (a constant is
/// order-compatible with any operand).
inline Var reduce_or_const(const Var& v) { return is_constant(v) ? v : reduce(v); }

/// The reduction-of-order map: the derivative of v with respect to k as
/// an (order-1)-differentiable value. An absent key is an exact zero.
inline Var d(const Var& v, VarId k) {
    if (v.order < 1) throw OrderError("d: Var is not differentiable (order 0)");
    auto it = v.dTau.find(k);
    if (it != v.dTau.end()) return it->second;
    return Var{v.order - 1, 0.0, {}, std::nullopt};
}

inline Scalar value(const Var& v) { return v.id; }

}  // namespace tangent

#endif  // TANGENT_CORE_HPP
