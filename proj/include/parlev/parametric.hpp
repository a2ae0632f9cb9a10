#pragma once

// Parametric family H(X) = H1 cos X + H2 sin X, its first-order expansion
// about the midpoint X0 = (X + X')/2, and the strength parameters.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <variant>

#include "parlev/ensemble.hpp"
#include "parlev/errors.hpp"

namespace parlev {

struct ParametricPair {
    EnsembleMatrix h1;
    EnsembleMatrix h2;
    double x = 0.0;
    double x_prime = 0.0;

    double midpoint() const noexcept { return 0.5 * (x + x_prime); }
    double delta_x() const noexcept { return x - x_prime; }
};

struct LinearizedPair {
    EnsembleMatrix h0;
    EnsembleMatrix v;
    double delta_x = 0.0;
};

namespace detail {

inline void check_same_structure(const EnsembleMatrix& a, const EnsembleMatrix& b) {
    if (a.index() != b.index())
        throw StructuralError("parametric pair mixes symmetry classes");
    if (dimension(a) != dimension(b))
        throw StructuralError("parametric pair has mismatched dimensions");
}

/// ca * A + cb * B, with the exact shortcut cb == 0 so that zero offsets
/// reproduce A bit for bit.
inline EnsembleMatrix combine(double ca, const EnsembleMatrix& a, double cb, const EnsembleMatrix& b) {
    check_same_structure(a, b);
    return std::visit(
        [&](const auto& ma) -> EnsembleMatrix {
            using M = std::decay_t<decltype(ma)>;
            const M& mb = std::get<M>(b);
            if (cb == 0.0) {
                if (ca == 1.0) return ma;
                return M(ca * ma);
            }
            if (ca == 0.0 && cb == 1.0) return mb;
            return M(ca * ma + cb * mb);
        },
        a);
}

/// (cos x, sin x), exact at multiples of pi/2.
inline std::pair<double, double> cos_sin(double x) {
    const double q = std::round(x / (0.5 * std::numbers::pi));
    if (std::abs(x - q * 0.5 * std::numbers::pi) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
        static constexpr double c[] = {1.0, 0.0, -1.0, 0.0};
        const auto k = static_cast<std::size_t>(((static_cast<long long>(q) % 4) + 4) % 4);
        return {c[k], c[(k + 3) % 4]};
    }
    return {std::cos(x), std::sin(x)};
}

} // namespace detail

/// H1 cos(at) + H2 sin(at).
inline EnsembleMatrix build_h(const ParametricPair& pair, double at) {
    const auto [c, s] = detail::cos_sin(at);
    return detail::combine(c, pair.h1, s, pair.h2);
}

/// H0 = H(X0), V = H2 cos X0 - H1 sin X0.
inline LinearizedPair linearize(const ParametricPair& pair) {
    const double x0 = pair.midpoint();
    const auto [c, s] = detail::cos_sin(x0);
    return {build_h(pair, x0), detail::combine(c, pair.h2, -s, pair.h1),
            pair.delta_x()};
}

/// H0 + sign * (delta_x / 2) V; sign = +1 gives H(X), -1 gives H(X').
inline EnsembleMatrix reconstruct(const LinearizedPair& lin, int sign) {
    return detail::combine(1.0, lin.h0, 0.5 * sign * lin.delta_x, lin.v);
}

/// Spreading width Gamma = 2 pi dx^2 <V_mn V_nm> / d = 2 dx^2 lambda.
inline double spreading_width(double delta_x, const EnsembleSpec& spec) {
    spec.validate();
    return 2.0 * delta_x * delta_x * spec.lambda;
}

/// Gamma / d = (2/pi) N dx^2, the parameter that controls decorrelation.
inline double gamma_over_d(double delta_x, const EnsembleSpec& spec) {
    spec.validate();
    return (2.0 / std::numbers::pi) * spec.n * delta_x * delta_x;
}

/// Inverse of gamma_over_d on delta_x >= 0.
inline double delta_x_for_gamma(double gamma, const EnsembleSpec& spec) {
    spec.validate();
    if (gamma < 0.0) throw ParameterError("gamma/d must be non-negative");
    return std::sqrt(std::numbers::pi * gamma / (2.0 * spec.n));
}

} // namespace parlev
