#pragma once

// Parametric GOE correlator as a triple integral over the eigenvalue
// coordinates (l1, l2 in [0, inf), l in [0, 1]) of the saddle manifold:
//
//   k(r, g) ~ int dl1 dl2 dl  mu(l1, l2, l) S^2
//             exp{ -i pi r S - (pi g / 4) S (1 + S) },   S = l1 + l2 + 2 l,
//
//   mu = (1 - l) l |l1 - l2| / ( sqrt((1 + l1) l1 (1 + l2) l2) (l + l1)^2 (l + l2)^2 ),
//
// r = eps/d and g = Gamma/d. The overall constant is not fixed here; see
// calibrate_constant() in comparison.hpp.
//
// Numerics. Each semi-infinite coordinate is written l_i = s_i^2 with
// s_i = u_i / (1 - u_i), u_i in [0, 1); the square root cancels the
// l_i^{-1/2} endpoint singularity exactly. The compact coordinate is
// l = v^2, removing the v^{-1/2} behaviour that appears once the inner
// integrals are done. Breakpoints sit at s2 = s1 (the |l1 - l2| kink) and
// at s_i = v (the (l + l_i)^-2 peak of width l). The three 1-D adaptive
// Gauss-Kronrod integrations are nested and inner errors are propagated.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "parlev/errors.hpp"
#include "parlev/quadrature.hpp"

namespace parlev {

struct KernelParams {
    double r = 0.0;         // eps / d
    double gamma = 0.0;     // Gamma / d
    double regulator = 0.0; // evaluate at r - i * regulator

    void validate() const {
        if (!std::isfinite(r)) throw ParameterError("kernel: r must be finite");
        if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ParameterError("kernel: gamma must be >= 0");
        if (!(regulator >= 0.0) || !std::isfinite(regulator)) throw ParameterError("kernel: regulator must be >= 0");
        if (gamma == 0.0 && regulator == 0.0)
            throw ParameterError("kernel: gamma = 0 needs a positive regulator for convergence");
    }
};

/// The exponent's argument. Its real part is -pi*reg*S - (pi g/4) S (1+S) <= 0.
inline std::complex<double> vwz_exponent(double s_total, const KernelParams& p) {
    using std::numbers::pi;
    const std::complex<double> z(p.r, -p.regulator);
    return std::complex<double>(0.0, -pi) * z * s_total - (pi * p.gamma / 4.0) * s_total * (1.0 + s_total);
}

/// Integration measure mu(l1, l2, l) without the exponential and S^2.
inline double vwz_measure(double l1, double l2, double l) {
    if (l1 < 0.0 || l2 < 0.0 || l < 0.0 || l > 1.0 || !std::isfinite(l1) || !std::isfinite(l2))
        throw ParameterError("vwz integrand: arguments outside l1, l2 >= 0, 0 <= l <= 1");
    const double num = (1.0 - l) * l * std::abs(l1 - l2);
    if (num == 0.0) return 0.0;
    // Grouped as products of symmetric pairs so that swapping l1 and l2 is
    // bitwise exact.
    const double ab = (l + l1) * (l + l2);
    return num / (std::sqrt(((1.0 + l1) * l1) * ((1.0 + l2) * l2)) * (ab * ab));
}

/// Full integrand: measure * exp(exponent) * S^2.
inline std::complex<double> vwz_integrand(double l1, double l2, double l, const KernelParams& p) {
    const double m = vwz_measure(l1, l2, l);
    if (m == 0.0) return {0.0, 0.0};
    const double s = l1 + l2 + 2.0 * l;
    return m * s * s * std::exp(vwz_exponent(s, p));
}

/// Exponent in the alternative (compact/non-compact angle) parametrisation:
/// i pi w (l - l1 l2) - (pi g / 4)(2 l1^2 l2^2 - l1^2 - l2^2 - l^2 + 1).
inline std::complex<double> efetov_exponent(double l, double l1, double l2, double omega_over_d, double gamma) {
    using std::numbers::pi;
    const double q1 = l1 * l1;
    const double q2 = l2 * l2;
    return {-(pi * gamma / 4.0) * (2.0 * q1 * q2 - q1 - q2 - l * l + 1.0), pi * omega_over_d * (l - l1 * l2)};
}

struct KernelValue {
    std::complex<double> value{};
    double error = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

inline double compact_to_half_line(double u) { return u / (1.0 - u); }
inline double half_line_to_compact(double s) { return s / (1.0 + s); }

// Integrand in (v, u1, u2) with all Jacobians folded in. l_i = s_i^2 and
// dl_i / sqrt(l_i) = 2 ds_i = 2 du_i / (1 - u_i)^2.
inline std::complex<double> transformed_integrand(double v, double u1, double u2, const KernelParams& p) {
    const double l = v * v;
    const double s1 = compact_to_half_line(u1);
    const double s2 = compact_to_half_line(u2);
    const double l1 = s1 * s1;
    const double l2 = s2 * s2;
    const double num = (1.0 - l) * l * std::abs(l1 - l2);
    if (num == 0.0) return {0.0, 0.0};
    const double ab = (l + l1) * (l + l2);
    const double measure = num / (std::sqrt((1.0 + l1) * (1.0 + l2)) * (ab * ab));
    const double w1 = 1.0 - u1;
    const double w2 = 1.0 - u2;
    const double jac = 2.0 * v * ((2.0 / (w1 * w1)) * (2.0 / (w2 * w2)));
    const double s = l1 + l2 + 2.0 * l;
    const std::complex<double> e = std::exp(vwz_exponent(s, p));
    const double amp = jac * measure * s * s;
    if (!std::isfinite(amp)) return {0.0, 0.0};
    return amp * e;
}

} // namespace detail

/// Triple integral evaluated by nested adaptive quadrature. Throws
/// ConvergenceError (with the partial value) when the error estimate
/// exceeds max(abs_tol, rel_tol |value|).
inline KernelValue k_analytic(const KernelParams& p, const QuadratureSpec& quad = {}) {
    p.validate();
    // Inner levels run tighter so their propagated error stays a small
    // fraction of the outer budget despite oscillatory cancellation.
    const QuadratureSpec inner = quad.tightened(30.0);
    const QuadratureSpec middle = quad.tightened(10.0);
    std::size_t evals = 0;

    auto over_u2 = [&](double v, double u1) -> Estimate {
        const std::array<double, 2> cuts{u1, detail::half_line_to_compact(v)};
        auto f = [&](double u2) { return detail::transformed_integrand(v, u1, u2, p); };
        const QuadResult r = integrate(f, 0.0, 1.0, inner, cuts);
        evals += r.evaluations;
        return {r.value, r.error};
    };
    auto over_u1 = [&](double v) -> Estimate {
        const std::array<double, 1> cuts{detail::half_line_to_compact(v)};
        auto f = [&](double u1) { return over_u2(v, u1); };
        const QuadResult r = integrate(f, 0.0, 1.0, middle, cuts);
        return {r.value, r.error};
    };
    const QuadResult outer = integrate(over_u1, 0.0, 1.0, quad);
    KernelValue out{outer.value, outer.error, evals};
    if (!(out.error <= std::max(quad.abs_tol, quad.rel_tol * std::abs(out.value))))
        throw ConvergenceError("k_analytic: error estimate " + std::to_string(out.error) + " above tolerance at r=" +
                                   std::to_string(p.r) + ", gamma=" + std::to_string(p.gamma),
                               out.value, out.error);
    return out;
}

/// Same kernel in the estimator's sign convention: the Monte Carlo
/// correlator puts the retarded branch at E + eps/2, which corresponds to
/// the kernel at -r, i.e. its complex conjugate.
inline KernelValue k_estimator_convention(KernelParams p, const QuadratureSpec& quad = {}) {
    p.r = -p.r;
    return k_analytic(p, quad);
}

} // namespace parlev
