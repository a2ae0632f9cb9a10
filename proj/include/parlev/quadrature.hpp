#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration of complex-valued
// functions on finite intervals.
//
// The integrand may return either std::complex<double> or an Estimate
// (value plus an error bound inherited from an inner integration); the
// latter is how nested integrals carry their error outwards: the inner
// error is integrated alongside the value with the Kronrod rule and added
// to the outer discretisation error.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

namespace parlev {

struct QuadratureSpec {
    double rel_tol = 1e-6;
    double abs_tol = 1e-12;
    std::size_t max_intervals = 4000;

    QuadratureSpec tightened(double factor) const {
        return {rel_tol / factor, abs_tol / factor, max_intervals};
    }
};

struct Estimate {
    std::complex<double> value{};
    double error = 0.0;
};

struct QuadResult {
    std::complex<double> value{};
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

namespace detail {

// Kronrod abscissae on [-1, 1] (positive half, descending) and weights,
// QUADPACK qk15 values.
inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the 7-point rule (nodes are xgk[1], xgk[3], xgk[5], xgk[7]).
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    std::complex<double> value;
    double error;  // discretisation error of this panel
    double inherited; // integrated inner error

    bool operator<(const Panel& o) const { return error + inherited < o.error + o.inherited; }
};

template <class F>
Panel kronrod_panel(F& f, double a, double b, std::size_t& evals) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    using R = std::invoke_result_t<F&, double>;
    auto eval = [&](double x) -> Estimate {
        ++evals;
        if constexpr (std::is_same_v<R, Estimate>) return f(x);
        else return Estimate{std::complex<double>(f(x)), 0.0};
    };
    const Estimate fc = eval(centre);
    std::complex<double> kronrod = wgk[7] * fc.value;
    std::complex<double> gauss = wg[3] * fc.value;
    double inherited = wgk[7] * fc.error;
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const Estimate f1 = eval(centre - dx);
        const Estimate f2 = eval(centre + dx);
        kronrod += wgk[j] * (f1.value + f2.value);
        inherited += wgk[j] * (f1.error + f2.error);
        if (j % 2 == 1) gauss += wg[j / 2] * (f1.value + f2.value);
    }
    kronrod *= half;
    gauss *= half;
    inherited *= std::abs(half);
    // Plain |K - G| rather than QUADPACK's (200 |K-G|)^1.5 heuristic: the
    // latter can under-report on the weakly singular panels we feed it.
    const double err = std::abs(kronrod - gauss);
    return {a, b, kronrod, err, inherited};
}

} // namespace detail

/// Integrates f over [a, b], splitting first at the given interior
/// breakpoints (ignored when outside (a, b)).
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadratureSpec& spec,
                     std::span<const double> breakpoints = {}) {
    std::vector<double> cuts{a};
    for (double p : breakpoints)
        if (p > a && p < b) cuts.push_back(p);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    QuadResult out;
    std::priority_queue<detail::Panel> heap;
    std::complex<double> total{};
    double err = 0.0;
    double inherited = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        detail::Panel p = detail::kronrod_panel(f, cuts[i], cuts[i + 1], out.evaluations);
        total += p.value;
        err += p.error;
        inherited += p.inherited;
        heap.push(p);
    }
    auto done = [&] { return err + inherited <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
    while (!done() && heap.size() < spec.max_intervals) {
        detail::Panel worst = heap.top();
        // Only inner error left on the worst panel; bisecting will not help much.
        if (worst.error < 1e-3 * worst.inherited && worst.error < 1e-16 * std::abs(total)) break;
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        heap.pop();
        detail::Panel left = detail::kronrod_panel(f, worst.a, mid, out.evaluations);
        detail::Panel right = detail::kronrod_panel(f, mid, worst.b, out.evaluations);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        inherited += left.inherited + right.inherited - worst.inherited;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum from the panels to shed the drift of the running updates.
    total = {};
    err = 0.0;
    inherited = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        err += heap.top().error;
        inherited += heap.top().inherited;
        heap.pop();
    }
    out.value = total;
    out.error = err + inherited;
    out.converged = done();
    return out;
}

} // namespace parlev
