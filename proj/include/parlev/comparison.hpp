#pragma once

// Single-constant calibration of the analytic kernel against a Monte
// Carlo grid, and the resulting pull table.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "parlev/errors.hpp"

namespace parlev {

/// One (r, gamma) point carrying a reference value and its error.
struct GridPoint {
    double r = 0.0;
    double gamma = 0.0;
    std::complex<double> value{};
    double sigma = 0.0;
};

struct Calibration {
    double constant = 0.0;
    double error = 0.0; // 1 / sqrt(sum |a|^2 / sigma^2)
    double chi2 = 0.0;
    std::size_t points = 0;
};

/// Real C minimising sum |C a - m|^2 / sigma^2. Points with sigma == 0 are
/// all weighted equally when no point has an error; otherwise they are skipped.
inline Calibration calibrate_constant(std::span<const std::complex<double>> reference,
                                      std::span<const double> sigma,
                                      std::span<const std::complex<double>> analytic) {
    if (reference.size() != analytic.size() || reference.size() != sigma.size())
        throw StructuralError("calibration: reference and analytic grids differ in size");
    const bool weighted = std::any_of(sigma.begin(), sigma.end(), [](double s) { return s > 0.0; });
    double saa = 0.0;
    double sam = 0.0;
    double scale = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        if (weighted && !(sigma[i] > 0.0)) continue;
        const double w = weighted ? 1.0 / (sigma[i] * sigma[i]) : 1.0;
        saa += w * std::norm(analytic[i]);
        sam += w * (reference[i] * std::conj(analytic[i])).real();
        scale = std::max(scale, std::abs(analytic[i]));
        ++used;
    }
    if (used == 0 || !(scale > 1e-300) || !(saa > 0.0) || !std::isfinite(saa))
        throw FitError("calibration: analytic values vanish on the fit support; constant is undetermined");
    Calibration c;
    c.constant = sam / saa;
    c.error = 1.0 / std::sqrt(saa);
    c.points = used;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        if (weighted && !(sigma[i] > 0.0)) continue;
        const double w = weighted ? 1.0 / (sigma[i] * sigma[i]) : 1.0;
        c.chi2 += w * std::norm(reference[i] - c.constant * analytic[i]);
    }
    return c;
}

inline Calibration calibrate_constant(std::span<const GridPoint> reference, std::span<const std::complex<double>> analytic) {
    std::vector<std::complex<double>> m;
    std::vector<double> s;
    for (const auto& p : reference) {
        m.push_back(p.value);
        s.push_back(p.sigma);
    }
    return calibrate_constant(m, s, analytic);
}

struct ComparisonRow {
    double r = 0.0;
    double gamma = 0.0;
    std::complex<double> reference{};
    double sigma = 0.0;
    std::complex<double> analytic{};
    std::optional<double> pull_re; // (Re m - C Re a) / sigma, only when sigma > 0
    std::optional<double> pull_im;
    bool in_fit = false;
};

struct GammaSummary {
    double normalized_rms = 0.0;
    double max_pull = 0.0;
    Calibration own_fit{}; // constant fitted on this gamma alone
};

struct ComparisonReport {
    Calibration calibration{};
    std::optional<double> calibration_gamma; // fit restricted to this gamma when set
    std::vector<ComparisonRow> rows;
    double normalized_rms = 0.0; // sqrt(sum |m - C a|^2 / sum |m|^2)
    double max_pull = 0.0;
    std::map<double, GammaSummary> per_gamma;
};

namespace detail {

inline double normalized_rms(const std::vector<const ComparisonRow*>& rows, double c) {
    double num = 0.0;
    double den = 0.0;
    for (const auto* r : rows) {
        num += std::norm(r->reference - c * r->analytic);
        den += std::norm(r->reference);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

inline Calibration fit_rows(const std::vector<const ComparisonRow*>& rows) {
    std::vector<std::complex<double>> m, a;
    std::vector<double> s;
    for (const auto* r : rows) {
        m.push_back(r->reference);
        a.push_back(r->analytic);
        s.push_back(r->sigma);
    }
    return calibrate_constant(m, s, a);
}

} // namespace detail

/// Calibrates C (on all points, or on one gamma) and tabulates pulls.
/// `reference` and `analytic` must be on the same grid in the same order.
inline ComparisonReport compare_grids(std::span<const GridPoint> reference, std::span<const std::complex<double>> analytic,
                                      std::optional<double> calibration_gamma = std::nullopt) {
    if (reference.size() != analytic.size()) throw StructuralError("compare: grids differ in size");
    ComparisonReport rep;
    rep.calibration_gamma = calibration_gamma;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        ComparisonRow row;
        row.r = reference[i].r;
        row.gamma = reference[i].gamma;
        row.reference = reference[i].value;
        row.sigma = reference[i].sigma;
        row.analytic = analytic[i];
        row.in_fit = !calibration_gamma || std::abs(row.gamma - *calibration_gamma) < 1e-12;
        rep.rows.push_back(row);
    }
    std::vector<const ComparisonRow*> fit_set, all;
    for (const auto& r : rep.rows) {
        all.push_back(&r);
        if (r.in_fit) fit_set.push_back(&r);
    }
    if (fit_set.empty()) throw StructuralError("compare: calibration gamma not present on the grid");
    rep.calibration = detail::fit_rows(fit_set);
    const double c = rep.calibration.constant;

    std::map<double, std::vector<const ComparisonRow*>> by_gamma;
    for (auto& r : rep.rows) {
        if (r.sigma > 0.0) {
            r.pull_re = (r.reference.real() - c * r.analytic.real()) / r.sigma;
            r.pull_im = (r.reference.imag() - c * r.analytic.imag()) / r.sigma;
            rep.max_pull = std::max({rep.max_pull, std::abs(*r.pull_re), std::abs(*r.pull_im)});
        }
        by_gamma[r.gamma].push_back(&r);
    }
    rep.normalized_rms = detail::normalized_rms(all, c);
    for (const auto& [g, rows] : by_gamma) {
        GammaSummary s;
        s.normalized_rms = detail::normalized_rms(rows, c);
        for (const auto* r : rows)
            if (r->pull_re) s.max_pull = std::max({s.max_pull, std::abs(*r->pull_re), std::abs(*r->pull_im)});
        try {
            s.own_fit = detail::fit_rows(rows);
        } catch (const FitError&) {
        }
        rep.per_gamma[g] = s;
    }
    return rep;
}

} // namespace parlev
