#pragma once

// Monte Carlo estimate of the connected parametric correlator
//
//   k_c(eps, dx) = < g+(E + eps/2; X) g-(E - eps/2; X') > - < g+ > < g- >,
//
// g+- = tr 1/(E +- i eta - H), X - X' = dx, averaged over the ensemble and
// over centre energies E in a band-centre window. The disconnected
// product is formed from per-energy ensemble means and then averaged over
// E, so the slow energy dependence of <g> does not leak into k_c.
// Values are reported in units of 1/d^2 (i.e. d^2 k_c), which makes them
// comparable across N.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/random/uniform_int_distribution.hpp>

#include "parlev/ensemble.hpp"
#include "parlev/errors.hpp"
#include "parlev/parametric.hpp"
#include "parlev/rng.hpp"
#include "parlev/spectral.hpp"

namespace parlev {

enum class FamilyMode { exact, linearized };

inline std::string_view to_string(FamilyMode m) { return m == FamilyMode::exact ? "exact" : "linearized"; }

inline FamilyMode parse_family_mode(std::string_view s) {
    if (s == "exact") return FamilyMode::exact;
    if (s == "linearized" || s == "linearised") return FamilyMode::linearized;
    throw ParameterError("unknown mode '" + std::string(s) + "' (expected exact or linearized)");
}

struct CorrelatorConfig {
    EnsembleSpec ensemble{};
    std::vector<double> epsilon_over_d{0.0};
    std::vector<double> gamma_over_d{0.0};
    double eta_over_d = 0.5;
    double window_fraction = 0.2;
    /// Optional asymmetric window [lo, hi] in units of 2 lambda; overrides window_fraction.
    std::optional<std::pair<double, double>> window{};
    /// Centre energies per realisation; 0 picks a spacing of d/2.
    std::size_t energy_points = 0;
    std::size_t samples = 2;
    std::uint64_t seed = 0;
    FamilyMode mode = FamilyMode::exact;
    double midpoint = 0.0; // X0
    int offset_sign = 1;   // X - X' = offset_sign * dx
    std::size_t bootstrap_resamples = 200;
    unsigned threads = 1;

    std::pair<double, double> energy_window() const {
        const double scale = 2.0 * ensemble.lambda;
        if (window) return {window->first * scale, window->second * scale};
        return {-window_fraction * scale, window_fraction * scale};
    }

    std::size_t resolved_energy_points() const {
        if (energy_points) return energy_points;
        const auto [lo, hi] = energy_window();
        const double d = mean_level_spacing(ensemble);
        return static_cast<std::size_t>(std::floor((hi - lo) / (0.5 * d))) + 1;
    }

    void validate() const {
        ensemble.validate();
        if (samples < 2) throw ParameterError("correlator: need at least 2 samples");
        if (!(eta_over_d > 0.0)) throw ParameterError("correlator: eta must be positive");
        if (epsilon_over_d.empty() || gamma_over_d.empty()) throw ParameterError("correlator: empty grid");
        for (double g : gamma_over_d)
            if (!(g >= 0.0)) throw ParameterError("correlator: gamma/d must be >= 0");
        if (window) {
            if (!(window->first < window->second) || window->first < -1.0 || window->second > 1.0)
                throw ParameterError("correlator: window must satisfy -1 <= lo < hi <= 1");
        } else if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
            throw ParameterError("correlator: window_fraction must be in (0, 1]");
        }
        if (offset_sign != 1 && offset_sign != -1) throw ParameterError("correlator: offset_sign must be +1 or -1");
        if (bootstrap_resamples < 2) throw ParameterError("correlator: need at least 2 bootstrap resamples");
    }
};

struct CorrelatorGrid {
    std::vector<double> epsilon_over_d;
    std::vector<double> gamma_over_d;
    std::vector<std::complex<double>> values; // [eps][gamma], row-major
    std::vector<double> std_err;              // per-component bootstrap error, sqrt((var re + var im)/2)
    CorrelatorConfig config{};
    std::size_t energy_points = 0;
    std::vector<std::string> warnings;

    std::size_t index(std::size_t e, std::size_t g) const { return e * gamma_over_d.size() + g; }
    std::complex<double> value(std::size_t e, std::size_t g) const { return values[index(e, g)]; }
    double error(std::size_t e, std::size_t g) const { return std_err[index(e, g)]; }
};

namespace detail {

/// Everything the estimator needs from one realisation, per grid point.
struct RealisationRecord {
    std::vector<std::complex<double>> g_plus;  // [point][energy]
    std::vector<std::complex<double>> g_minus; // [point][energy]
    std::vector<std::complex<double>> product; // [point], mean over energies of g+ g-
};

struct Layout {
    std::size_t n_eps;
    std::size_t n_gamma;
    std::size_t n_energy;
    std::size_t points() const { return n_eps * n_gamma; }
};

template <class Work>
void parallel_for(std::size_t count, unsigned threads, Work&& work) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count && !failed; i = next++) {
                try {
                    work(i);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                }
            }
        });
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

inline std::vector<double> centre_energies(const CorrelatorConfig& cfg) {
    const auto [lo, hi] = cfg.energy_window();
    const std::size_t n = cfg.resolved_energy_points();
    std::vector<double> e(n);
    if (n == 1) {
        e[0] = 0.5 * (lo + hi);
        return e;
    }
    for (std::size_t i = 0; i < n; ++i) e[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return e;
}

inline void fill_record(RealisationRecord& rec, const Layout& lay, std::size_t gamma_index,
                        const std::vector<double>& levels_x, const std::vector<double>& levels_xp,
                        const CorrelatorConfig& cfg, const std::vector<double>& energies, double d) {
    const double eta = cfg.eta_over_d * d;
    for (std::size_t e = 0; e < lay.n_eps; ++e) {
        const double half_eps = 0.5 * cfg.epsilon_over_d[e] * d;
        const std::size_t point = e * lay.n_gamma + gamma_index;
        std::complex<double>* gp = rec.g_plus.data() + point * lay.n_energy;
        std::complex<double>* gm = rec.g_minus.data() + point * lay.n_energy;
        std::complex<double> acc{};
        for (std::size_t c = 0; c < lay.n_energy; ++c) {
            gp[c] = resolvent_trace(levels_x, {energies[c] + half_eps, eta});
            gm[c] = resolvent_trace(levels_xp, {energies[c] - half_eps, -eta});
            acc += gp[c] * gm[c];
        }
        rec.product[point] = acc / static_cast<double>(lay.n_energy);
    }
}

enum class PairSource { parametric, single_matrix };

/// Draws every realisation and evaluates its resolvent traces.
inline std::vector<RealisationRecord> collect(const CorrelatorConfig& cfg, PairSource source) {
    cfg.validate();
    const Layout lay{cfg.epsilon_over_d.size(), cfg.gamma_over_d.size(), cfg.resolved_energy_points()};
    const std::vector<double> energies = centre_energies(cfg);
    const double d = mean_level_spacing(cfg.ensemble);
    std::vector<RealisationRecord> records(cfg.samples);

    parallel_for(cfg.samples, cfg.threads, [&](std::size_t s) {
        RealisationRecord& rec = records[s];
        rec.g_plus.assign(lay.points() * lay.n_energy, {});
        rec.g_minus.assign(lay.points() * lay.n_energy, {});
        rec.product.assign(lay.points(), {});

        Engine first = make_engine(cfg.seed, Stream::first_matrix, s);
        if (source == PairSource::single_matrix) {
            const EnsembleMatrix h = sample(cfg.ensemble, first);
            const SpectralSample spec = eigenvalues(h);
            for (std::size_t g = 0; g < lay.n_gamma; ++g)
                fill_record(rec, lay, g, spec.eigenvalues, spec.eigenvalues, cfg, energies, d);
            return;
        }

        Engine second = make_engine(cfg.seed, Stream::second_matrix, s);
        ParametricPair pair{sample(cfg.ensemble, first), sample(cfg.ensemble, second), cfg.midpoint, cfg.midpoint};
        std::optional<LinearizedPair> lin;
        if (cfg.mode == FamilyMode::linearized) lin = linearize(pair);

        for (std::size_t g = 0; g < lay.n_gamma; ++g) {
            const double dx = cfg.offset_sign * delta_x_for_gamma(cfg.gamma_over_d[g], cfg.ensemble);
            if (dx == 0.0) {
                const EnsembleMatrix h0 = lin ? lin->h0 : build_h(pair, cfg.midpoint);
                const SpectralSample spec = eigenvalues(h0);
                fill_record(rec, lay, g, spec.eigenvalues, spec.eigenvalues, cfg, energies, d);
                continue;
            }
            EnsembleMatrix hx, hxp;
            if (lin) {
                hx = detail::combine(1.0, lin->h0, 0.5 * dx, lin->v);
                hxp = detail::combine(1.0, lin->h0, -0.5 * dx, lin->v);
            } else {
                hx = build_h(pair, cfg.midpoint + 0.5 * dx);
                hxp = build_h(pair, cfg.midpoint - 0.5 * dx);
            }
            const SpectralSample sx = eigenvalues(hx);
            const SpectralSample sxp = eigenvalues(hxp);
            fill_record(rec, lay, g, sx.eigenvalues, sxp.eigenvalues, cfg, energies, d);
        }
    });
    return records;
}

/// Weighted estimator; weights are bootstrap multiplicities (all ones for
/// the plain estimate). Summation order is fixed by sample index.
inline std::vector<std::complex<double>> estimate(const std::vector<RealisationRecord>& recs, const Layout& lay,
                                                  const std::vector<unsigned>* weights, double d) {
    const std::size_t points = lay.points();
    std::vector<std::complex<double>> sum_plus(points * lay.n_energy), sum_minus(points * lay.n_energy);
    std::vector<std::complex<double>> sum_prod(points);
    double total = 0.0;
    for (std::size_t s = 0; s < recs.size(); ++s) {
        const double w = weights ? static_cast<double>((*weights)[s]) : 1.0;
        if (w == 0.0) continue;
        total += w;
        const RealisationRecord& r = recs[s];
        for (std::size_t i = 0; i < sum_plus.size(); ++i) {
            sum_plus[i] += w * r.g_plus[i];
            sum_minus[i] += w * r.g_minus[i];
        }
        for (std::size_t p = 0; p < points; ++p) sum_prod[p] += w * r.product[p];
    }
    std::vector<std::complex<double>> out(points);
    const double inv = 1.0 / total;
    for (std::size_t p = 0; p < points; ++p) {
        std::complex<double> disconnected{};
        for (std::size_t c = 0; c < lay.n_energy; ++c)
            disconnected += (sum_plus[p * lay.n_energy + c] * inv) * (sum_minus[p * lay.n_energy + c] * inv);
        disconnected /= static_cast<double>(lay.n_energy);
        out[p] = (sum_prod[p] * inv - disconnected) * (d * d);
    }
    return out;
}

/// Bootstrap multiplicity vectors; stream fixed by the run seed.
inline std::vector<std::vector<unsigned>> bootstrap_weights(std::size_t samples, std::size_t resamples,
                                                            std::uint64_t seed) {
    Engine engine = make_engine(seed, Stream::bootstrap, 0);
    boost::random::uniform_int_distribution<std::size_t> pick(0, samples - 1);
    std::vector<std::vector<unsigned>> out(resamples, std::vector<unsigned>(samples, 0));
    for (auto& w : out)
        for (std::size_t i = 0; i < samples; ++i) ++w[pick(engine)];
    return out;
}

inline double component_std_err(const std::vector<std::complex<double>>& reps) {
    const double n = static_cast<double>(reps.size());
    std::complex<double> mean{};
    for (const auto& z : reps) mean += z;
    mean /= n;
    double vr = 0.0;
    double vi = 0.0;
    for (const auto& z : reps) {
        vr += (z.real() - mean.real()) * (z.real() - mean.real());
        vi += (z.imag() - mean.imag()) * (z.imag() - mean.imag());
    }
    return std::sqrt(0.5 * (vr + vi) / (n - 1.0));
}

inline std::vector<std::string> regime_warnings(const CorrelatorConfig& cfg) {
    std::vector<std::string> w;
    for (double g : cfg.gamma_over_d) {
        const double dx = delta_x_for_gamma(g, cfg.ensemble);
        if (g > 10.0 || dx > 0.3)
            w.push_back("gamma/d = " + std::to_string(g) + " at N = " + std::to_string(cfg.ensemble.n) +
                        " gives (X - X')^2 = " + std::to_string(dx * dx) +
                        ", outside the first-order regime (X - X')^2 = O(1/N)");
    }
    return w;
}

inline CorrelatorGrid run(const CorrelatorConfig& cfg, PairSource source) {
    cfg.validate();
    const Layout lay{cfg.epsilon_over_d.size(), cfg.gamma_over_d.size(), cfg.resolved_energy_points()};
    const double d = mean_level_spacing(cfg.ensemble);
    const auto records = collect(cfg, source);

    CorrelatorGrid grid;
    grid.epsilon_over_d = cfg.epsilon_over_d;
    grid.gamma_over_d = cfg.gamma_over_d;
    grid.config = cfg;
    grid.energy_points = lay.n_energy;
    grid.warnings = regime_warnings(cfg);
    grid.values = estimate(records, lay, nullptr, d);

    const auto weights = bootstrap_weights(cfg.samples, cfg.bootstrap_resamples, cfg.seed);
    std::vector<std::vector<std::complex<double>>> reps(lay.points());
    for (const auto& w : weights) {
        const auto v = estimate(records, lay, &w, d);
        for (std::size_t p = 0; p < lay.points(); ++p) reps[p].push_back(v[p]);
    }
    grid.std_err.resize(lay.points());
    for (std::size_t p = 0; p < lay.points(); ++p) grid.std_err[p] = component_std_err(reps[p]);
    return grid;
}

} // namespace detail

/// Connected correlator over the (eps/d, gamma/d) grid with bootstrap errors.
/// Each gamma is realised with dx = sqrt(pi gamma / (2N)) around the
/// midpoint; all gamma values share the same matrices (paired seeds).
inline CorrelatorGrid estimate_k(const CorrelatorConfig& cfg) {
    return detail::run(cfg, detail::PairSource::parametric);
}

/// Ordinary two-point estimator from single ensemble draws, using the
/// same seeds as the first matrix of the parametric pair.
inline CorrelatorGrid estimate_two_point(CorrelatorConfig cfg) {
    cfg.gamma_over_d = {0.0};
    return detail::run(cfg, detail::PairSource::single_matrix);
}

struct LinearizationReport {
    std::vector<double> epsilon_over_d;
    std::vector<double> gamma_over_d;
    std::vector<std::complex<double>> exact;
    std::vector<std::complex<double>> linearized;
    std::vector<std::complex<double>> difference; // exact - linearized
    std::vector<double> difference_err;           // paired bootstrap
    std::vector<double> estimate_err;             // bootstrap error of the exact estimate
    double max_pull = 0.0;                        // max |diff| / estimate_err
    double relative_norm = 0.0;                   // ||diff|| / ||exact||
};

/// Exact family against its first-order expansion on identical matrices.
inline LinearizationReport compare_exact_vs_linearized(CorrelatorConfig cfg) {
    cfg.validate();
    const detail::Layout lay{cfg.epsilon_over_d.size(), cfg.gamma_over_d.size(), cfg.resolved_energy_points()};
    const double d = mean_level_spacing(cfg.ensemble);
    cfg.mode = FamilyMode::exact;
    const auto rec_exact = detail::collect(cfg, detail::PairSource::parametric);
    cfg.mode = FamilyMode::linearized;
    const auto rec_lin = detail::collect(cfg, detail::PairSource::parametric);

    LinearizationReport rep;
    rep.epsilon_over_d = cfg.epsilon_over_d;
    rep.gamma_over_d = cfg.gamma_over_d;
    rep.exact = detail::estimate(rec_exact, lay, nullptr, d);
    rep.linearized = detail::estimate(rec_lin, lay, nullptr, d);
    rep.difference.resize(lay.points());
    for (std::size_t p = 0; p < lay.points(); ++p) rep.difference[p] = rep.exact[p] - rep.linearized[p];

    std::vector<std::vector<std::complex<double>>> rep_diff(lay.points()), rep_exact(lay.points());
    for (const auto& w : detail::bootstrap_weights(cfg.samples, cfg.bootstrap_resamples, cfg.seed)) {
        const auto a = detail::estimate(rec_exact, lay, &w, d);
        const auto b = detail::estimate(rec_lin, lay, &w, d);
        for (std::size_t p = 0; p < lay.points(); ++p) {
            rep_diff[p].push_back(a[p] - b[p]);
            rep_exact[p].push_back(a[p]);
        }
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t p = 0; p < lay.points(); ++p) {
        rep.difference_err.push_back(detail::component_std_err(rep_diff[p]));
        rep.estimate_err.push_back(detail::component_std_err(rep_exact[p]));
        rep.max_pull = std::max(rep.max_pull, std::abs(rep.difference[p]) / rep.estimate_err.back());
        num += std::norm(rep.difference[p]);
        den += std::norm(rep.exact[p]);
    }
    rep.relative_norm = den > 0.0 ? std::sqrt(num / den) : 0.0;
    return rep;
}

struct ProfilePoint {
    double gamma_over_d = 0.0;
    double magnitude = 0.0; // |k_c|
    double error = 0.0;     // bootstrap std of |k_c|
};

/// |k_c| at one eps/d as a function of gamma/d.
inline std::vector<ProfilePoint> decorrelation_profile(CorrelatorConfig cfg, double epsilon_over_d) {
    cfg.epsilon_over_d = {epsilon_over_d};
    cfg.validate();
    const detail::Layout lay{1, cfg.gamma_over_d.size(), cfg.resolved_energy_points()};
    const double d = mean_level_spacing(cfg.ensemble);
    const auto recs = detail::collect(cfg, detail::PairSource::parametric);
    const auto central = detail::estimate(recs, lay, nullptr, d);

    std::vector<std::vector<double>> reps(lay.n_gamma);
    for (const auto& w : detail::bootstrap_weights(cfg.samples, cfg.bootstrap_resamples, cfg.seed)) {
        const auto v = detail::estimate(recs, lay, &w, d);
        for (std::size_t g = 0; g < lay.n_gamma; ++g) reps[g].push_back(std::abs(v[g]));
    }
    std::vector<ProfilePoint> out;
    for (std::size_t g = 0; g < lay.n_gamma; ++g) {
        double mean = 0.0;
        for (double x : reps[g]) mean += x;
        mean /= static_cast<double>(reps[g].size());
        double var = 0.0;
        for (double x : reps[g]) var += (x - mean) * (x - mean);
        var /= static_cast<double>(reps[g].size() - 1);
        out.push_back({cfg.gamma_over_d[g], std::abs(central[g]), std::sqrt(var)});
    }
    return out;
}

} // namespace parlev
