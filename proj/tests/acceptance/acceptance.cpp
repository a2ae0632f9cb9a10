// Acceptance checks. Usage: parlev_acceptance <criterion 1..9>
// Prints one PASS/FAIL line (details indented below it) and exits nonzero on FAIL.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "parlev/parlev.hpp"

using namespace parlev;

namespace {

struct Outcome {
    bool pass = false;
    std::string summary;
    std::vector<std::string> details;
};

template <class... A>
std::string fmt(const char* f, A... a) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

constexpr double eps = std::numeric_limits<double>::epsilon();

EnsembleMatrix draw(const EnsembleSpec& spec, std::uint64_t seed, Stream stream, std::uint64_t index) {
    Engine e = make_engine(seed, stream, index);
    return sample(spec, e);
}

Outcome ensemble_statistics() {
    const auto t0 = std::chrono::steady_clock::now();
    const EnsembleSpec spec{SymmetryClass::GOE, 200, 1.0};
    const int realisations = 200;
    const std::vector<double> edges{-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> counts(edges.size() - 1, 0.0);
    double s2 = 0.0;
    std::size_t off = 0;
    double spacing_sum = 0.0;
    for (int k = 0; k < realisations; ++k) {
        const auto h = draw(spec, 2024, Stream::first_matrix, static_cast<std::uint64_t>(k));
        const auto& m = std::get<RealMatrix>(h);
        for (int i = 0; i < spec.n; ++i)
            for (int j = i + 1; j < spec.n; ++j) s2 += m(i, j) * m(i, j), ++off;
        const auto s = eigenvalues(h, {spec, static_cast<std::uint64_t>(k), 0.0});
        for (double e : s.eigenvalues)
            for (std::size_t b = 0; b + 1 < edges.size(); ++b)
                if (e >= edges[b] && e < edges[b + 1]) counts[b] += 1.0;
        const auto w = central_window(s, 0.1);
        if (w && w->size() > 1)
            spacing_sum += (s.eigenvalues[w->last - 1] - s.eigenvalues[w->first]) / static_cast<double>(w->size() - 1);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    Outcome o;
    const double var = s2 / static_cast<double>(off);
    const double var_dev = std::abs(var * spec.n - 1.0);
    // Expected number of levels below e.
    auto below = [&](double e) { return 0.5 * spec.n + std::copysign(0.5, e) * semicircle_count(e, spec); };
    double worst_bin = 0.0;
    for (std::size_t b = 0; b < counts.size(); ++b) {
        const double expect = realisations * (below(edges[b + 1]) - below(edges[b]));
        worst_bin = std::max(worst_bin, std::abs(counts[b] / expect - 1.0));
    }
    const double spacing = spacing_sum / realisations;
    const double sp_dev = std::abs(spacing / mean_level_spacing(spec) - 1.0);
    o.pass = var_dev < 0.05 && worst_bin < 0.05 && sp_dev < 0.05 && seconds < 60.0;
    o.summary = fmt("off-diagonal variance %.4f of lambda^2/N, worst central bin %.2f%%, central spacing %.4f of d, %.1f s",
                    var * spec.n, 100 * worst_bin, spacing / mean_level_spacing(spec), seconds);
    for (std::size_t b = 0; b < counts.size(); ++b)
        o.details.push_back(fmt("bin [%+.2f, %+.2f): %.0f levels", edges[b], edges[b + 1], counts[b]));
    return o;
}

Outcome linear_response() {
    const EnsembleSpec spec{SymmetryClass::GOE, 8, 1.0};
    const int draws = 10000;
    struct Acc {
        double sxy = 0, sxx = 0, syy = 0;
    } diag, offd;
    for (int k = 0; k < draws; ++k) {
        const auto idx = static_cast<std::uint64_t>(k);
        const ParametricPair p{draw(spec, 77, Stream::first_matrix, idx),
                               draw(spec, 77, Stream::second_matrix, idx), 0.9, 0.5};
        const auto lin = linearize(p);
        const auto& h0 = std::get<RealMatrix>(lin.h0);
        const auto& v = std::get<RealMatrix>(lin.v);
        // <(H0)_{mu nu} V_{nu mu}> for an off-diagonal and a diagonal pair.
        offd.sxy += h0(0, 1) * v(1, 0), offd.sxx += h0(0, 1) * h0(0, 1), offd.syy += v(1, 0) * v(1, 0);
        diag.sxy += h0(2, 2) * v(2, 2), diag.sxx += h0(2, 2) * h0(2, 2), diag.syy += v(2, 2) * v(2, 2);
    }
    auto z = [&](const Acc& a) {
        const double n = draws;
        return std::abs(a.sxy / n) / std::sqrt((a.sxx / n) * (a.syy / n) / n);
    };

    const EnsembleSpec big{SymmetryClass::GOE, 60, 1.0};
    const ParametricPair base{draw(big, 5, Stream::first_matrix, 0),
                              draw(big, 5, Stream::second_matrix, 0), 0.0, 0.0};
    std::vector<double> c;
    for (double dx : {1e-1, 1e-2, 1e-3}) {
        ParametricPair p = base;
        p.x = 0.3 + dx / 2;
        p.x_prime = 0.3 - dx / 2;
        const auto lin = linearize(p);
        const auto r = detail::combine(1.0, build_h(p, p.x), -1.0, reconstruct(lin, +1));
        const double rem = std::visit([](const auto& m) { return m.norm(); }, r);
        const double h0 = std::visit([](const auto& m) { return m.norm(); }, lin.h0);
        c.push_back(rem / h0 / (dx * dx));
    }
    const double spread = std::max({c[0], c[1], c[2]}) / std::min({c[0], c[1], c[2]}) - 1.0;
    Outcome o;
    o.pass = z(offd) < 4.0 && z(diag) < 4.0 && spread < 0.05;
    o.summary = fmt("<H0 V> at %.2f sigma (off-diagonal), %.2f sigma (diagonal); remainder/dx^2 spread %.2f%%",
                    z(offd), z(diag), 100 * spread);
    o.details.push_back(fmt("remainder/dx^2 = %.6f, %.6f, %.6f for dx = 1e-1, 1e-2, 1e-3", c[0], c[1], c[2]));
    return o;
}

Outcome spreading_width_identity() {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> n(2, 5000);
    std::uniform_real_distribution<double> lam(0.01, 10.0), dx(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const EnsembleSpec s{k % 2 ? SymmetryClass::GUE : SymmetryClass::GOE, n(rng), lam(rng)};
        const double x = dx(rng);
        const double a = gamma_over_d(x, s);
        const double b = spreading_width(x, s) / mean_level_spacing(s);
        if (a > 0.0) worst = std::max(worst, std::abs(a - b) / a);
    }
    const double ref = gamma_over_d(std::sqrt(std::numbers::pi / 200.0), {SymmetryClass::GOE, 100, 1.0});
    Outcome o;
    o.pass = worst <= 4 * eps && std::abs(ref - 1.0) <= 2 * eps;
    o.summary = fmt("max relative |gamma/d - width/spacing| = %.2e over 1e4 draws; gamma/d(N=100, dx=sqrt(pi/200)) - 1 = %.1e",
                    worst, ref - 1.0);
    return o;
}

Outcome supermatrix_identities() {
    Engine e = make_engine(2025, Stream::surrogate, 0);
    double worst_term = 0.0;
    bool term_ok = true;
    for (int k = 0; k < 100; ++k) {
        const EnsembleSpec spec{SymmetryClass::GOE, 50 + 10 * (k % 16), 1.0};
        const double energy = -1.5 + 0.03 * k;
        const auto sigma = saddle_surrogate(energy, 1.0, 8, e);
        const auto chk = verify_symmetry_breaking_term(spec, 0.01 + 0.002 * k, sigma);
        worst_term = std::max(worst_term, chk.residual / std::max(1.0, std::abs(chk.lhs)));
        term_ok = term_ok && chk.passed() && std::abs(chk.trg_sigma_squared) < 1e-12;
    }

    StandardNormal normal;
    double worst_comm = 0.0;
    for (int k = 0; k < 100; ++k)
        for (auto c : {BreakingCase::goe_goe, BreakingCase::gue_gue, BreakingCase::goe_to_gue}) {
            const auto t = build_t_matrix(c);
            ComplexMatrix m(t.dim(), t.dim());
            for (int i = 0; i < t.dim(); ++i)
                for (int j = 0; j < t.dim(); ++j) m(i, j) = {normal(e), normal(e)};
            const SuperMatrix s{m, t.grading()};
            const auto st = s * t;
            const auto lhs = parametric_correlator_s(s, t);
            const auto rhs = 2.0 * supertrace(st * st) - 2.0 * supertrace(s * s);
            worst_comm = std::max(worst_comm, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }

    bool diag_zero = true;
    std::string cases;
    for (auto c : all_breaking_cases) {
        const auto t = build_t_matrix(c);
        for (double en : {-1.0, 0.0, 0.6}) diag_zero = diag_zero && parametric_correlator_s(saddle_sigma(en, 1.0, t.dim()), t) == 0.0;
        cases += std::string(case_label(c)) + " ";
    }
    Outcome o;
    o.pass = term_ok && worst_term < 1e-12 && worst_comm < 64 * eps && diag_zero;
    o.summary = fmt("symmetry-breaking term residual %.1e on 100 surrogates, commutator identity %.1e, "
                    "S(diagonal saddle, T) = 0 for cases %s: %s",
                    worst_term, worst_comm, cases.c_str(), diag_zero ? "yes" : "no");
    return o;
}

CorrelatorConfig headline_config(std::vector<double> gammas) {
    CorrelatorConfig c;
    c.ensemble = {SymmetryClass::GOE, 200, 1.0};
    c.epsilon_over_d.clear();
    for (int i = 0; i < 10; ++i) c.epsilon_over_d.push_back(0.1 + (3.0 - 0.1) * i / 9.0);
    c.gamma_over_d = std::move(gammas);
    c.samples = 500;
    c.eta_over_d = 0.5;
    c.window_fraction = 0.2;
    c.seed = 20240611;
    return c;
}

Outcome analytic_vs_monte_carlo() {
    const auto cfg = headline_config({0.5, 1.0, 2.0});
    const auto mc = estimate_k(cfg);
    std::vector<GridPoint> ref;
    std::vector<std::complex<double>> an;
    for (std::size_t e = 0; e < mc.epsilon_over_d.size(); ++e)
        for (std::size_t g = 0; g < mc.gamma_over_d.size(); ++g) {
            const double r = mc.epsilon_over_d[e];
            const double gam = mc.gamma_over_d[g];
            ref.push_back({r, gam, mc.value(e, g), mc.error(e, g)});
            an.push_back(k_estimator_convention({r, gam, 2.0 * cfg.eta_over_d}).value);
        }
    const auto rep = compare_grids(ref, an, 1.0);
    const double c = rep.calibration.constant;
    bool validated = true;
    Outcome o;
    for (const auto& [g, s] : rep.per_gamma) {
        const double combined = std::hypot(s.own_fit.error, rep.calibration.error);
        const bool ok = std::abs(s.own_fit.constant - c) <= 3.0 * combined;
        if (g != 1.0) validated = validated && ok;
        o.details.push_back(fmt("gamma/d = %.1f: own C = %.4f +- %.4f, nrms %.3f, max pull %.2f", g, s.own_fit.constant,
                                s.own_fit.error, s.normalized_rms, s.max_pull));
    }
    for (const auto& row : rep.rows)
        o.details.push_back(fmt("r = %.3f gamma = %.1f: MC %+.4f%+.4fi +- %.4f, C*K %+.4f%+.4fi", row.r, row.gamma,
                                row.reference.real(), row.reference.imag(), row.sigma, c * row.analytic.real(),
                                c * row.analytic.imag()));
    o.pass = rep.normalized_rms < 0.10 && rep.max_pull <= 3.0 && validated;
    o.summary = fmt("C = %.4f +- %.4f (fit at gamma/d = 1), normalized RMS %.3f, max pull %.2f, cross-gamma validation %s",
                    c, rep.calibration.error, rep.normalized_rms, rep.max_pull, validated ? "ok" : "failed");
    return o;
}

Outcome decorrelation() {
    auto cfg = headline_config({0.0, 0.5, 1.0, 2.0, 4.0});
    const auto prof = decorrelation_profile(cfg, 0.0);
    bool monotone = true;
    Outcome o;
    for (std::size_t i = 0; i < prof.size(); ++i) {
        o.details.push_back(fmt("gamma/d = %.1f: |k_c| = %.4f +- %.4f", prof[i].gamma_over_d, prof[i].magnitude, prof[i].error));
        if (i > 0) {
            const double rise = prof[i].magnitude - prof[i - 1].magnitude;
            monotone = monotone && rise < 2.0 * std::hypot(prof[i].error, prof[i - 1].error);
        }
    }
    const double ratio = prof.back().magnitude / prof.front().magnitude;
    o.pass = monotone && ratio < 0.25;
    o.summary = fmt("|k_c(eps=0)| monotone within errors: %s; |k_c(gamma/d=4)| / |k_c(0)| = %.3f", monotone ? "yes" : "no",
                    ratio);
    return o;
}

Outcome zero_offset_limit() {
    bool all = true;
    int checked = 0;
    for (auto cls : {SymmetryClass::GOE, SymmetryClass::GUE})
        for (auto mode : {FamilyMode::exact, FamilyMode::linearized}) {
            CorrelatorConfig c;
            c.ensemble = {cls, 100, 1.0};
            c.epsilon_over_d = {0.0, 0.5, 1.0, 2.0};
            c.gamma_over_d = {0.0};
            c.samples = 40;
            c.bootstrap_resamples = 50;
            c.mode = mode;
            c.seed = 99;
            all = all && io::correlator_csv(estimate_k(c)) == io::correlator_csv(estimate_two_point(c));
            ++checked;
        }
    Outcome o;
    o.pass = all;
    o.summary = fmt("dx = 0 parametric output bitwise equal to two-point output in %d/4 configurations", all ? checked : 0);
    return o;
}

Outcome quadrature_convergence() {
    std::vector<KernelParams> pts;
    for (double g : {0.0, 0.5, 1.0, 2.0})
        for (int i = 0; i < 10; ++i) pts.push_back({0.1 + 2.9 * i / 9.0, g, 1.0});
    const QuadratureSpec base{};
    const auto tight = base.tightened(10.0);
    double worst = 0.0;
    bool ok = true;
    for (const auto& p : pts) {
        const auto a = k_analytic(p, base);
        const auto b = k_analytic(p, tight);
        const double change = std::abs(a.value - b.value);
        ok = ok && change < a.error;
        worst = std::max(worst, change / a.error);
    }
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 50.0), l(0.0, 1.0), r(-3.0, 3.0), gam(0.0, 4.0);
    bool symmetric = true;
    for (int k = 0; k < 10000; ++k) {
        const double l1 = u(rng), l2 = u(rng), ll = l(rng);
        const KernelParams p{r(rng), gam(rng), 1.0};
        symmetric = symmetric && vwz_integrand(l1, l2, ll, p) == vwz_integrand(l2, l1, ll, p);
    }
    Outcome o;
    o.pass = ok && symmetric;
    o.summary = fmt("tightening tolerances 10x moves every value by at most %.3g of its error estimate (%zu points); "
                    "integrand lambda1<->lambda2 symmetric: %s",
                    worst, pts.size(), symmetric ? "exact" : "no");
    return o;
}

Outcome reproducibility() {
    bool ok = true;
    int runs = 0;
    for (auto cls : {SymmetryClass::GOE, SymmetryClass::GUE})
        for (auto mode : {FamilyMode::exact, FamilyMode::linearized}) {
            CorrelatorConfig c;
            c.ensemble = {cls, 60, 1.0};
            c.epsilon_over_d = {0.0, 1.0, 2.5};
            c.gamma_over_d = {0.0, 0.7, 2.0};
            c.samples = 30;
            c.bootstrap_resamples = 40;
            c.mode = mode;
            c.seed = 424242;
            const auto first = io::correlator_csv(estimate_k(c));
            c.threads = 4;
            ok = ok && first == io::correlator_csv(estimate_k(c));
            ++runs;
        }
    auto analytic = [] {
        std::vector<io::AnalyticPoint> pts;
        for (double r : {0.3, 1.7})
            for (double g : {0.5, 2.0}) {
                const auto k = k_estimator_convention({r, g, 1.0});
                pts.push_back({r, g, k.value, k.error});
            }
        return io::analytic_csv(pts);
    };
    ok = ok && analytic() == analytic();
    Outcome o;
    o.pass = ok;
    o.summary = fmt("repeated runs (1 vs 4 threads, %d correlator configs, analytic grid) give bitwise-identical CSV: %s",
                    runs, ok ? "yes" : "no");
    return o;
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"GOE ensemble statistics", ensemble_statistics},
        {"linear-response decomposition", linear_response},
        {"spreading width over spacing", spreading_width_identity},
        {"supermatrix identities", supermatrix_identities},
        {"analytic kernel vs Monte Carlo", analytic_vs_monte_carlo},
        {"parametric decorrelation", decorrelation},
        {"zero-offset limit", zero_offset_limit},
        {"kernel quadrature", quadrature_convergence},
        {"reproducibility", reproducibility},
    };
    const int n = argc > 1 ? std::atoi(argv[1]) : 0;
    if (n < 1 || n > static_cast<int>(criteria.size())) {
        std::fprintf(stderr, "usage: %s <criterion 1..%zu>\n", argv[0], criteria.size());
        return 2;
    }
    const auto& [name, run] = criteria[static_cast<std::size_t>(n - 1)];
    Outcome o;
    try {
        o = run();
    } catch (const std::exception& ex) {
        o.pass = false;
        o.summary = std::string("exception: ") + ex.what();
    }
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", n, name, o.summary.c_str());
    for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
    return o.pass ? 0 : 1;
}
