// parlev: command-line front end.
//
//   parlev sample    --class GOE --n 50 --samples 10
//   parlev correlate --n 200 --samples 500 --eps 0,0.5,1 --gamma 0,1
//   parlev analytic  --r 0.1,1,2 --gamma 0.5,1 --regulator 1
//   parlev compare   --mc out/correlator.csv --analytic out/analytic.csv
//   parlev symbreak
//
// Options may also come from a TOML file (--config); subcommand keys live
// in a section named after the subcommand. Command-line flags win.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "parlev/parlev.hpp"

namespace {

using parlev::io::json;
namespace fs = std::filesystem;

enum Exit : int { ok = 0, failure = 1, config_error = 2, convergence_error = 3, io_error = 4, data_mismatch = 5 };

struct Global {
    std::string config;
    std::uint64_t seed = 1;
    std::string out = "out";
    unsigned threads = 1;
    bool reproducible = false;
};

struct EnsembleOpts {
    std::string cls = "GOE";
    int n = 200;
    double lambda = 1.0;

    parlev::EnsembleSpec spec() const {
        parlev::EnsembleSpec s{parlev::parse_symmetry_class(cls), n, lambda};
        s.validate();
        return s;
    }
};

void add_ensemble(CLI::App* app, EnsembleOpts& e) {
    app->add_option("--class", e.cls, "GOE or GUE")->capture_default_str();
    app->add_option("--n", e.n, "matrix dimension N")->capture_default_str();
    app->add_option("--lambda", e.lambda, "energy scale (semicircle radius 2 lambda)")->capture_default_str();
}

json base_json(const Global& g) {
    return {{"seed", g.seed}, {"threads", g.threads}, {"reproducible", g.reproducible}};
}

void write_pair(const fs::path& csv, const std::string& body, const json& config, std::uint64_t seed) {
    parlev::io::atomic_write(csv, body);
    parlev::io::atomic_write(parlev::io::sidecar_path(csv), parlev::io::metadata(config, seed).dump(2) + "\n");
    std::cerr << "wrote " << csv.string() << '\n';
}

// ---------------------------------------------------------------- sample

struct SampleOpts {
    EnsembleOpts ens;
    std::size_t samples = 10;
    bool matrices = false;
};

int run_sample(const Global& g, const SampleOpts& o) {
    const auto spec = o.ens.spec();
    if (o.samples == 0) throw parlev::ParameterError("sample: --samples must be positive");
    std::ostringstream os;
    os << parlev::io::spectra_schema << '\n' << "seed,x";
    for (int i = 1; i <= spec.n; ++i) os << ",e" << i;
    os << '\n' << std::setprecision(17);
    const fs::path dir(g.out);
    for (std::size_t s = 0; s < o.samples; ++s) {
        const std::uint64_t seed = parlev::derive_seed(g.seed, parlev::Stream::first_matrix, s);
        parlev::Engine engine = parlev::make_engine(g.seed, parlev::Stream::first_matrix, s);
        const auto h = parlev::sample(spec, engine);
        parlev::write_spectrum_row(os, parlev::eigenvalues(h, {spec, seed, 0.0}));
        if (o.matrices) {
            std::ostringstream ms;
            ms << std::setprecision(17);
            parlev::write_matrix_csv(ms, h, spec, seed);
            parlev::io::atomic_write(dir / ("matrix_" + std::to_string(s) + ".csv"), ms.str());
        }
    }
    json cfg = base_json(g);
    cfg["subcommand"] = "sample";
    cfg["ensemble"] = parlev::io::to_json(spec);
    cfg["samples"] = o.samples;
    write_pair(dir / "spectra.csv", os.str(), cfg, g.seed);
    return ok;
}

// ---------------------------------------------------------------- correlate

struct CorrelateOpts {
    EnsembleOpts ens;
    std::size_t samples = 500;
    std::vector<double> eps{0.0, 0.5, 1.0, 1.5, 2.0, 3.0};
    std::vector<double> gamma{0.0, 0.5, 1.0, 2.0};
    double eta = 0.5;
    double window_fraction = 0.2;
    std::size_t energy_points = 0;
    std::string mode = "exact";
    double midpoint = 0.0;
    std::size_t bootstrap = 200;
    bool plot = false;
};

std::string correlator_svg(const parlev::CorrelatorGrid& grid) {
    std::vector<parlev::plot::Series> series;
    for (std::size_t k = 0; k < grid.gamma_over_d.size(); ++k) {
        parlev::plot::Series re{"Re, g=" + parlev::io::format_double(grid.gamma_over_d[k]), grid.epsilon_over_d, {}};
        parlev::plot::Series im{"Im, g=" + parlev::io::format_double(grid.gamma_over_d[k]), grid.epsilon_over_d, {}};
        for (std::size_t e = 0; e < grid.epsilon_over_d.size(); ++e) {
            re.y.push_back(grid.value(e, k).real());
            im.y.push_back(grid.value(e, k).imag());
        }
        series.push_back(std::move(re));
        series.push_back(std::move(im));
    }
    return parlev::plot::render(series, "connected correlator d^2 k_c", "eps / d", "d^2 k_c");
}

int run_correlate(const Global& g, const CorrelateOpts& o) {
    parlev::CorrelatorConfig c;
    c.ensemble = o.ens.spec();
    c.epsilon_over_d = o.eps;
    c.gamma_over_d = o.gamma;
    c.eta_over_d = o.eta;
    c.window_fraction = o.window_fraction;
    c.energy_points = o.energy_points;
    c.samples = o.samples;
    c.seed = g.seed;
    c.mode = parlev::parse_family_mode(o.mode);
    c.midpoint = o.midpoint;
    c.bootstrap_resamples = o.bootstrap;
    c.threads = g.threads;
    c.validate();

    const auto grid = parlev::estimate_k(c);
    for (const auto& w : grid.warnings) std::cerr << "warning: " << w << '\n';

    json cfg = base_json(g);
    cfg["subcommand"] = "correlate";
    cfg["correlator"] = parlev::io::to_json(c);
    cfg["regulator"] = 2.0 * c.eta_over_d;
    cfg["warnings"] = grid.warnings;
    const fs::path dir(g.out);
    write_pair(dir / "correlator.csv", parlev::io::correlator_csv(grid), cfg, g.seed);
    if (o.plot) parlev::io::atomic_write(dir / "correlator.svg", correlator_svg(grid));
    return ok;
}

// ---------------------------------------------------------------- analytic

struct AnalyticOpts {
    std::vector<double> r{0.1, 0.5, 1.0, 1.5, 2.0, 3.0};
    std::vector<double> gamma{0.5, 1.0, 2.0};
    double regulator = 1.0;
    double rel_tol = 1e-6;
    double abs_tol = 1e-12;
    std::size_t max_intervals = 4000;
    bool raw = false;
    bool check_conjugation = false;
    bool plot = false;
};

int run_analytic(const Global& g, const AnalyticOpts& o) {
    const parlev::QuadratureSpec quad{o.rel_tol, o.abs_tol, o.max_intervals};
    std::vector<parlev::io::AnalyticPoint> pts;
    json failures = json::array();
    double worst_conjugation = 0.0;
    for (double r : o.r)
        for (double gm : o.gamma) {
            const parlev::KernelParams p{r, gm, o.regulator};
            p.validate();
            parlev::io::AnalyticPoint pt{r, gm, {}, 0.0};
            try {
                const auto v = o.raw ? parlev::k_analytic(p, quad) : parlev::k_estimator_convention(p, quad);
                pt.value = v.value;
                pt.quad_error = v.error;
                if (o.check_conjugation) {
                    const auto mirror = o.raw ? parlev::k_estimator_convention(p, quad) : parlev::k_analytic(p, quad);
                    const double dev = std::abs(mirror.value - std::conj(v.value));
                    worst_conjugation = std::max(worst_conjugation, dev / std::max(v.error + mirror.error, 1e-300));
                }
            } catch (const parlev::ConvergenceError& e) {
                pt.value = e.partial();
                pt.quad_error = e.error_estimate();
                failures.push_back({{"r", r}, {"gamma", gm}, {"message", e.what()}});
                std::cerr << "convergence failure: " << e.what() << '\n';
            }
            pts.push_back(pt);
        }

    json cfg = base_json(g);
    cfg["subcommand"] = "analytic";
    cfg["r_grid"] = o.r;
    cfg["gamma_grid"] = o.gamma;
    cfg["regulator"] = o.regulator;
    cfg["convention"] = o.raw ? "formula" : "estimator";
    cfg["quadrature"] = {{"rel_tol", o.rel_tol}, {"abs_tol", o.abs_tol}, {"max_intervals", o.max_intervals}};
    cfg["convergence_failures"] = failures;
    if (o.check_conjugation) {
        cfg["conjugation_check"] = {{"worst_deviation_in_errors", worst_conjugation},
                                    {"passed", worst_conjugation <= 1.0}};
        std::cout << "conjugation symmetry " << (worst_conjugation <= 1.0 ? "PASS" : "FAIL")
                  << " (worst deviation " << worst_conjugation << " x quadrature error)\n";
    }
    const fs::path dir(g.out);
    write_pair(dir / "analytic.csv", parlev::io::analytic_csv(pts), cfg, g.seed);
    if (o.plot) {
        std::vector<parlev::plot::Series> series;
        for (double gm : o.gamma) {
            parlev::plot::Series re{"Re, g=" + parlev::io::format_double(gm), {}, {}};
            parlev::plot::Series im{"Im, g=" + parlev::io::format_double(gm), {}, {}};
            for (const auto& p : pts)
                if (p.gamma == gm) {
                    re.x.push_back(p.r), re.y.push_back(p.value.real());
                    im.x.push_back(p.r), im.y.push_back(p.value.imag());
                }
            series.push_back(std::move(re));
            series.push_back(std::move(im));
        }
        parlev::io::atomic_write(dir / "analytic.svg", parlev::plot::render(series, "analytic kernel", "r", "K"));
    }
    if (o.check_conjugation && worst_conjugation > 1.0) return data_mismatch;
    return failures.empty() ? ok : convergence_error;
}

// ---------------------------------------------------------------- compare

struct CompareOpts {
    std::string mc;
    std::string analytic;
    double calibration_gamma = -1.0;
    bool skip_metadata_check = false;
};

std::optional<double> sidecar_number(const json& meta, std::initializer_list<const char*> path) {
    const json* node = &meta;
    for (const char* key : path) {
        if (!node->is_object() || !node->contains(key)) return std::nullopt;
        node = &(*node)[key];
    }
    if (!node->is_number()) return std::nullopt;
    return node->get<double>();
}

int run_compare(const Global& g, const CompareOpts& o) {
    const fs::path mc_path(o.mc), an_path(o.analytic);
    const auto mc = parlev::io::read_grid_points(mc_path);
    const auto an = parlev::io::read_grid_points(an_path);

    if (!o.skip_metadata_check) {
        const auto mc_meta = parlev::io::read_json(parlev::io::sidecar_path(mc_path));
        const auto an_meta = parlev::io::read_json(parlev::io::sidecar_path(an_path));
        const auto eta = sidecar_number(mc_meta, {"config", "correlator", "eta_over_d"});
        const auto reg = sidecar_number(an_meta, {"config", "regulator"});
        if (!eta || !reg) throw parlev::StructuralError("compare: sidecar lacks eta_over_d or regulator");
        if (std::abs(*reg - 2.0 * *eta) > 1e-12)
            throw parlev::StructuralError("compare: analytic regulator " + parlev::io::format_double(*reg) +
                                          " does not match the Monte Carlo smoothing 2 eta/d = " +
                                          parlev::io::format_double(2.0 * *eta));
        if (an_meta["config"].value("convention", "") != "estimator")
            throw parlev::StructuralError("compare: analytic file must use the estimator convention");
    }

    std::map<std::pair<double, double>, std::complex<double>> lookup;
    for (const auto& p : an) lookup[{p.r, p.gamma}] = p.value;
    std::vector<parlev::GridPoint> ref;
    std::vector<std::complex<double>> analytic;
    for (const auto& p : mc) {
        const auto it = lookup.find({p.r, p.gamma});
        if (it == lookup.end()) continue;
        ref.push_back(p);
        analytic.push_back(it->second);
    }
    if (ref.empty()) throw parlev::StructuralError("compare: the two grids share no (r, gamma) point");
    if (ref.size() != an.size())
        std::cerr << "note: " << an.size() - ref.size() << " analytic points have no Monte Carlo partner\n";

    std::optional<double> cal_gamma;
    if (o.calibration_gamma >= 0.0) cal_gamma = o.calibration_gamma;
    const auto rep = parlev::compare_grids(ref, analytic, cal_gamma);

    std::ostringstream table;
    table << std::fixed << std::setprecision(4);
    table << "C = " << rep.calibration.constant << " +- " << rep.calibration.error << "  (chi2 "
          << rep.calibration.chi2 << ", " << rep.calibration.points << " points"
          << (cal_gamma ? ", fitted at gamma " + parlev::io::format_double(*cal_gamma) : std::string()) << ")\n";
    table << "normalized RMS " << rep.normalized_rms << ", max |pull| " << rep.max_pull << "\n\n";
    table << std::setw(8) << "r" << std::setw(8) << "gamma" << std::setw(11) << "Re mc" << std::setw(11) << "Im mc"
          << std::setw(11) << "Re C*a" << std::setw(11) << "Im C*a" << std::setw(9) << "sigma" << std::setw(9)
          << "pull re" << std::setw(9) << "pull im" << '\n';
    json rows = json::array();
    for (const auto& r : rep.rows) {
        const auto ca = rep.calibration.constant * r.analytic;
        table << std::setw(8) << r.r << std::setw(8) << r.gamma << std::setw(11) << r.reference.real() << std::setw(11)
              << r.reference.imag() << std::setw(11) << ca.real() << std::setw(11) << ca.imag() << std::setw(9)
              << r.sigma;
        if (r.pull_re)
            table << std::setw(9) << *r.pull_re << std::setw(9) << *r.pull_im;
        else
            table << std::setw(9) << "-" << std::setw(9) << "-";
        table << '\n';
        json row{{"r", r.r},          {"gamma", r.gamma},          {"mc", {r.reference.real(), r.reference.imag()}},
                 {"sigma", r.sigma},  {"in_fit", r.in_fit},        {"analytic", {r.analytic.real(), r.analytic.imag()}}};
        if (r.pull_re) row["pull"] = {*r.pull_re, *r.pull_im};
        rows.push_back(row);
    }
    table << "\nper gamma:\n";
    json per_gamma = json::array();
    for (const auto& [gm, s] : rep.per_gamma) {
        table << "  gamma " << gm << ": normalized RMS " << s.normalized_rms << ", max |pull| " << s.max_pull
              << ", own C " << s.own_fit.constant << " +- " << s.own_fit.error << '\n';
        per_gamma.push_back({{"gamma", gm},
                             {"normalized_rms", s.normalized_rms},
                             {"max_pull", s.max_pull},
                             {"own_constant", s.own_fit.constant},
                             {"own_constant_error", s.own_fit.error}});
    }
    std::cout << table.str();

    json report{{"calibration",
                 {{"constant", rep.calibration.constant},
                  {"error", rep.calibration.error},
                  {"chi2", rep.calibration.chi2},
                  {"points", rep.calibration.points}}},
                {"normalized_rms", rep.normalized_rms},
                {"max_pull", rep.max_pull},
                {"per_gamma", per_gamma},
                {"rows", rows}};
    if (cal_gamma) report["calibration"]["gamma"] = *cal_gamma;
    json cfg = base_json(g);
    cfg["subcommand"] = "compare";
    cfg["mc"] = o.mc;
    cfg["analytic"] = o.analytic;
    json out = parlev::io::metadata(cfg, g.seed);
    out["report"] = report;
    const fs::path dir(g.out);
    parlev::io::atomic_write(dir / "report.json", out.dump(2) + "\n");
    parlev::io::atomic_write(dir / "report.txt", table.str());
    std::cerr << "wrote " << (dir / "report.json").string() << '\n';
    return ok;
}

// ---------------------------------------------------------------- symbreak

struct SymbreakOpts {
    EnsembleOpts ens;
    std::size_t surrogates = 100;
    double delta_x = 0.1;
    double energy_fraction = 0.3; // saddle energies drawn from |E| < fraction * 2 lambda
};

json diagonal_json(const parlev::SuperMatrix& m) {
    json d = json::array();
    for (int i = 0; i < m.dim(); ++i) d.push_back(m(i, i).real());
    return d;
}

int run_symbreak(const Global& g, const SymbreakOpts& o) {
    auto spec = o.ens.spec();
    spec.symmetry_class = parlev::SymmetryClass::GOE;
    json catalog = json::array();
    bool all_pass = true;
    for (auto c : parlev::all_breaking_cases) {
        const auto t = parlev::build_t_matrix(c);
        const auto sigma = parlev::saddle_sigma(0.0, spec.lambda, t.dim());
        const auto s = parlev::parametric_correlator_s(sigma, t);
        const bool pass = std::abs(s) == 0.0;
        all_pass = all_pass && pass;
        catalog.push_back({{"case", std::string(parlev::case_label(c))},
                           {"description", std::string(parlev::case_description(c))},
                           {"t_diagonal", diagonal_json(t)},
                           {"grading", t.grading().signs()},
                           {"s_at_diagonal_saddle", {s.real(), s.imag()}},
                           {"passed", pass}});
    }

    parlev::Engine engine = parlev::make_engine(g.seed, parlev::Stream::surrogate, 0);
    boost::random::uniform_real_distribution<double> energy(-o.energy_fraction * 2.0 * spec.lambda,
                                                            o.energy_fraction * 2.0 * spec.lambda);
    double worst = 0.0;
    double worst_ratio = 0.0;
    double worst_identity = 0.0;
    std::size_t case_differs = 0;
    const auto l8 = parlev::retarded_advanced_l(8);
    for (std::size_t i = 0; i < o.surrogates; ++i) {
        const auto sigma = parlev::saddle_surrogate(energy(engine), spec.lambda, 8, engine);
        const auto chk = parlev::verify_symmetry_breaking_term(spec, o.delta_x, sigma);
        worst = std::max(worst, chk.residual);
        worst_ratio = std::max(worst_ratio, chk.residual / chk.tolerance);
        const auto sl = sigma * l8;
        const auto lhs = parlev::parametric_correlator_s(sigma, l8);
        const auto rhs = 2.0 * parlev::supertrace(sl * sl) - 2.0 * parlev::supertrace(sigma * sigma);
        worst_identity = std::max(worst_identity, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        const auto s3 = parlev::parametric_correlator_s(sigma, parlev::build_t_matrix(parlev::BreakingCase::goe_gue));
        const auto s4 = parlev::parametric_correlator_s(sigma, parlev::build_t_matrix(parlev::BreakingCase::goe_to_gue));
        if (std::abs(s3 - s4) > 1e-9 * std::max(1.0, std::abs(s3))) ++case_differs;
    }
    const bool eq_pass = worst_ratio <= 1.0;
    const bool id_pass = worst_identity <= 1e-12;
    all_pass = all_pass && eq_pass && id_pass;

    json report{{"catalog", catalog},
                {"symmetry_breaking_term",
                 {{"surrogates", o.surrogates},
                  {"delta_x", o.delta_x},
                  {"n", spec.n},
                  {"lambda", spec.lambda},
                  {"max_residual", worst},
                  {"max_residual_over_tolerance", worst_ratio},
                  {"passed", eq_pass}}},
                {"commutator_square_identity", {{"max_relative_residual", worst_identity}, {"passed", id_pass}}},
                {"case_iii_differs_from_iv", {{"surrogates_differing", case_differs}, {"of", o.surrogates}}},
                {"passed", all_pass}};
    json cfg = base_json(g);
    cfg["subcommand"] = "symbreak";
    cfg["ensemble"] = parlev::io::to_json(spec);
    cfg["surrogates"] = o.surrogates;
    cfg["delta_x"] = o.delta_x;
    json out = parlev::io::metadata(cfg, g.seed);
    out["report"] = report;
    std::cout << report.dump(2) << '\n';
    parlev::io::atomic_write(fs::path(g.out) / "symbreak.json", out.dump(2) + "\n");
    return all_pass ? ok : data_mismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"parlev: parametric level correlations in Gaussian random-matrix ensembles"};
    app.set_version_flag("--version", std::string(parlev::version));
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML run configuration; flags given on the command line take precedence");

    Global g;
    app.add_option("--seed", g.seed, "master seed")->capture_default_str();
    app.add_option("--out", g.out, "output directory")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_flag("--reproducible", g.reproducible,
                 "record reproducible mode in the metadata (reductions are always in fixed order)");

    SampleOpts so;
    auto* sample = app.add_subcommand("sample", "draw ensemble matrices and write their spectra");
    add_ensemble(sample, so.ens);
    sample->add_option("--samples", so.samples, "number of matrices")->capture_default_str();
    sample->add_flag("--matrices", so.matrices, "also dump each matrix as CSV");

    CorrelateOpts co;
    auto* correlate = app.add_subcommand("correlate", "Monte Carlo connected correlator over an (eps/d, gamma/d) grid");
    add_ensemble(correlate, co.ens);
    correlate->add_option("--samples", co.samples, "ensemble realisations")->capture_default_str();
    correlate->add_option("--eps", co.eps, "eps/d grid")->delimiter(',')->capture_default_str();
    correlate->add_option("--gamma", co.gamma, "Gamma/d grid")->delimiter(',')->capture_default_str();
    correlate->add_option("--eta", co.eta, "Lorentzian smoothing eta/d")->capture_default_str();
    correlate->add_option("--window-fraction", co.window_fraction, "centre window, fraction of 2 lambda")
        ->capture_default_str();
    correlate->add_option("--energy-points", co.energy_points, "centre energies (0: spacing d/2)")
        ->capture_default_str();
    correlate->add_option("--mode", co.mode, "exact or linearized")->capture_default_str();
    correlate->add_option("--midpoint", co.midpoint, "X0")->capture_default_str();
    correlate->add_option("--bootstrap", co.bootstrap, "bootstrap resamples")->capture_default_str();
    correlate->add_flag("--plot", co.plot, "write correlator.svg");

    AnalyticOpts ao;
    auto* analytic = app.add_subcommand("analytic", "evaluate the analytic kernel by adaptive quadrature");
    analytic->add_option("--r", ao.r, "r = eps/d grid")->delimiter(',')->capture_default_str();
    analytic->add_option("--gamma", ao.gamma, "Gamma/d grid")->delimiter(',')->capture_default_str();
    analytic->add_option("--regulator", ao.regulator, "imaginary shift of r; 2 eta/d to match the estimator")
        ->capture_default_str();
    analytic->add_option("--rel-tol", ao.rel_tol, "relative tolerance")->capture_default_str();
    analytic->add_option("--abs-tol", ao.abs_tol, "absolute tolerance")->capture_default_str();
    analytic->add_option("--max-intervals", ao.max_intervals, "panel budget per 1-D integral")->capture_default_str();
    analytic->add_flag("--raw", ao.raw, "use the sign of the formula instead of the estimator convention");
    analytic->add_flag("--check-conjugation", ao.check_conjugation, "verify K(-r) = conj K(r) on the grid");
    analytic->add_flag("--plot", ao.plot, "write analytic.svg");

    CompareOpts cmp;
    auto* compare = app.add_subcommand("compare", "calibrate the kernel against a Monte Carlo grid");
    compare->add_option("--mc", cmp.mc, "correlator CSV")->required();
    compare->add_option("--analytic", cmp.analytic, "analytic CSV")->required();
    compare->add_option("--calibration-gamma", cmp.calibration_gamma, "fit C on this gamma only (default: all)");
    compare->add_flag("--skip-metadata-check", cmp.skip_metadata_check, "do not compare eta and regulator sidecars");

    SymbreakOpts sb;
    auto* symbreak = app.add_subcommand("symbreak", "symmetry-breaking catalogue and supertrace identity checks");
    add_ensemble(symbreak, sb.ens);
    symbreak->add_option("--surrogates", sb.surrogates, "random saddle-manifold points")->capture_default_str();
    symbreak->add_option("--delta-x", sb.delta_x, "parameter offset X - X'")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (*sample) return run_sample(g, so);
        if (*correlate) return run_correlate(g, co);
        if (*analytic) return run_analytic(g, ao);
        if (*compare) return run_compare(g, cmp);
        if (*symbreak) return run_symbreak(g, sb);
    } catch (const parlev::ParameterError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const parlev::ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << '\n';
        return convergence_error;
    } catch (const parlev::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return io_error;
    } catch (const parlev::FitError& e) {
        std::cerr << "fit error: " << e.what() << '\n';
        return data_mismatch;
    } catch (const parlev::StructuralError& e) {
        std::cerr << "data mismatch: " << e.what() << '\n';
        return data_mismatch;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failure;
    }
    return failure;
}
