#pragma once

// Gaussian orthogonal / unitary ensembles normalised so that the
// off-diagonal second moment <H_mn H_nm> equals lambda^2 / N and the
// semicircle has radius 2 lambda.

#include <cmath>
#include <complex>
#include <type_traits>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include <Eigen/Dense>

#include "parlev/errors.hpp"
#include "parlev/rng.hpp"

namespace parlev {

enum class SymmetryClass { GOE, GUE };

inline std::string_view to_string(SymmetryClass c) {
    return c == SymmetryClass::GOE ? "GOE" : "GUE";
}

inline SymmetryClass parse_symmetry_class(std::string_view s) {
    if (s == "GOE" || s == "goe") return SymmetryClass::GOE;
    if (s == "GUE" || s == "gue") return SymmetryClass::GUE;
    throw ParameterError("unknown symmetry class '" + std::string(s) + "' (expected GOE or GUE)");
}

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// One ensemble draw. The alternative always matches the symmetry class.
using EnsembleMatrix = std::variant<RealMatrix, ComplexMatrix>;

struct EnsembleSpec {
    SymmetryClass symmetry_class = SymmetryClass::GOE;
    int n = 2;
    double lambda = 1.0;

    void validate() const {
        if (n < 2) throw ParameterError("ensemble dimension n must be >= 2, got " + std::to_string(n));
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw ParameterError("ensemble scale lambda must be positive and finite");
    }

    friend bool operator==(const EnsembleSpec&, const EnsembleSpec&) = default;
};

/// Mean level spacing at the band centre, d = pi lambda / N.
inline double mean_level_spacing(const EnsembleSpec& spec) {
    spec.validate();
    return std::numbers::pi * spec.lambda / spec.n;
}

/// Semicircle density normalised to N levels. rho(0) = 1/d.
inline double semicircle_density(double energy, const EnsembleSpec& spec) {
    spec.validate();
    const double radius = 2.0 * spec.lambda;
    if (std::abs(energy) >= radius) return 0.0;
    return spec.n / (2.0 * std::numbers::pi * spec.lambda * spec.lambda)
        * std::sqrt(radius * radius - energy * energy);
}

/// Expected number of levels with |E| <= e_max.
inline double semicircle_count(double e_max, const EnsembleSpec& spec) {
    spec.validate();
    const double x = std::min(std::abs(e_max) / (2.0 * spec.lambda), 1.0);
    return spec.n * (2.0 / std::numbers::pi) * (x * std::sqrt(1.0 - x * x) + std::asin(x));
}

namespace detail {

// Fills the upper triangle row by row (diagonal first in each row) and
// mirrors it. Diagonal variance: 2 lambda^2/N (GOE), lambda^2/N (GUE).
inline void fill_goe(RealMatrix& h, const EnsembleSpec& spec, Engine& engine) {
    StandardNormal normal;
    const double off = spec.lambda / std::sqrt(static_cast<double>(spec.n));
    const double diag = off * std::numbers::sqrt2;
    for (int i = 0; i < spec.n; ++i) {
        h(i, i) = diag * normal(engine);
        for (int j = i + 1; j < spec.n; ++j) {
            const double x = off * normal(engine);
            h(i, j) = x;
            h(j, i) = x;
        }
    }
}

inline void fill_gue(ComplexMatrix& h, const EnsembleSpec& spec, Engine& engine) {
    StandardNormal normal;
    const double diag = spec.lambda / std::sqrt(static_cast<double>(spec.n));
    const double part = diag / std::numbers::sqrt2;
    for (int i = 0; i < spec.n; ++i) {
        h(i, i) = {diag * normal(engine), 0.0};
        for (int j = i + 1; j < spec.n; ++j) {
            const double re = part * normal(engine);
            const double im = part * normal(engine);
            h(i, j) = {re, im};
            h(j, i) = {re, -im};
        }
    }
}

} // namespace detail

/// Draws one matrix from the ensemble using `engine`.
inline EnsembleMatrix sample(const EnsembleSpec& spec, Engine& engine) {
    spec.validate();
    if (spec.symmetry_class == SymmetryClass::GOE) {
        RealMatrix h(spec.n, spec.n);
        detail::fill_goe(h, spec, engine);
        return h;
    }
    ComplexMatrix h(spec.n, spec.n);
    detail::fill_gue(h, spec, engine);
    return h;
}

/// Draws one matrix; identical seeds give bitwise-identical matrices.
inline EnsembleMatrix sample(const EnsembleSpec& spec, std::uint64_t seed) {
    Engine engine = make_engine(seed);
    return sample(spec, engine);
}

inline SymmetryClass symmetry_class_of(const EnsembleMatrix& m) {
    return std::holds_alternative<RealMatrix>(m) ? SymmetryClass::GOE : SymmetryClass::GUE;
}

inline int dimension(const EnsembleMatrix& m) {
    return std::visit([](const auto& h) { return static_cast<int>(h.rows()); }, m);
}

/// max |H - H^dagger|; zero for every sampled matrix.
inline double hermiticity_defect(const EnsembleMatrix& m) {
    return std::visit([](const auto& h) { return (h - h.adjoint()).cwiseAbs().maxCoeff(); }, m);
}

/// Element (i, j) as a complex number regardless of class.
inline std::complex<double> element(const EnsembleMatrix& m, int i, int j) {
    return std::visit([&](const auto& h) { return std::complex<double>(h(i, j)); }, m);
}

/// Debug dump: one header comment line, then the matrix row-major as CSV.
/// Complex entries are written as re,im pairs.
inline void write_matrix_csv(std::ostream& os, const EnsembleMatrix& m, const EnsembleSpec& spec,
                             std::uint64_t seed) {
    os << "# n=" << spec.n << " class=" << to_string(spec.symmetry_class)
       << " lambda=" << std::setprecision(17) << spec.lambda << " seed=" << seed << '\n';
    std::visit(
        [&](const auto& h) {
            for (Eigen::Index i = 0; i < h.rows(); ++i) {
                for (Eigen::Index j = 0; j < h.cols(); ++j) {
                    if (j) os << ',';
                    const std::complex<double> z(h(i, j));
                    if constexpr (std::is_same_v<std::decay_t<decltype(h)>, RealMatrix>)
                        os << z.real();
                    else
                        os << z.real() << ',' << z.imag();
                }
                os << '\n';
            }
        },
        m);
}

} // namespace parlev
