#pragma once

// Graded matrices with ordinary complex entries. The supertrace weights
// commuting (c) indices with +1 and anticommuting (a) indices with -1.
// Only identities that hold for numeric matrices together with diagonal
// symmetry-breaking matrices are exercised here, so no Grassmann algebra
// is needed.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "parlev/ensemble.hpp"
#include "parlev/errors.hpp"
#include "parlev/parametric.hpp"
#include "parlev/rng.hpp"

namespace parlev {

class Grading {
public:
    Grading() = default;

    explicit Grading(std::vector<int> signs) : signs_(std::move(signs)) {
        int balance = 0;
        for (int s : signs_) {
            if (s != 1 && s != -1) throw ParameterError("grading entries must be +1 or -1");
            balance += s;
        }
        if (balance != 0) throw ParameterError("grading must have equal numbers of +1 and -1 entries");
    }

    /// "c"/"a" letters, e.g. "ccaaccaa".
    static Grading from_letters(std::string_view letters) {
        std::vector<int> s;
        for (char ch : letters) {
            if (ch == 'c') s.push_back(1);
            else if (ch == 'a') s.push_back(-1);
            else throw ParameterError("grading letters must be 'c' or 'a'");
        }
        return Grading(std::move(s));
    }

    /// (c, c, a, a, c, c, a, a)
    static Grading goe() { return from_letters("ccaaccaa"); }
    /// (c, a, c, a)
    static Grading gue() { return from_letters("caca"); }

    static Grading for_dimension(int dim) {
        if (dim == 8) return goe();
        if (dim == 4) return gue();
        throw ParameterError("graded dimension must be 4 or 8");
    }

    std::size_t size() const noexcept { return signs_.size(); }
    int operator[](std::size_t i) const { return signs_[i]; }
    const std::vector<int>& signs() const noexcept { return signs_; }

    friend bool operator==(const Grading&, const Grading&) = default;

private:
    std::vector<int> signs_;
};

class SuperMatrix {
public:
    SuperMatrix() = default;

    SuperMatrix(ComplexMatrix entries, Grading grading) : m_(std::move(entries)), g_(std::move(grading)) {
        if (m_.rows() != m_.cols()) throw StructuralError("supermatrix must be square");
        if (static_cast<std::size_t>(m_.rows()) != g_.size())
            throw StructuralError("grading length does not match supermatrix dimension");
    }

    static SuperMatrix identity(const Grading& g) {
        const auto n = static_cast<Eigen::Index>(g.size());
        return {ComplexMatrix::Identity(n, n), g};
    }

    static SuperMatrix diagonal(const std::vector<double>& d, const Grading& g) {
        ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
        for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
        return {std::move(m), g};
    }

    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    const ComplexMatrix& entries() const noexcept { return m_; }
    const Grading& grading() const noexcept { return g_; }
    std::complex<double> operator()(int i, int j) const { return m_(i, j); }

    bool is_diagonal() const {
        for (Eigen::Index i = 0; i < m_.rows(); ++i)
            for (Eigen::Index j = 0; j < m_.cols(); ++j)
                if (i != j && m_(i, j) != 0.0) return false;
        return true;
    }

    friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
        check(a, b);
        return {a.m_ + b.m_, a.g_};
    }
    friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
        check(a, b);
        return {a.m_ - b.m_, a.g_};
    }
    friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
        check(a, b);
        return {a.m_ * b.m_, a.g_};
    }
    friend SuperMatrix operator*(std::complex<double> c, const SuperMatrix& a) { return {c * a.m_, a.g_}; }

private:
    static void check(const SuperMatrix& a, const SuperMatrix& b) {
        if (a.dim() != b.dim()) throw StructuralError("supermatrix dimensions differ");
        if (!(a.g_ == b.g_)) throw StructuralError("supermatrix gradings differ");
    }

    ComplexMatrix m_;
    Grading g_;
};

/// trg M = sum_a sign_a M_aa.
inline std::complex<double> supertrace(const SuperMatrix& m) {
    std::complex<double> t{};
    for (int i = 0; i < m.dim(); ++i) t += static_cast<double>(m.grading()[static_cast<std::size_t>(i)]) * m(i, i);
    return t;
}

inline SuperMatrix commutator(const SuperMatrix& a, const SuperMatrix& b) { return a * b - b * a; }

/// L = diag(1, ..., 1, -1, ..., -1): +1 on the retarded half, -1 on the advanced half.
inline SuperMatrix retarded_advanced_l(int dim) {
    const Grading g = Grading::for_dimension(dim);
    std::vector<double> d(static_cast<std::size_t>(dim), 1.0);
    for (int i = dim / 2; i < dim; ++i) d[static_cast<std::size_t>(i)] = -1.0;
    return SuperMatrix::diagonal(d, g);
}

/// T3 = diag(+1, -1, +1, -1; +1, -1, +1, -1), GOE grading.
inline SuperMatrix t3_matrix() {
    return SuperMatrix::diagonal({1, -1, 1, -1, 1, -1, 1, -1}, Grading::goe());
}

enum class BreakingCase {
    goe_goe = 1, // (i)
    gue_gue = 2, // (ii)
    goe_gue = 3, // (iii)
    goe_to_gue = 4, // (iv) two-point function across the GOE -> GUE transition
};

inline std::string_view case_label(BreakingCase c) {
    switch (c) {
    case BreakingCase::goe_goe: return "i";
    case BreakingCase::gue_gue: return "ii";
    case BreakingCase::goe_gue: return "iii";
    case BreakingCase::goe_to_gue: return "iv";
    }
    return "?";
}

inline std::string_view case_description(BreakingCase c) {
    switch (c) {
    case BreakingCase::goe_goe: return "GOE <-> GOE";
    case BreakingCase::gue_gue: return "GUE <-> GUE";
    case BreakingCase::goe_gue: return "GOE <-> GUE";
    case BreakingCase::goe_to_gue: return "GOE -> GUE transition";
    }
    return "?";
}

inline constexpr BreakingCase all_breaking_cases[] = {BreakingCase::goe_goe, BreakingCase::gue_gue,
                                                      BreakingCase::goe_gue, BreakingCase::goe_to_gue};

/// Diagonal symmetry-breaking matrix T_x for each case.
inline SuperMatrix build_t_matrix(BreakingCase c) {
    switch (c) {
    case BreakingCase::goe_goe: return retarded_advanced_l(8);
    case BreakingCase::gue_gue: return retarded_advanced_l(4);
    case BreakingCase::goe_gue: {
        const SuperMatrix l8 = retarded_advanced_l(8);
        return (SuperMatrix::identity(Grading::goe()) - l8) * t3_matrix();
    }
    case BreakingCase::goe_to_gue: return t3_matrix();
    }
    throw ParameterError("unknown symmetry-breaking case");
}

/// Diagonal saddle point (E / 2 lambda) 1 - i Delta0 L, Delta0 = sqrt(1 - (E / 2 lambda)^2).
inline SuperMatrix saddle_sigma(double energy, double lambda, int dim) {
    if (!(lambda > 0.0)) throw ParameterError("saddle_sigma: lambda must be positive");
    const double x = energy / (2.0 * lambda);
    if (!(std::abs(x) < 1.0)) throw ParameterError("saddle_sigma: |E| must be < 2 lambda (inside the spectrum)");
    const double delta0 = std::sqrt(1.0 - x * x);
    const SuperMatrix l = retarded_advanced_l(dim);
    return x * SuperMatrix::identity(l.grading()) - std::complex<double>(0.0, delta0) * l;
}

/// sigma (E - lambda sigma) - lambda; zero on the saddle manifold.
inline SuperMatrix saddle_residual(const SuperMatrix& sigma, double energy, double lambda) {
    const SuperMatrix one = SuperMatrix::identity(sigma.grading());
    return sigma * (energy * one - lambda * sigma) - lambda * one;
}

/// trg([sigma, T]^2).
inline std::complex<double> parametric_correlator_s(const SuperMatrix& sigma, const SuperMatrix& t) {
    const SuperMatrix c = commutator(sigma, t);
    return supertrace(c * c);
}

/// Random invertible matrix that only mixes indices of equal grading;
/// such similarity transforms leave every supertrace unchanged.
inline ComplexMatrix random_block_diagonal(const Grading& g, Engine& engine, double spread = 0.4) {
    StandardNormal normal;
    const auto n = static_cast<Eigen::Index>(g.size());
    ComplexMatrix a = ComplexMatrix::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (g[static_cast<std::size_t>(i)] == g[static_cast<std::size_t>(j)]) {
                const double re = normal(engine);
                const double im = normal(engine);
                a(i, j) += spread * std::complex<double>(re, im);
            }
    return a;
}

/// A sigma_D A^{-1}: a point with the same supertrace invariants as the
/// diagonal saddle, used in place of a full coset parametrisation.
inline SuperMatrix saddle_surrogate(double energy, double lambda, int dim, Engine& engine) {
    const SuperMatrix sd = saddle_sigma(energy, lambda, dim);
    const ComplexMatrix a = random_block_diagonal(sd.grading(), engine);
    return {a * sd.entries() * a.inverse(), sd.grading()};
}

struct SymmetryBreakingCheck {
    std::complex<double> lhs;   // (N/16) dx^2 trg[(sigma L)^2]
    std::complex<double> rhs;   // (pi Gamma / 64 d) trg([sigma, L]^2)
    double residual = 0.0;      // |lhs - rhs|
    double tolerance = 0.0;     // 1e-12 max(|lhs|, 1)
    std::complex<double> trg_sigma_squared;

    bool passed() const { return residual <= tolerance; }
};

/// Both forms of the symmetry-breaking term in the exponent for a GOE pair,
/// with Gamma from the spreading width and d = pi lambda / N.
inline SymmetryBreakingCheck verify_symmetry_breaking_term(const EnsembleSpec& spec, double delta_x, const SuperMatrix& sigma) {
    spec.validate();
    if (sigma.dim() != 8) throw StructuralError("symmetry-breaking check needs an 8-dimensional sigma");
    const SuperMatrix l = retarded_advanced_l(8);
    if (!(sigma.grading() == l.grading())) throw StructuralError("sigma must carry the GOE grading");
    const double n = spec.n;
    const SuperMatrix sl = sigma * l;
    SymmetryBreakingCheck out;
    out.lhs = (n / 16.0) * delta_x * delta_x * supertrace(sl * sl);
    const double gamma = spreading_width(delta_x, spec);
    const double d = mean_level_spacing(spec);
    out.rhs = (std::numbers::pi * gamma / (64.0 * d)) * parametric_correlator_s(sigma, l);
    out.residual = std::abs(out.lhs - out.rhs);
    out.tolerance = 1e-12 * std::max(std::abs(out.lhs), 1.0);
    out.trg_sigma_squared = supertrace(sigma * sigma);
    return out;
}

} // namespace parlev
