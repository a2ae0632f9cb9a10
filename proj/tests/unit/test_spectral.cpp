#include <cmath>

#include <gtest/gtest.h>

#include "parlev/spectral.hpp"

using namespace parlev;

TEST(Spectral, DiagonalMatrixSortsAscending) {
    RealMatrix h = RealMatrix::Zero(3, 3);
    h(0, 0) = 3, h(1, 1) = 1, h(2, 2) = 2;
    const auto s = eigenvalues(EnsembleMatrix(h));
    ASSERT_EQ(s.size(), 3u);
    EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-15);
    EXPECT_NEAR(s.eigenvalues[1], 2.0, 1e-15);
    EXPECT_NEAR(s.eigenvalues[2], 3.0, 1e-15);
}

TEST(Spectral, PauliX) {
    RealMatrix h(2, 2);
    h << 0, 1, 1, 0;
    const auto s = eigenvalues(EnsembleMatrix(h), {}, true);
    EXPECT_NEAR(s.eigenvalues[0], -1.0, 1e-15);
    EXPECT_NEAR(s.eigenvalues[1], 1.0, 1e-15);
}

TEST(Spectral, NonHermitianInputIsRejected) {
    RealMatrix h(2, 2);
    h << 0, 1, 1 + 1e-9, 0;
    EXPECT_THROW(eigenvalues(EnsembleMatrix(h)), StructuralError);
    ComplexMatrix c(2, 2);
    c << 1, std::complex<double>(0, 1), std::complex<double>(0, 1), 1;
    EXPECT_THROW(eigenvalues(EnsembleMatrix(c)), StructuralError);
}

TEST(Spectral, BackwardErrorValidatedOnEnsembleDraws) {
    for (auto cls : {SymmetryClass::GOE, SymmetryClass::GUE}) {
        const EnsembleSpec spec{cls, 120, 1.0};
        const auto s = eigenvalues(sample(spec, 9), {spec, 9, 0.0}, true);
        EXPECT_EQ(s.size(), 120u);
        EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
        double trace_sum = 0.0;
        for (double e : s.eigenvalues) trace_sum += e;
        const auto h = sample(spec, 9);
        double tr = 0.0;
        for (int i = 0; i < spec.n; ++i) tr += element(h, i, i).real();
        EXPECT_NEAR(trace_sum, tr, 1e-11);
    }
}

TEST(Spectral, GreenTraceSingleLevel) {
    SpectralSample s;
    s.eigenvalues = {0.0};
    const auto r = green_trace(s, 0.0, 1.0, Branch::retarded);
    const auto a = green_trace(s, 0.0, 1.0, Branch::advanced);
    EXPECT_NEAR(r.real(), 0.0, 1e-15);
    EXPECT_NEAR(r.imag(), -1.0, 1e-15);
    EXPECT_NEAR(a.imag(), 1.0, 1e-15);
}

TEST(Spectral, GreenTraceMatchesComplexDivision) {
    SpectralSample s;
    s.eigenvalues = {-1.3, -0.2, 0.05, 0.9, 2.4};
    const std::complex<double> z(0.31, 0.07);
    std::complex<double> expect{};
    for (double e : s.eigenvalues) expect += 1.0 / (z - e);
    const auto got = green_trace(s, z.real(), z.imag(), Branch::retarded);
    EXPECT_NEAR(std::abs(got - expect), 0.0, 1e-13);
    EXPECT_EQ(green_trace(s, 0.31, 0.07, Branch::advanced), std::conj(got));
}

TEST(Spectral, GreenTraceRejectsNonPositiveEta) {
    SpectralSample s;
    s.eigenvalues = {0.0};
    EXPECT_THROW(green_trace(s, 0.0, 0.0, Branch::retarded), ParameterError);
    EXPECT_THROW(green_trace(s, 0.0, -0.1, Branch::advanced), ParameterError);
}

TEST(Spectral, CentralWindow) {
    SpectralSample s;
    s.meta.spec = {SymmetryClass::GOE, 6, 1.0};
    s.eigenvalues = {-1.5, -0.5, -0.1, 0.2, 0.6, 1.9};
    const auto all = central_window(s, 1.0);
    ASSERT_TRUE(all);
    EXPECT_EQ(all->first, 0u);
    EXPECT_EQ(all->size(), 6u);
    const auto mid = central_window(s, 0.15); // |E| <= 0.3
    ASSERT_TRUE(mid);
    EXPECT_EQ(mid->first, 2u);
    EXPECT_EQ(mid->last, 4u);
    // Smallest |E_n| / 2 lambda is 0.05; just below it the window is empty.
    EXPECT_FALSE(central_window(s, 0.049));
    EXPECT_THROW(central_window(s, 0.0), ParameterError);
}
