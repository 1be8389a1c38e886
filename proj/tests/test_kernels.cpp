#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hnv/functions.hpp"
#include "hnv/kernels.hpp"

using namespace hnv;

namespace {

// Literal transcription of K_n with the (2i)^{-n} prefactors, independent of a_factor.
cplx kernel_oracle(const std::vector<cplx>& z, const std::vector<double>& t) {
    cplx p1 = 1.0, p2 = 1.0, pref = 1.0;
    for (std::size_t l = 0; l < z.size(); ++l) {
        p1 *= 1.0 / (t[l] - z[l]) - 1.0 / (t[l] + kI);
        p2 *= 1.0 / (t[l] - kI) - 1.0 / (t[l] + kI);
        pref /= 2.0 * kI;
    }
    return kI * (2.0 * pref * p1 - pref * p2);
}

struct Draw {
    std::vector<cplx> z;
    std::vector<double> t;
};

Draw draw(SampleRng& rng, std::size_t n, bool upper_only) {
    Draw d;
    for (std::size_t l = 0; l < n; ++l) {
        const double y = rng.uniform(0.1, 5.0);
        const bool lower = !upper_only && rng.uniform(0.0, 1.0) < 0.5;
        d.z.emplace_back(rng.uniform(-10.0, 10.0), lower ? -y : y);
        d.t.push_back(rng.uniform(-10.0, 10.0));
    }
    return d;
}

double ulp_of(double x) { return std::nextafter(std::abs(x), INFINITY) - std::abs(x); }

}  // namespace

TEST(Kernel, Examples) {
    const std::vector<double> t0{0.0};
    EXPECT_NEAR(std::abs(kernel_K(std::vector<cplx>{kI}, t0) - kI), 0.0, 1e-15);
    const cplx k = kernel_K(std::vector<cplx>{2.0 * kI}, std::vector<double>{3.0});
    const cplx want = cplx(3.0, 2.0) / 13.0 - 0.3;
    EXPECT_NEAR(std::abs(k - want), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(kernel_K1_closed(2.0 * kI, 3.0) - want), 0.0, 1e-15);
    // Two-variable value, frozen from an exact rational expansion.
    EXPECT_NEAR(std::abs(kernel_K(CutPlanePoint{kI, kI}, std::vector<double>{0.0, 0.0}) - kI), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(kernel_K(CutPlanePoint{cplx(1, 1), cplx(0, 2)}, std::vector<double>{0.5, -1.0}) -
                         kernel_oracle({cplx(1, 1), cplx(0, 2)}, {0.5, -1.0})),
                0.0, 1e-15);
}

TEST(Kernel, DimensionMismatch) {
    EXPECT_THROW(kernel_K(CutPlanePoint{kI, kI}, std::vector<double>{0.0}), InvalidArgument);
    EXPECT_THROW(poisson(CutPlanePoint{kI}, std::vector<double>{0.0, 1.0}), InvalidArgument);
}

TEST(Kernel, ClosedFormExamples) {
    EXPECT_NEAR(std::abs(kernel_K1_closed(kI, 0.0) - kI), 0.0, 1e-16);
    EXPECT_NEAR(std::abs(kernel_K1_closed(kI, 1.0) - 0.5 * kI), 0.0, 1e-16);
    EXPECT_THROW(kernel_K1_closed(cplx(1.0, 0.0), 2.0), InvalidArgument);
}

TEST(Kernel, ClosedFormConjugateSymmetry) {
    SampleRng rng(7);
    for (int k = 0; k < 100; ++k) {
        const cplx z(rng.uniform(-5, 5), rng.uniform(0.1, 5));
        const double t = rng.uniform(-5, 5);
        EXPECT_NEAR(std::abs(kernel_K1_closed(std::conj(z), t) - std::conj(kernel_K1_closed(z, t))), 0.0, 1e-15);
    }
}

TEST(Kernel, ProductIdentityAgainstOracle) {
    SampleRng rng(11);
    for (std::size_t n = 1; n <= 3; ++n)
        for (int k = 0; k < 200; ++k) {
            const Draw d = draw(rng, n, false);
            const cplx got = kernel_K(d.z, d.t);
            const cplx want = kernel_oracle(d.z, d.t);
            EXPECT_LE(std::abs(got - want), 1e-12 * std::max(1.0, std::abs(want)));
        }
}

TEST(Kernel, OneDimensionalAgreesWithClosedFormInUlps) {
    SampleRng rng(12);
    for (int k = 0; k < 1000; ++k) {
        const Draw d = draw(rng, 1, false);
        const cplx a = kernel_K(d.z, d.t);
        const cplx b = kernel_K1_closed(d.z[0], d.t[0]);
        const double scale = std::max(std::abs(1.0 / (d.t[0] - d.z[0])), std::abs(d.t[0] / (1 + d.t[0] * d.t[0])));
        EXPECT_LE(std::abs(a.real() - b.real()), 4 * ulp_of(scale));
        EXPECT_LE(std::abs(a.imag() - b.imag()), 4 * ulp_of(scale));
    }
}

TEST(NFactor, Examples) {
    for (double t : {-3.0, 0.0, 0.5, 7.0}) EXPECT_NEAR(std::abs(n_factor(Rho::minus, kI, t)), 0.0, 1e-16);
    for (cplx z : {kI, cplx(2, -3), cplx(-1, 0.2)}) EXPECT_NEAR(std::abs(n_factor(0, z, 0.0) - 1.0), 0.0, 1e-16);
    const cplx z(2, 3);
    EXPECT_NEAR(std::abs(std::conj(n_factor(-1, z, 5.0)) - n_factor(1, z, 5.0)), 0.0, 1e-16);
    EXPECT_THROW(n_factor(2, z, 0.0), InvalidArgument);
    EXPECT_THROW(rho_from_int(-2), InvalidArgument);
}

TEST(NFactor, PropertySuite) {
    SampleRng rng(13);
    for (int k = 0; k < 1000; ++k) {
        const Draw d = draw(rng, 1, false);
        const cplx z = d.z[0];
        const double t = d.t[0];
        const cplx n0 = n_factor(Rho::zero, z, t);
        EXPECT_EQ(n0.imag(), 0.0);
        EXPECT_EQ(n0, n_factor(Rho::zero, cplx(rng.uniform(-5, 5), rng.uniform(0.1, 5)), t));
        const cplx m = n_factor(Rho::minus, z, t), p = n_factor(Rho::plus, z, t);
        EXPECT_LE(std::abs(std::conj(m) - p), 1e-12 * std::max(1.0, std::abs(p)));
    }
}

TEST(AFactor, Examples) {
    EXPECT_NEAR(std::abs(a_factor(kI, 0.0) - 1.0), 0.0, 1e-16);
    EXPECT_THROW(a_factor(cplx(2.0, 0.0), 2.0), PoleError);
    EXPECT_NO_THROW(a_factor(cplx(2.0, 0.0), 3.0));
    // A(z,t) - A(conj z, t): the difference of the first fractions only.
    const cplx z(0.7, 1.3);
    const double t = -0.4;
    const cplx want = (1.0 / (t - z) - 1.0 / (t - std::conj(z))) / (2.0 * kI);
    EXPECT_NEAR(std::abs(a_factor(z, t) - a_factor(std::conj(z), t) - want), 0.0, 1e-15);
    for (double s : {-2.0, 0.0, 3.0}) EXPECT_NEAR(std::abs(a_factor(kI, s) - 1.0 / (1.0 + s * s)), 0.0, 1e-16);
}

TEST(Poisson, Examples) {
    EXPECT_DOUBLE_EQ(poisson(CutPlanePoint{kI}, std::vector<double>{0.0}), 1.0);
    EXPECT_DOUBLE_EQ(poisson(CutPlanePoint{kI, 2.0 * kI}, std::vector<double>{0.0, 0.0}), 0.5);
    EXPECT_THROW(poisson(CutPlanePoint{-kI}, std::vector<double>{0.0}), InvalidArgument);
}

TEST(Poisson, PositiveOnRandomGrid) {
    SampleRng rng(14);
    for (int k = 0; k < 1000; ++k) {
        const Draw d = draw(rng, 1 + k % 3, true);
        EXPECT_GT(poisson(d.z, d.t), 0.0);
    }
}

TEST(KernelSymmetry, Examples) {
    const double r1 = kernel_symmetry_residual(CutPlanePoint{cplx(0.4, -2.0)}, std::vector<double>{1.5});
    EXPECT_LT(r1, 1e-15);
    EXPECT_LT(kernel_symmetry_residual(CutPlanePoint{-kI, cplx(3, 2)}, std::vector<double>{1.0, -1.0}), 1e-12);
}

TEST(KernelSymmetry, RandomMixedPoints) {
    SampleRng rng(15);
    double worst = 0.0;
    for (std::size_t n = 1; n <= 3; ++n)
        for (int k = 0; k < 100; ++k) {
            const Draw d = draw(rng, n, false);
            worst = std::max(worst, kernel_symmetry_residual(CutPlanePoint(d.z), d.t));
        }
    EXPECT_LT(worst, 1e-11);
}

TEST(PoissonAlternatingSum, Examples) {
    const cplx v = poisson_alternating_sum(CutPlanePoint{kI, 2.0 * kI}, std::vector<double>{0.0, 0.0});
    EXPECT_NEAR(std::abs(v - kI), 0.0, 1e-15);
    const CutPlanePoint z{cplx(0.3, 0.8)};
    const std::vector<double> t{-1.1};
    EXPECT_NEAR(std::abs(kernel_K1_closed(z[0], t[0]) - kernel_K1_closed(std::conj(z[0]), t[0]) -
                         2.0 * kI * poisson(z, t)),
                0.0, 1e-14);
    EXPECT_THROW(poisson_alternating_sum(CutPlanePoint{-kI}, std::vector<double>{0.0}), InvalidArgument);
}

TEST(PoissonAlternatingSum, RandomRelativeDeviation) {
    SampleRng rng(16);
    for (std::size_t n = 1; n <= 3; ++n)
        for (int k = 0; k < 100; ++k) {
            const Draw d = draw(rng, n, true);
            const CutPlanePoint z(d.z);
            const double p = poisson(z, d.t);
            EXPECT_LT(std::abs(poisson_alternating_sum(z, d.t) - 2.0 * kI * p) / p, 1e-11);
        }
}

TEST(ImaginaryPartDecomposition, RemainderIsNFactorSum) {
    // Im K_n - P_n = -sum over rho containing both signs of prod N_rho.
    SampleRng rng(17);
    for (std::size_t n = 2; n <= 3; ++n)
        for (int k = 0; k < 100; ++k) {
            const Draw d = draw(rng, n, true);
            const CutPlanePoint z(d.z);
            cplx remainder{};
            for (const auto& rho : nevanlinna_rhos(n)) {
                cplx p = 1.0;
                for (std::size_t j = 0; j < n; ++j) p *= n_factor(rho[j], d.z[j], d.t[j]);
                remainder += p;
            }
            const double lhs = kernel_K(z, d.t).imag() - poisson(z, d.t);
            EXPECT_NEAR(lhs, -remainder.real(), 1e-12);
            EXPECT_NEAR(remainder.imag(), 0.0, 1e-12);
        }
}
