#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hnv/catalogue.hpp"
#include "hnv/measures.hpp"

using namespace hnv;

namespace {

constexpr double kPi = std::numbers::pi;

double cauchy_product(std::span<const double> t) {
    double p = 1.0;
    for (double x : t) p /= 1.0 + x * x;
    return p;
}

}  // namespace

TEST(Integrate, AtomicIsWeightedSum) {
    const Measure mu = Measure::atomic({{0.0, 0.0}}, {kPi * kPi});
    const CutPlanePoint z{cplx(1, 2), cplx(-1, 1)};
    const auto f = [&](std::span<const double> t) { return kernel_K(z, t); };
    const std::vector<double> origin{0.0, 0.0};
    EXPECT_EQ(integrate(mu, f).value, kPi * kPi * kernel_K(z, origin));
}

TEST(Integrate, LebesgueOneDimensional) {
    EXPECT_NEAR(integrate(Measure::lebesgue(1), cauchy_product).value.real(), kPi, 1e-12);
}

TEST(Integrate, DiagonalCurve) {
    EXPECT_NEAR(integrate(catalogue::mu2(), cauchy_product).value.real(), kPi * kPi / 2, 1e-11);
}

TEST(Integrate, IteratedProductMatchesSeparable) {
    const Measure mu = catalogue::f4_alternative_measure();
    const auto f = [](std::span<const double> t) {
        return std::pow(1 + t[0] * t[0], -2) * std::pow(1 + t[1] * t[1], -2);
    };
    // 4.5 (pi/2)^2 + 2 (3pi/8)(pi/2)
    const double want = 4.5 * kPi * kPi / 4 + 2 * (3 * kPi / 8) * (kPi / 2);
    EXPECT_NEAR(integrate(mu, f).value.real(), want, 1e-8);
    SeparableTerm term;
    for (int l = 0; l < 2; ++l) term.factors.push_back({[](double s) { return cplx(std::pow(1 + s * s, -2)); }, {}});
    EXPECT_NEAR(integrate_separable(mu, {term}).value.real(), want, 1e-9);
}

TEST(Integrate, LinearityAndScaling) {
    const Measure a = catalogue::mu2();
    const Measure b = Measure::lebesgue(2, 3.0);
    const double ia = integrate(a, cauchy_product).value.real();
    const double ib = integrate(b, cauchy_product).value.real();
    EXPECT_NEAR(integrate(a + b, cauchy_product).value.real(), ia + ib, 1e-8);
    EXPECT_NEAR(integrate(b.scaled(2.5), cauchy_product).value.real(), 2.5 * ib, 1e-8);
    EXPECT_NEAR(integrate(a.scaled(0.5), cauchy_product).value.real(), 0.5 * ia, 1e-10);
    EXPECT_THROW(a.scaled(-1.0), InvalidMeasure);
}

TEST(Integrate, NarrowGaussianApproachesAtom) {
    // Error of a centred Gaussian against a smooth f is sigma^2 f''/2 + O(sigma^4).
    const auto f = [](std::span<const double> t) { return std::cos(t[0]) + t[0]; };
    std::vector<double> err;
    for (double sigma : {0.1, 0.01}) {
        const Measure g = Measure::product({DensityDescriptor::gaussian(0.0, sigma)});
        err.push_back(std::abs(integrate(g, f).value.real() - 1.0));
    }
    EXPECT_NEAR(err[0], 0.5 * 0.01, 1e-4);
    EXPECT_NEAR(err[0] / err[1], 100.0, 1.0);
}

TEST(Measure, Validation) {
    EXPECT_THROW(Measure::atomic({{0.0}}, {-1.0}), InvalidMeasure);
    EXPECT_THROW(Measure::atomic({{0.0}}, {1.0, 2.0}), InvalidMeasure);
    EXPECT_THROW(Measure::atomic({}, {}), InvalidMeasure);
    EXPECT_THROW(Measure::lebesgue(2, -1.0), InvalidMeasure);
    EXPECT_THROW(Measure::curve({0.0, 0.0}, {1.0, 1.0}, DensityDescriptor::constant(1.0), 1.0), InvalidMeasure);
    EXPECT_THROW(Measure::sum({Measure::lebesgue(1), Measure::lebesgue(2)}), InvalidMeasure);
    EXPECT_THROW(DensityDescriptor::gaussian(0.0, 0.0), InvalidMeasure);
    EXPECT_THROW(DensityDescriptor::rational("nope"), InvalidMeasure);
    EXPECT_THROW(DensityDescriptor::constant(-2.0), InvalidMeasure);
    EXPECT_EQ(Measure::zero(3).dimension(), 3u);
}

TEST(Growth, Examples) {
    const GrowthReport l = check_growth(Measure::lebesgue(1));
    EXPECT_TRUE(l.finite);
    EXPECT_NEAR(l.value, kPi, 1e-12);
    const GrowthReport d = check_growth(catalogue::mu2());
    EXPECT_TRUE(d.finite);
    EXPECT_NEAR(d.value, kPi * kPi / 2, 1e-11);
    const GrowthReport a = check_growth(Measure::atomic({{1e6}}, {1.0}));
    EXPECT_TRUE(a.finite);
    EXPECT_DOUBLE_EQ(a.value, 1.0 / (1.0 + 1e12));
}

TEST(Growth, DivergentDensity) {
    const GrowthReport g = check_growth(Measure::product({DensityDescriptor::rational("linear")}));
    EXPECT_FALSE(g.finite);
    EXPECT_TRUE(std::isinf(g.value));
    const GrowthReport ok = check_growth(Measure::product({DensityDescriptor::rational("inverse_quartic")}));
    EXPECT_TRUE(ok.finite);
    // int (1+t^2)^{-1} (1+t^4)^{-1} dt = pi / 2
    EXPECT_NEAR(ok.value, kPi / 2, 1e-11);
}

TEST(Nevanlinna, OneVariableIsStructurallyZero) {
    EXPECT_TRUE(nevanlinna_rhos(1).empty());
    const QuadResult r = nevanlinna_residual(Measure::atomic({{3.0}}, {2.0}), CutPlanePoint{cplx(0.2, 0.7)});
    EXPECT_EQ(r.value, cplx(0.0));
    EXPECT_EQ(r.error, 0.0);
}

TEST(Nevanlinna, RhoCounts) {
    // 3^n - 2 * 2^n + 1 vectors contain both signs.
    EXPECT_EQ(nevanlinna_rhos(2).size(), 2u);
    EXPECT_EQ(nevanlinna_rhos(3).size(), 12u);
}

TEST(Nevanlinna, LebesgueSatisfiesIt) {
    for (const CutPlanePoint& z : default_nevanlinna_grid(2))
        EXPECT_LT(std::abs(nevanlinna_residual(Measure::lebesgue(2), z).value), 1e-8);
}

TEST(Nevanlinna, DiagonalMeasureViolatesIt) {
    double worst = 0.0;
    for (const CutPlanePoint& z : default_nevanlinna_grid(2))
        worst = std::max(worst, std::abs(nevanlinna_residual(catalogue::mu2(), z).value));
    EXPECT_GT(worst, 0.01);
    // Closed form at (2i, 2i): pi^2 / 12.
    const QuadResult r = nevanlinna_residual(catalogue::mu2(), CutPlanePoint{2.0 * kI, 2.0 * kI});
    EXPECT_NEAR(r.value.real(), kPi * kPi / 12, 1e-9);
    EXPECT_NEAR(r.value.imag(), 0.0, 1e-9);
}

TEST(Nevanlinna, VanishesWhenACoordinateIsI) {
    // N_{-1}(i,t) = N_1(i,t) = 0, so every qualifying product has a zero factor.
    const QuadResult r = nevanlinna_residual(catalogue::mu2(), CutPlanePoint{kI, 2.0 * kI});
    EXPECT_EQ(std::abs(r.value), 0.0);
}

TEST(Nevanlinna, RequiresUpperPoint) {
    EXPECT_THROW(nevanlinna_residual(Measure::lebesgue(2), CutPlanePoint{kI, -kI}), InvalidArgument);
}
