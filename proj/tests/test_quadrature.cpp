#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hnv/quadrature.hpp"

using namespace hnv;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Quadrature, PolynomialOnInterval) {
    const QuadResult r = integrate_interval([](double x) { return cplx(x * x * x, -x); }, 0.0, 2.0, {});
    EXPECT_NEAR(r.value.real(), 4.0, 1e-13);
    EXPECT_NEAR(r.value.imag(), -2.0, 1e-13);
    EXPECT_EQ(integrate_interval([](double) { return cplx(1.0); }, 1.0, 1.0, {}).value, cplx(0.0));
}

TEST(Quadrature, ReversedIntervalChangesSign) {
    const auto f = [](double x) { return cplx(std::exp(x)); };
    EXPECT_NEAR(integrate_interval(f, 1.0, 0.0, {}).value.real(), -(std::exp(1.0) - 1.0), 1e-13);
}

TEST(Quadrature, RealLineRationalPowers) {
    const auto p = [](int k) {
        return [k](double s) { return cplx(std::pow(1.0 + s * s, -k)); };
    };
    EXPECT_NEAR(integrate_real_line(p(1), {}).value.real(), kPi, 1e-12);
    EXPECT_NEAR(integrate_real_line(p(2), {}).value.real(), kPi / 2, 1e-12);
    EXPECT_NEAR(integrate_real_line(p(3), {}).value.real(), 3 * kPi / 8, 1e-12);
    EXPECT_NEAR(integrate_real_line(p(4), {}).value.real(), 5 * kPi / 16, 1e-12);
}

TEST(Quadrature, NarrowPeakFarFromOriginWithBreakpoint) {
    // Lorentzian of width 1e-3 centred at 1e7 has mass pi.
    const double c = 1e7, w = 1e-3;
    const auto f = [&](double s) { return cplx(w / ((s - c) * (s - c) + w * w)); };
    const std::vector<double> br{c};
    // Abscissae near 1e7 are quantised to ~2e-9, i.e. 2e-6 of the peak width,
    // which bounds the attainable accuracy.
    EXPECT_NEAR(integrate_real_line(f, {}, {}, br).value.real(), kPi, 1e-6);
    const double c2 = 1e4;
    const auto g = [&](double s) { return cplx(w / ((s - c2) * (s - c2) + w * w)); };
    const std::vector<double> br2{c2};
    EXPECT_NEAR(integrate_real_line(g, {}, {}, br2).value.real(), kPi, 1e-8);
}

TEST(Quadrature, GaussianAxisMap) {
    const auto f = [](double s) { return cplx(std::exp(-0.5 * (s - 40.0) * (s - 40.0) / 0.01)); };
    EXPECT_NEAR(integrate_real_line(f, {}, AxisMap{40.0, 0.1}).value.real(), std::sqrt(2 * kPi) * 0.1, 1e-12);
}

TEST(Quadrature, DivergenceDetected) {
    EXPECT_THROW(integrate_real_line([](double s) { return cplx(1.0 / (1.0 + std::abs(s))); }, {}), DivergenceError);
    EXPECT_THROW(integrate_real_line([](double) { return cplx(1.0); }, {}), DivergenceError);
}

TEST(Quadrature, AccuracyErrorCarriesEstimate) {
    QuadratureConfig cfg;
    cfg.max_subdivisions = 2;
    cfg.initial_segments = 1;
    const auto f = [](double x) { return cplx(std::sqrt(std::abs(x - 0.3337))); };
    try {
        integrate_interval(f, 0.0, 1.0, cfg);
        FAIL() << "expected AccuracyError";
    } catch (const AccuracyError& e) {
        EXPECT_GT(e.error(), 0.0);
        EXPECT_NEAR(e.estimate().real(), 0.4, 0.1);
    }
}

TEST(Quadrature, ConfigValidation) {
    QuadratureConfig cfg;
    cfg.abs_tol = 0.0;
    EXPECT_THROW(cfg.validate(), InvalidArgument);
    cfg = {};
    cfg.max_subdivisions = 0;
    EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(Quadrature, BoxIntegral) {
    const auto f = [](std::span<const double> x) { return 1.0 / ((1 + x[0] * x[0]) * (1 + x[1] * x[1])); };
    const double r = 1e6;
    const double want = std::pow(2 * std::atan(r), 2);
    EXPECT_NEAR(integrate_box(2, r, f, {}).value.real(), want, 1e-8);
}

TEST(Richardson, ExactOnQuadraticError) {
    RichardsonTable t{2, {}, {}};
    for (double h : {0.5, 0.25, 0.125, 0.0625}) t.push(h, cplx(3.0 + 2.0 * h - 5.0 * h * h));
    EXPECT_TRUE(t.full_order());
    EXPECT_NEAR(std::abs(t.best() - 3.0), 0.0, 1e-13);
    EXPECT_NEAR(t.last_change(), 0.0, 1e-13);
}

TEST(Richardson, UnevenSteps) {
    RichardsonTable t{1, {}, {}};
    t.push(0.3, cplx(1.0 + 0.3));
    t.push(0.07, cplx(1.0 + 0.07));
    EXPECT_NEAR(t.best().real(), 1.0, 1e-14);
}

TEST(Richardson, EmpiricalOrder) {
    RichardsonTable t{0, {}, {}};
    for (double h : {0.1, 0.05, 0.025, 0.0125}) t.push(h, cplx(h * h));
    EXPECT_NEAR(t.empirical_order(), 2.0, 1e-10);
    EXPECT_FALSE((RichardsonTable{2, {}, {}}.full_order()));
}
