#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hnv/catalogue.hpp"
#include "hnv/functions.hpp"

using namespace hnv;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<CutPlanePoint> points_in(std::uint32_t key, std::size_t count, std::uint64_t seed) {
    SampleRng rng(seed);
    std::vector<CutPlanePoint> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(rng.point(ComponentSignature::from_lower_mask(2, key)));
    return out;
}

}  // namespace

TEST(Cauchy, LebesgueOneVariableIsI) {
    const Sample s = evaluate_cauchy(Measure::lebesgue(1), CutPlanePoint{kI});
    EXPECT_LT(std::abs(s.value - kI), 1e-8);
    const Sample t = evaluate_cauchy(Measure::lebesgue(1), CutPlanePoint{cplx(3, -0.5)});
    EXPECT_LT(std::abs(t.value + kI), 1e-8);
}

TEST(Cauchy, DiagonalMeasureAtFourI) {
    const Sample s = evaluate_cauchy(catalogue::mu2(), CutPlanePoint{4.0 * kI, 4.0 * kI});
    EXPECT_LT(std::abs(s.value + 0.1 * kI), 1e-8);
    EXPECT_LT(s.error, 1e-8);
}

TEST(Cauchy, DiagonalMeasureMatchesClosedFormsOnEveryComponent) {
    const EvaluableFunction closed = catalogue::function("f2");
    const EvaluableFunction integral = cauchy_function(catalogue::mu2());
    for (std::uint32_t key = 0; key < 4; ++key)
        for (const CutPlanePoint& z : points_in(key, 25, 100 + key)) EXPECT_LT(std::abs(closed(z) - integral(z)), 1e-6);
    const CutPlanePoint z{cplx(1, 1), cplx(-1, 2)};
    EXPECT_LT(std::abs(integral(z) - (-0.5 * kI - 1.0 / (kI + z[0]) - 1.0 / (kI + z[1]))), 1e-6);
}

TEST(Cauchy, DivergentMeasureRejected) {
    const Measure bad = Measure::product({DensityDescriptor::rational("linear")});
    EXPECT_THROW(evaluate_cauchy(bad, CutPlanePoint{kI}), InvalidMeasure);
    EXPECT_THROW(cauchy_function(bad), InvalidMeasure);
}

TEST(Cauchy, DimensionMismatch) {
    EXPECT_THROW(evaluate_cauchy(Measure::lebesgue(2), CutPlanePoint{kI}), InvalidArgument);
    EXPECT_THROW(catalogue::function("f1")(CutPlanePoint{kI}), InvalidArgument);
}

TEST(Herglotz, Examples) {
    const Sample a = evaluate_herglotz_sym({1.0, {2.0}, Measure::zero(1)}, CutPlanePoint{kI});
    EXPECT_EQ(a.value, cplx(1.0, 2.0));
    const Sample b = evaluate_herglotz_sym({1.0, {2.0}, Measure::atomic({{0.0}}, {kPi})}, CutPlanePoint{kI});
    EXPECT_LT(std::abs(b.value - cplx(1.0, 3.0)), 1e-15);
    const Sample c = evaluate_herglotz_sym({0.0, {0.0, 0.0}, Measure::lebesgue(2, 5.0)}, CutPlanePoint{kI, kI});
    EXPECT_LT(std::abs(c.value - 5.0 * kI), 1e-8);
}

TEST(Herglotz, TripleValidation) {
    EXPECT_THROW(HerglotzTriple({0.0, {-1.0}, Measure::zero(1)}).validate(), InvalidArgument);
    EXPECT_THROW(HerglotzTriple({0.0, {1.0, 1.0}, Measure::zero(1)}).validate(), InvalidArgument);
    EXPECT_THROW(HerglotzTriple({NAN, {1.0}, Measure::zero(1)}).validate(), InvalidArgument);
}

TEST(Catalogue, Examples) {
    const EvaluableFunction f7 = catalogue::function("f7");
    EXPECT_EQ(f7(CutPlanePoint{cplx(3, 1), 2.0 * kI}), kI);
    EXPECT_EQ(f7(CutPlanePoint{-kI, 2.0 * kI}), -kI);
    const CutPlanePoint z{cplx(0.5, 2), cplx(-1, 0.3)};
    EXPECT_EQ(catalogue::function("f4")(z), 4.5 * kI - 1.0 / (kI + z[0]) - 1.0 / (kI + z[1]));
    EXPECT_EQ(catalogue::function("f2")(CutPlanePoint{cplx(1, -1), cplx(2, -3)}), -0.5 * kI);
    EXPECT_NEAR(std::abs(catalogue::function("f2")(CutPlanePoint{4.0 * kI, 4.0 * kI}) + 0.1 * kI), 0.0, 1e-16);
    EXPECT_THROW(catalogue::function("f8"), InvalidArgument);
}

TEST(Catalogue, UpperOnlyRestrictionRefusesOtherComponents) {
    const EvaluableFunction f = catalogue::function("f4-upper");
    EXPECT_NO_THROW(f(CutPlanePoint{kI, kI}));
    EXPECT_THROW(f(CutPlanePoint{-kI, kI}), InvalidArgument);
}

TEST(Catalogue, FourIsTwoPlusFiveLebesgue) {
    const EvaluableFunction f2 = catalogue::function("f2");
    const EvaluableFunction f4 = catalogue::function("f4");
    const EvaluableFunction five = herglotz_function({0.0, {0.0, 0.0}, Measure::lebesgue(2, 5.0)});
    for (std::uint32_t key = 0; key < 4; ++key)
        for (const CutPlanePoint& z : points_in(key, 10, 200 + key))
            EXPECT_LT(std::abs(f4(z) - f2(z) - five(z)), 1e-7);
}

TEST(Catalogue, FourAgainstAlternativeMeasure) {
    const EvaluableFunction f4 = catalogue::function("f4");
    const EvaluableFunction nu = herglotz_function({0.0, {0.0, 0.0}, catalogue::f4_alternative_measure()});
    for (const CutPlanePoint& z : points_in(0, 20, 300)) EXPECT_LT(std::abs(f4(z) - nu(z)), 1e-6);
    // They also agree on C- x C-, and differ on the mixed components by
    // -i/2 + 1/(z2 - z1) - 1/(i + z2) - 1/(i - z1).
    for (const CutPlanePoint& z : points_in(3, 10, 301)) EXPECT_LT(std::abs(f4(z) - nu(z)), 1e-6);
    for (const CutPlanePoint& z : points_in(1, 10, 302)) {
        const cplx gap = -0.5 * kI + 1.0 / (z[1] - z[0]) - 1.0 / (kI + z[1]) - 1.0 / (kI - z[0]);
        EXPECT_LT(std::abs(f4(z) - nu(z) - gap), 1e-6);
    }
    const CutPlanePoint witness{-0.1 * kI, 0.1 * kI};
    EXPECT_GT(std::abs(f4(witness) - nu(witness)), 1.0);
    EXPECT_LT(std::abs(f4(CutPlanePoint{-kI, kI}) - nu(CutPlanePoint{-kI, kI})), 1e-7);
}

TEST(Catalogue, ExpectedConditions) {
    EXPECT_EQ(catalogue::expected_conditions("f1"), (std::array<bool, 3>{true, false, false}));
    EXPECT_EQ(catalogue::expected_conditions("f5"), (std::array<bool, 3>{true, false, true}));
    EXPECT_THROW(catalogue::expected_conditions("g"), InvalidArgument);
}

TEST(Catalogue, NamedMeasures) {
    EXPECT_TRUE(catalogue::named_measure("mu2").has_value());
    EXPECT_EQ(catalogue::named_measure("lebesgue2")->dimension(), 2u);
    EXPECT_FALSE(catalogue::named_measure("unknown").has_value());
}

TEST(ImagProbe, Examples) {
    const double f2 = herglotz_imag_lower_bound_probe(catalogue::function("f2"), 200);
    EXPECT_GE(f2, -0.5);
    EXPECT_LT(f2, 0.0);
    EXPECT_EQ(herglotz_imag_lower_bound_probe(catalogue::function("f7"), 200), 1.0);
    EXPECT_GE(herglotz_imag_lower_bound_probe(catalogue::function("f4"), 200), 0.0);
}

TEST(ImagProbe, NevanlinnaTripleIsNonnegative) {
    const EvaluableFunction h = herglotz_function({0.3, {0.0, 0.0}, Measure::lebesgue(2, 2.0)});
    EXPECT_GE(herglotz_imag_lower_bound_probe(h, 20), -1e-10);
}

TEST(Combinators, AddAndAddLinear) {
    const EvaluableFunction f7 = catalogue::function("f7");
    const CutPlanePoint z{cplx(1, 2), cplx(-3, -1)};
    EXPECT_EQ(add_linear(f7, {1.0, 2.0})(z), f7(z) + z[0] + 2.0 * z[1]);
    EXPECT_EQ(add(f7, f7)(z), 2.0 * f7(z));
    EXPECT_THROW(add_linear(f7, {1.0}), InvalidArgument);
}

TEST(SampleRng, Deterministic) {
    SampleRng a(5), b(5);
    for (int k = 0; k < 10; ++k) EXPECT_EQ(a.uniform(-1, 1), b.uniform(-1, 1));
    SampleRng c(kDefaultSeed);
    const CutPlanePoint p = c.point(ComponentSignature::from_lower_mask(2, 2));
    EXPECT_GT(p[0].imag(), 0.0);
    EXPECT_LT(p[1].imag(), 0.0);
}
