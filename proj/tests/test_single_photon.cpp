#include <gtest/gtest.h>

#include <cmath>

#include "faraday/single_photon.hpp"
#include "faraday/verification.hpp"

using namespace faraday;

// With kappa_ex = kappa_i = G = 1, zero detunings and gamma = 0 the amplitudes
// reduce to r_VH = 2i u/(4 + u^2), r_HH = -u^2/(4 + u^2), u = 1/delta.
TEST(Probabilities, LosslessBaselineClosedForm) {
    SystemParams p = baseline_params(1.0);
    p.gamma = 0.0;
    for (double d : {0.05, 0.3, 0.5, 0.9, 1.7, -0.4}) {
        p.delta = d;
        const auto P = outcome_probabilities(p);
        const double x = 4.0 * d * d;
        EXPECT_NEAR(P.P_V, x / ((1 + x) * (1 + x)), 1e-14) << d;
        EXPECT_NEAR(P.P_H, 1.0 / ((1 + x) * (1 + x)), 1e-14) << d;
    }
    p.delta = 0.5;
    EXPECT_NEAR(outcome_probabilities(p).P_V, 0.25, 1e-15);
}

TEST(Probabilities, SumToOne) {
    verify::ParamSampler draw(31);
    for (int i = 0; i < 2000; ++i) {
        const auto P = outcome_probabilities(draw());
        ASSERT_NEAR(P.P_V + P.P_H + P.P_empty, 1.0, 4e-16);
        ASSERT_GE(P.P_V, 0.0);
        ASSERT_GE(P.P_H, 0.0);
        ASSERT_GE(P.P_empty, -1e-15);
    }
}

TEST(Probabilities, PolarFormAgrees) {
    verify::ParamSampler draw(32);
    for (int i = 0; i < 500; ++i) {
        const auto pr = polarized_reflection(draw());
        const auto a = outcome_probabilities(pr);
        const auto b = outcome_probabilities_polar(pr);
        ASSERT_NEAR(a.P_V, b.P_V, 1e-12);
        ASSERT_NEAR(a.P_H, b.P_H, 1e-12);
        ASSERT_NEAR(a.P_empty, b.P_empty, 1e-12);
    }
}

TEST(Probabilities, QuadOracleAgrees) {
    verify::ParamSampler draw(33);
    for (int i = 0; i < 1000; ++i) {
        const auto p = draw();
        const auto a = outcome_probabilities(p);
        const auto q = verify::quad_probabilities(p, p.delta);
        ASSERT_NEAR(a.P_V, static_cast<double>(q.P_V), 1e-13 + 1e-10 * a.P_V);
        ASSERT_NEAR(a.P_H, static_cast<double>(q.P_H), 1e-13);
    }
}

TEST(Probabilities, DerivativesMatchRichardson) {
    verify::ParamSampler draw(34);
    for (int i = 0; i < 300; ++i) {
        const auto p = draw();
        const auto a = probability_derivatives(p);
        const auto n = verify::richardson_derivatives(p, 1e-6);
        for (int c = 0; c < 3; ++c) {
            if (std::abs(a[c]) > 1e-10) {
                ASSERT_LT(std::abs(a[c] - n[c]) / std::abs(a[c]), 1e-8) << i << " " << c;
            }
        }
    }
}

TEST(Fisher, MatchesOracleDefinition) {
    // F = (mu_B g_e)^2 sum dP^2/P with oracle probabilities and derivatives
    verify::ParamSampler draw(35);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const auto p = draw();
        const auto q = verify::quad_probabilities(p, p.delta);
        const std::array<double, 3> P{double(q.P_V), double(q.P_H), double(q.P_empty)};
        if (*std::min_element(P.begin(), P.end()) < 1e-6) continue;
        const auto d = verify::richardson_derivatives(p, 1e-6);
        double sum = 0.0;
        for (int c = 0; c < 3; ++c) sum += d[c] * d[c] / P[c];
        const double expected = PhysicalConstants::mu_B_ge * PhysicalConstants::mu_B_ge * sum;
        ASSERT_NEAR(fisher_information_sp(p).si, expected, 1e-7 * expected) << i;
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(Fisher, VanishingProbabilityUsesContinuousLimit) {
    SystemParams p = overcoupled_params(1.0);
    const double at_zero = fisher_information_sp(p).scaled;
    p.delta = 1e-7;
    const double nearby = fisher_information_sp(p).scaled;
    EXPECT_TRUE(std::isfinite(at_zero));
    EXPECT_NEAR(at_zero, nearby, 1e-4 * nearby);
    p.delta = 0.0;
    EXPECT_NEAR(nominal_fisher_v(p).scaled, at_zero, 1e-3 * at_zero);  // V port dominates at the centre
}

TEST(Fisher, SingularRegimeStaysFinite) {
    SystemParams p = baseline_params(1.0);
    p.gamma = 0.0;
    const auto f = fisher_information_sp(p);
    EXPECT_TRUE(std::isfinite(f.si));
    EXPECT_GE(f.si, 0.0);
}

TEST(Fisher, ScaledUnitsAreInvariantUnderRateScaling) {
    SystemParams p = baseline_params(1.0);
    p.delta = 0.1;
    const double a = fisher_information_sp(p).scaled;
    const double b = fisher_information_sp(p.scaled_rates(28e6)).scaled;
    EXPECT_NEAR(a, b, 1e-10 * a);
}

TEST(Fisher, BaselineCurve) {
    const auto c = adaptive_fisher_curve(baseline_params(1.0));
    EXPECT_NEAR(c.peak_value, 28.9493, 1e-3);
    EXPECT_NEAR(std::abs(c.peak_location), 0.0684, 1e-3);
    EXPECT_NEAR(c.fwhm, 0.61427, 1e-3);
}

TEST(Fisher, CurveRejectsSmallGrids) {
    EXPECT_THROW((void)fisher_curve(baseline_params(1.0), linspace(-1, 1, 10)), std::invalid_argument);
}

TEST(Fisher, NoCouplingMeansNoFeature) {
    SystemParams p = baseline_params(1.0);
    p.G = 0.0;
    EXPECT_THROW((void)fisher_curve(p, linspace(-1, 1, 101)), NoFeatureError);
}

TEST(Sensitivity, BaselineValue) {
    const auto r = sensitivity_sp(baseline_params(1.0));
    EXPECT_NEAR(r.value_scaled, 0.2371, 2e-4);
    EXPECT_DOUBLE_EQ(r.tau_m, 1.0 / r.fwhm);
    EXPECT_FALSE(r.convention_notes.empty());
}

TEST(Sensitivity, ScalesAsSqrtKappa) {
    const auto a = sensitivity_sp(overcoupled_params(1.0));
    const auto b = sensitivity_sp(overcoupled_params(28e6));
    EXPECT_NEAR(a.value_scaled, b.value_scaled, 1e-9 * a.value_scaled);
    EXPECT_NEAR(b.value, a.value * std::sqrt(28e6), 1e-9 * b.value);
}

TEST(Sensitivity, ExplicitGridAgreesWithAdaptive) {
    const auto a = sensitivity_sp(baseline_params(1.0));
    const auto b = sensitivity_sp(baseline_params(1.0), linspace(-2.0, 2.0, 40001));
    EXPECT_NEAR(a.value, b.value, 1e-4 * a.value);
}

TEST(OptimalBias, MatchesFisherPeak) {
    const auto o = optimal_bias(baseline_params(1.0), 0.0, 0.5);
    EXPECT_NEAR(o.A_opt, 0.068431, 1e-5);
    EXPECT_NEAR(o.fisher.scaled, 28.9493, 1e-3);
}

TEST(OptimalBias, NoInteriorMaximum) {
    EXPECT_THROW((void)optimal_bias(baseline_params(1.0), 1.0, 2.0), NoInteriorMaximumError);
    EXPECT_THROW((void)optimal_bias(baseline_params(1.0), 1.0, 1.0), std::invalid_argument);
}

TEST(Fisher, AdaptiveCurveWithTwinPeaks) {
    // two equal peaks around delta = 0 separated by a dip just below half maximum
    SystemParams p = baseline_params(1.0);
    p.G = 0.2;
    p.kappa_ex = 0.5;
    const auto a = adaptive_fisher_curve(p);
    const auto dense = fisher_curve(p, linspace(-0.1, 0.1, 200001));
    EXPECT_NEAR(a.peak_value, dense.peak_value, 1e-6 * dense.peak_value);
    EXPECT_NEAR(a.fwhm, dense.fwhm, 1e-4 * dense.fwhm);
}
