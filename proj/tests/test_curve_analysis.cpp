#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "faraday/curve_analysis.hpp"
#include "faraday/single_photon.hpp"

using namespace faraday;

TEST(CurveAnalysis, LorentzianFwhm) {
    const double w = 0.37;
    const auto x = linspace(-5.0, 5.0, 20001);
    std::vector<double> y;
    for (double v : x) y.push_back(1.0 / (1.0 + (v - 0.2) * (v - 0.2) / (w * w)));
    const auto s = analyze_peak(x, y);
    EXPECT_NEAR(s.fwhm, 2.0 * w, 1e-6);
    EXPECT_NEAR(s.location, 0.2, 5e-4);
    EXPECT_DOUBLE_EQ(s.value, y[s.index]);
}

TEST(CurveAnalysis, FlatCurveHasNoFeature) {
    const auto x = linspace(0.0, 1.0, 11);
    const std::vector<double> y(11, 2.5);
    try {
        (void)analyze_peak(x, y);
        FAIL();
    } catch (const NoFeatureError& e) {
        EXPECT_EQ(e.reason(), NoFeatureError::Reason::flat);
    }
    const std::vector<double> zero(11, 0.0);
    EXPECT_THROW((void)analyze_peak(x, zero), NoFeatureError);
}

TEST(CurveAnalysis, TruncatedPeakIsUnresolved) {
    const auto x = linspace(0.0, 1.0, 101);
    std::vector<double> y;
    for (double v : x) y.push_back(std::exp(-v));
    try {
        (void)analyze_peak(x, y);
        FAIL();
    } catch (const NoFeatureError& e) {
        EXPECT_EQ(e.reason(), NoFeatureError::Reason::unresolved);
    }
}

TEST(CurveAnalysis, TiesPreferSmallerMagnitude) {
    const std::vector<double> x{-2, -1, 0.5, 1, 2};
    const std::vector<double> y{0, 3, 1, 3, 0};
    EXPECT_EQ(argmax_prefer_center(x, y), 1u);
    const std::vector<double> x2{-2, -1, 0.5, 0.9, 2};
    EXPECT_EQ(argmax_prefer_center(x2, y), 3u);
}

TEST(CurveAnalysis, GridValidation) {
    EXPECT_THROW(require_grid(std::vector<double>{0, 1}, 3), std::invalid_argument);
    EXPECT_THROW(require_grid(std::vector<double>{0, 1, 1}, 3), std::invalid_argument);
    EXPECT_NO_THROW(require_grid(std::vector<double>{0, 1, 2}, 3));
    const std::vector<double> x{0, 1, 2}, y{1, std::nan(""), 0};
    EXPECT_THROW((void)analyze_peak(x, y), std::invalid_argument);
}

TEST(CurveAnalysis, GoldenSection) {
    const double m = golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, -1.0, 2.0, 1e-10);
    EXPECT_NEAR(m, 0.3, 1e-9);
}

TEST(CurveAnalysis, LinspaceHitsEndpointsExactly) {
    const auto v = linspace(-0.01, 0.01, 4001);
    EXPECT_EQ(v.front(), -0.01);
    EXPECT_EQ(v.back(), 0.01);
    EXPECT_EQ(v.size(), 4001u);
}
