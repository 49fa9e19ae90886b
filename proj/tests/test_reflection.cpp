#include <gtest/gtest.h>

#include <cmath>

#include "faraday/langevin.hpp"
#include "faraday/reflection.hpp"
#include "faraday/verification.hpp"

using namespace faraday;

namespace {

double rel(cplx a, cplx b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

Mat2 adjoint(const Mat2& m) {
    return {{{std::conj(m[0][0]), std::conj(m[1][0])}, {std::conj(m[0][1]), std::conj(m[1][1])}}};
}

Mat2 mul(const Mat2& a, const Mat2& b) {
    Mat2 c{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}

}  // namespace

TEST(Reflection, BareCavityIsLorentzian) {
    SystemParams p = baseline_params(1.0);
    p.G = 0.0;
    p.Delta_r = 0.7;
    const cplx expected = -1.0 + 2.0 * p.kappa_ex / (cplx(p.kappa(), p.Delta_r));
    EXPECT_LT(rel(reflection_coefficient(p, Branch::plus).value, expected), 1e-15);
    EXPECT_EQ(cross_amplitude(p), cplx{});
}

TEST(Reflection, CriticallyCoupledEmptyCavityAbsorbsEverything) {
    SystemParams p = baseline_params(1.0);
    p.G = 0.0;
    EXPECT_NEAR(std::abs(reflection_coefficient(p, Branch::minus).value), 0.0, 1e-15);
}

TEST(Reflection, MatchesLangevinSteadyState) {
    verify::ParamSampler draw(11);
    for (int i = 0; i < 2000; ++i) {
        const auto p = draw();
        for (Branch b : {Branch::plus, Branch::minus}) {
            ASSERT_LT(rel(reflection_coefficient(p, b).value, oracle_reflection(p, b)), 1e-10) << i;
        }
    }
}

TEST(Reflection, CrossAmplitudeMatchesDifferenceOfBranches) {
    verify::ParamSampler draw(12);
    for (int i = 0; i < 2000; ++i) {
        const auto p = draw();
        const cplx naive = 0.5 * (reflection_coefficient(p, Branch::plus).value -
                                  reflection_coefficient(p, Branch::minus).value);
        const cplx fast = cross_amplitude(p);
        ASSERT_LE(std::abs(naive - fast), 1e-13 * std::max(1.0, std::abs(fast))) << i;
    }
}

TEST(Reflection, ReflectionIsPassive) {
    verify::ParamSampler draw(13);
    for (int i = 0; i < 2000; ++i) {
        const auto p = draw();
        ASSERT_LE(std::abs(reflection_coefficient(p, Branch::plus).value), 1.0 + 1e-12);
        ASSERT_LE(std::abs(reflection_coefficient(p, Branch::minus).value), 1.0 + 1e-12);
    }
}

TEST(Reflection, LosslessSpinConservesEnergyAcrossBothPorts) {
    // with gamma = 0 every photon leaves through the external or the internal port
    verify::ParamSampler draw(14);
    for (int i = 0; i < 500; ++i) {
        SystemParams p = draw();
        p.gamma = 0.0;
        const auto m = scattering_matrices(p);
        const Mat2 sum = [&] {
            Mat2 a = mul(adjoint(m.S_r), m.S_r);
            const Mat2 b = mul(adjoint(m.S_t), m.S_t);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) a[r][c] += b[r][c];
            return a;
        }();
        ASSERT_NEAR(std::abs(sum[0][0] - 1.0), 0.0, 1e-12) << i;
        ASSERT_NEAR(std::abs(sum[1][1] - 1.0), 0.0, 1e-12) << i;
        ASSERT_NEAR(std::abs(sum[0][1]), 0.0, 1e-12) << i;
    }
}

TEST(Reflection, ScatteringMatrixLayout) {
    SystemParams p = overcoupled_params(1.0);
    p.delta = 3e-3;
    const auto pr = polarized_reflection(p);
    const auto m = scattering_matrices(p);
    EXPECT_EQ(m.S_r[0][0], pr.r_HH);
    EXPECT_EQ(m.S_r[1][1], pr.r_HH);
    EXPECT_EQ(m.S_r[0][1], I * pr.r_VH);
    EXPECT_EQ(m.S_r[1][0], -I * pr.r_VH);
    const double k = std::sqrt(p.kappa_i / p.kappa_ex);
    EXPECT_LT(rel(m.S_t[0][0], k * (1.0 + pr.r_HH)), 1e-15);
    EXPECT_LT(rel(m.S_t[1][0], -I * k * pr.r_VH), 1e-15);
}

TEST(Reflection, ScatteringMatricesNeedExternalCoupling) {
    SystemParams p = baseline_params(1.0);
    p.kappa_ex = 0.0;
    EXPECT_THROW((void)scattering_matrices(p), std::domain_error);
}

TEST(Reflection, CircularBasisRoundTrip) {
    const Vec2 v{cplx(0.3, -1.2), cplx(2.0, 0.5)};
    const auto back = basis_convert(basis_convert(v, BasisDirection::hv_to_circular), BasisDirection::circular_to_hv);
    EXPECT_LT(std::abs(back[0] - v[0]), 1e-15);
    EXPECT_LT(std::abs(back[1] - v[1]), 1e-15);
    // H is an equal superposition of the two circular states
    const auto h = basis_convert({1.0, 0.0}, BasisDirection::hv_to_circular);
    EXPECT_NEAR(std::abs(h[0]), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(std::abs(h[1]), std::sqrt(0.5), 1e-15);
}

TEST(Reflection, FaradayAngleIsHalfPhaseDifference) {
    const cplx rp = std::polar(0.8, 1.1);
    const cplx rm = std::polar(0.5, 0.3);
    EXPECT_NEAR(faraday_angle(rp, rm), 0.4, 1e-15);
    EXPECT_NEAR(faraday_angle(rm, rp), -0.4, 1e-15);
    // principal value, no unwrapping
    EXPECT_NEAR(faraday_angle(std::polar(1.0, 3.0), std::polar(1.0, -3.0)), 0.5 * (6.0 - 2.0 * M_PI), 1e-14);
}

TEST(Reflection, PolarFormReproducesLinearAmplitudes) {
    SystemParams p = baseline_params(1.0);
    p.delta = 0.21;
    const auto pr = polarized_reflection(p);
    EXPECT_NEAR(pr.r_bar, 0.5 * (std::abs(pr.r_plus) + std::abs(pr.r_minus)), 1e-15);
    EXPECT_NEAR(pr.delta_r, 0.5 * (std::abs(pr.r_plus) - std::abs(pr.r_minus)), 1e-15);
}

TEST(Reflection, SingularSpinResonanceReflectsCompletely) {
    SystemParams p = baseline_params(1.0);
    p.gamma = 0.0;
    const auto r = reflection_coefficient(p, Branch::plus);
    EXPECT_TRUE(r.singular);
    EXPECT_EQ(r.value, cplx(-1.0, 0.0));
    // approaching the singular point continuously
    p.delta = 1e-9;
    EXPECT_LT(std::abs(reflection_coefficient(p, Branch::plus).value + 1.0), 1e-8);
}

TEST(Reflection, JetDerivativesMatchFiniteDifferences) {
    SystemParams p = baseline_params(1.0);
    p.delta = 0.13;
    p.Delta_r = 0.4;
    const double h = 1e-5;
    for (Branch b : {Branch::plus, Branch::minus}) {
        const auto j = reflection_jet(p, b);
        SystemParams up = p, dn = p;
        up.delta += h;
        dn.delta -= h;
        const cplx ru = reflection_coefficient(up, b).value, rd = reflection_coefficient(dn, b).value;
        EXPECT_LT(std::abs(j.d1 - (ru - rd) / (2 * h)), 1e-8);
        EXPECT_LT(std::abs(j.d2 - (ru - 2.0 * j.value + rd) / (h * h)), 1e-4);
    }
}
