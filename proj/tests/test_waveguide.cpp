#include <gtest/gtest.h>

#include <qpmspdc/waveguide.hpp>

#include <random>

#include "oracles.hpp"

using namespace qpmspdc;

namespace {

WaveguideSpec guide(double alpha) { return {alpha, 1e-3, congruent_lithium_niobate()}; }

double omega(double nm) { return 2.0 * oracle::pi * oracle::c0 / (nm * 1e-9); }

} // namespace

TEST(Waveguide, ZeroAlphaGivesZeroGamma) { EXPECT_EQ(mode_gamma(guide(0.0), omega(1064.0)), 0.0); }

TEST(Waveguide, GammaScalesAsRootAlpha) {
    const double w = omega(1064.0);
    EXPECT_NEAR(mode_gamma(guide(8e5), w) / mode_gamma(guide(4e5), w), std::sqrt(2.0), 1e-14);
}

TEST(Waveguide, GammaHandCalculation) {
    // gamma^2 = n0 omega alpha / c = k alpha with k = 2 pi n / lambda
    const double k = oracle::k_bulk(1064.0);
    const double gamma = mode_gamma(guide(4e5), omega(1064.0));
    EXPECT_GT(gamma, 0.0);
    EXPECT_NEAR(gamma, std::sqrt(k * 4e5), 1e-9 * gamma);
    EXPECT_NEAR(gamma, 2.2566971e6, 1.0); // frozen
}

TEST(Waveguide, BulkLimit) {
    EXPECT_NEAR(propagation_constant(guide(0.0), omega(1064.0)), oracle::k_bulk(1064.0), 1e-8 * oracle::k_bulk(1064.0));
    EXPECT_EQ(propagation_constant(guide(0.0), omega(1064.0)), bulk_wavenumber(guide(0.0), omega(1064.0)));
}

TEST(Waveguide, GuidedBetaBelowBulk) {
    for (double a : {1.0, 1e3, 4e5, 1e6})
        EXPECT_LT(propagation_constant(guide(a), omega(1064.0)), bulk_wavenumber(guide(a), omega(1064.0)));
}

TEST(Waveguide, UnsupportedModeIsGuidanceError) {
    const double w = omega(1064.0);
    const double k = bulk_wavenumber(guide(0.0), w);
    EXPECT_THROW(propagation_constant(guide(k), w), GuidanceError);
    EXPECT_THROW(propagation_constant(guide(2.0 * k), w), GuidanceError);
    EXPECT_THROW(cutoff_constant(guide(k / 3.0), w), GuidanceError);
    EXPECT_NO_THROW(propagation_constant(guide(k / 3.0), w));
}

TEST(Waveguide, CutoffEqualsBulkWithoutGradient) {
    const double w = omega(1064.0);
    EXPECT_EQ(cutoff_constant(guide(0.0), w), propagation_constant(guide(0.0), w));
    EXPECT_FALSE(is_single_mode(guide(0.0), w));
}

TEST(Waveguide, CutoffBelowBeta) {
    const double w = omega(1064.0);
    EXPECT_LT(cutoff_constant(guide(4e5), w), propagation_constant(guide(4e5), w));
    EXPECT_TRUE(is_single_mode(guide(4e5), w));
}

TEST(Waveguide, CutoffIsBetaOfTripledAlpha) {
    const double w = omega(810.0);
    EXPECT_NEAR(cutoff_constant(guide(4e5), w), propagation_constant(guide(1.2e6), w), 1e-12 * 1e7);
}

TEST(Waveguide, SingleModePredicateCases) {
    const double w = omega(1064.0);
    const double k = bulk_wavenumber(guide(0.0), w);
    EXPECT_FALSE(is_single_mode(guide(0.0), w));
    EXPECT_TRUE(is_single_mode(guide(4e5), w));
    EXPECT_THROW(is_single_mode(guide(0.5 * k), w), GuidanceError);
    const auto mode = guided_mode(guide(4e5), w);
    EXPECT_TRUE(mode.single_mode);
    EXPECT_EQ(mode.omega, w);
    EXPECT_GT(mode.beta, 0.0);
    EXPECT_GT(mode.gamma, 0.0);
}

TEST(Waveguide, OutOfWindowPropagatesRangeError) {
    EXPECT_THROW(mode_gamma(guide(4e5), omega(300.0)), RangeError);
}

TEST(Waveguide, InvalidSpecRejected) {
    EXPECT_THROW(validate(guide(-1.0)), InputError);
    EXPECT_THROW(validate(WaveguideSpec{1.0, 0.0, congruent_lithium_niobate()}), InputError);
}

TEST(Waveguide, StrictOrderingOnRandomGrid) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lam(400.0, 5000.0), la(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double w = omega(lam(rng));
        const double k = bulk_wavenumber(guide(0.0), w);
        // alpha up to just under the cutoff limit k / 3, log-distributed
        const double alpha = (k / 3.0) * std::pow(10.0, -6.0 * la(rng)) * 0.999;
        const auto wg = guide(alpha);
        const double bc = cutoff_constant(wg, w), b = propagation_constant(wg, w);
        ASSERT_LT(bc, b);
        ASSERT_LT(b, k);
    }
}

TEST(Waveguide, BetaIncreasesWithOmega) {
    const auto wg = guide(4e5);
    double prev = propagation_constant(wg, omega(5000.0));
    for (double l = 4999.0; l >= 400.0; l -= 1.0) {
        const double b = propagation_constant(wg, omega(l));
        ASSERT_GT(b, prev) << l;
        prev = b;
    }
}

TEST(Waveguide, GammaRoundTrip) {
    for (double a : {1.0, 4e5, 3e6})
        for (double l : {532.0, 810.0, 1550.0}) {
            const auto wg = guide(a);
            const double w = omega(l);
            const double g = mode_gamma(wg, w);
            const double n0 = refractive_index(wg.core_index, l);
            EXPECT_NEAR(g * g * oracle::c0 / (n0 * w), a, 1e-12 * a);
        }
}
