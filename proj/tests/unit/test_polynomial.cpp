#include <gtest/gtest.h>

#include <random>

#include "rnstab/polynomial.hpp"
#include "support/oracle.hpp"

using namespace rnstab;

namespace {

// Distance from each computed root to the nearest oracle root, relative to the
// largest modulus.
double worst_mismatch(const RootSet& got, const std::vector<oracle::cld>& want) {
    const double scale = std::max(1.0, static_cast<double>(oracle::max_modulus(want)));
    double worst = 0.0;
    for (const auto& r : got.roots) {
        double best = INFINITY;
        for (const auto& w : want)
            best = std::min(best, static_cast<double>(std::abs(oracle::cld(r.real(), r.imag()) - w)));
        worst = std::max(worst, best / scale);
    }
    return worst;
}

}  // namespace

TEST(QuarticRoots, KnownFactorization) {
    // (x - 1)(x + 2)(x^2 + 1) = x^4 + x^3 - x^2 + x - 2
    const auto rs = quartic_roots(QuarticCoefficients{{1.0, 1.0, -1.0, 1.0, -2.0}});
    EXPECT_NEAR(rs.spectral_radius, 2.0, 1e-15);
    EXPECT_TRUE(rs.all_simple());
    EXPECT_NEAR(rs.roots[0].real(), -2.0, 1e-15);
    int unit = 0;
    for (double m : rs.moduli) unit += std::abs(m - 1.0) < 1e-15;
    EXPECT_EQ(unit, 3);
}

TEST(QuarticRoots, ConjugatePairsAreExact) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n01;
    for (int t = 0; t < 300; ++t) {
        QuarticCoefficients q{{1.0, n01(rng), n01(rng), n01(rng), n01(rng)}};
        const auto rs = quartic_roots(q);
        for (const auto& r : rs.roots) {
            if (r.imag() == 0.0) continue;
            const auto partner = std::find(rs.roots.begin(), rs.roots.end(), std::conj(r));
            EXPECT_NE(partner, rs.roots.end());
        }
    }
}

TEST(QuarticRoots, AgreesWithAberthOracle) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n01;
    for (int t = 0; t < 500; ++t) {
        QuarticCoefficients q{};
        for (double& c : q.c) c = n01(rng) * std::pow(10.0, 2.0 * n01(rng));
        const auto rs = quartic_roots(q);
        const auto want = oracle::aberth_roots({q.c[0], q.c[1], q.c[2], q.c[3], q.c[4]});
        // The Aberth roots are exact for the same double coefficients, so
        // only conditioning separates the two.
        EXPECT_LT(worst_mismatch(rs, want), 1e-6) << "trial " << t;
    }
}

TEST(QuarticRoots, RepeatedRootsAreFlagged) {
    // A computed quadruple root splits by about eps^(1/4).
    const auto rs = quartic_roots(QuarticCoefficients{{1.0, -4.0, 6.0, -4.0, 1.0}});
    for (const auto& r : rs.roots) EXPECT_NEAR(std::abs(r - 1.0), 0.0, 1e-3);
    const auto rs2 = make_root_set({1.0, 1.0, 1.0, 1.0});
    for (bool s : rs2.simple) EXPECT_FALSE(s);
}

TEST(QuarticRoots, RejectsDegenerateInput) {
    EXPECT_THROW((void)quartic_roots(QuarticCoefficients{{0.0, 1.0, 1.0, 1.0, 1.0}}), std::invalid_argument);
    EXPECT_THROW((void)quartic_roots(QuarticCoefficients{{1.0, NAN, 1.0, 1.0, 1.0}}), std::invalid_argument);
}

TEST(QuarticRoots, SortedByModulus) {
    const auto rs = quartic_roots(QuarticCoefficients{{1.0, -10.0, 35.0, -50.0, 24.0}});
    for (std::size_t i = 1; i < 4; ++i) EXPECT_GE(rs.moduli[i - 1], rs.moduli[i]);
    EXPECT_NEAR(rs.moduli[0], 4.0, 1e-13);
    EXPECT_NEAR(rs.moduli[3], 1.0, 1e-13);
}
