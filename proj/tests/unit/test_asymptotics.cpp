#include <gtest/gtest.h>

#include <random>

#include "rnstab/asymptotics.hpp"
#include "rnstab/stability.hpp"
#include "support/oracle.hpp"

using namespace rnstab;

namespace {

RootBranches branches(const ReducedGroups& g, double z) {
    const auto split = split_branches(quartic_roots(shifted_P(g, z)));
    EXPECT_TRUE(split.has_value());
    return split.value_or(RootBranches{});
}

}  // namespace

TEST(Asymptotics, LeadingTermsMatchComputedRoots) {
    const ReducedGroups g{50.0, 20.0, 300.0};
    for (double z : {1e-3, 1e-4, 1e-5}) {
        const auto b = branches(g, z);
        const auto a = root_asymptotics(g, z);
        EXPECT_NEAR(b.u1 / a.u1, 1.0, 20.0 * z * (g.A + g.B));
        EXPECT_NEAR(b.v1_sq / a.v1_sq, 1.0, 20.0 * z * (g.A + g.B));
        EXPECT_NEAR(b.u2 / a.u2, 1.0, 20.0 * z * (g.A + g.B));
        EXPECT_NEAR(b.v2_sq / a.v2_sq, 1.0, 20.0 * z * (g.A + g.B));
    }
}

TEST(Asymptotics, ModuliAboveOne) {
    const ReducedGroups g{7.0, 3.0, 11.0};
    const auto a = root_asymptotics(g, 1e-3);
    EXPECT_GT(a.modulus1_sq, 1.0);
    EXPECT_GT(a.modulus2_sq, 1.0);
    // Product of the four roots of P is 1 + B z.
    EXPECT_NEAR(a.modulus1_sq, 1.0 + g.B * 1e-3, 1e-15);
}

TEST(Sextic, VanishesAtComputedRoots) {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 50; ++t) {
        const ReducedGroups g{oracle::log_uniform(rng, 1e-1, 1e2), oracle::log_uniform(rng, 1e-1, 1e2),
                              oracle::log_uniform(rng, 1e-1, 1e3)};
        const double z = 1e-3;
        const auto rs = quartic_roots(shifted_P(g, z));
        const auto sextic = sextic_coefficients(g, z);
        for (const auto& r : rs.roots) {
            if (r.imag() == 0.0) continue;
            EXPECT_LE(std::abs(sextic(r.real())), 1e-8 * sextic.term_scale(r.real()));
            const double v2 = v_squared_branch(g, z, r.real());
            EXPECT_NEAR(v2, r.imag() * r.imag(), 1e-8 * r.imag() * r.imag());
        }
    }
}

TEST(Asymptotics, RejectsBadInput) {
    EXPECT_THROW((void)root_asymptotics({1, 1, 1}, 0.0), InvalidParameter);
    EXPECT_THROW((void)root_asymptotics({0, 1, 1}, 1e-3), InvalidParameter);
    EXPECT_FALSE(split_branches(make_root_set({1.0, 2.0, 3.0, 4.0})).has_value());
}
