#include <gtest/gtest.h>

#include <random>

#include "rnstab/simulator.hpp"
#include "rnstab/spectrum.hpp"
#include "rnstab/stability.hpp"
#include "support/oracle.hpp"

using namespace rnstab;

namespace {

const PhysicalParams kP = fixture_params();

ModalState history(double e1, double e0, double em1, double u0, double dt) {
    InitialData init{e1, e0, u0};
    init.eta_m1 = em1;
    return initial_state(init, dt);
}

}  // namespace

TEST(ExplicitStep, HighPrecisionValues) {
    const Mode mode = make_mode(kP, 1);
    const auto next = step_explicit_rn(history(1.0, 0.5, 0.25, 0.1, 5e-4), kP, mode, 1e3, 5e-4);
    EXPECT_NEAR(next.u, 72.86352976159857, 1e-12 * 72.9);
    EXPECT_NEAR(next.p, -761345.1031966585, 1e-12 * 761345.0);
    EXPECT_NEAR(next.eta, -0.3571283414509123, 1e-11);
    // Added-mass relation p = -rho_f mu (u^n - u^{n-1}) / dt.
    EXPECT_NEAR(next.p, -kP.rho_f * mode.mu * (next.u - 0.1) / 5e-4, 1e-12 * 761345.0);
    // Robin condition -alpha u + p = g.
    const double g = -1e3 * (1.0 - 0.5) / 5e-4 + kP.structure_mass() * (1.0 - 1.0 + 0.25) / (5e-4 * 5e-4) +
                     modal_stiffness(kP, mode) * 1.0;
    EXPECT_NEAR(-1e3 * next.u + next.p, g, 1e-12 * std::abs(g) + 1e-6);
}

TEST(ImplicitStep, HighPrecisionValue) {
    const std::array<double, 4> h{1.0, 0.5, 0.25, 0.25};
    EXPECT_NEAR(step_implicit_reference(std::span<const double, 4>(h), kP, make_mode(kP, 1), 5e-4),
                1.4960934699470701, 1e-14);
}

TEST(RecurrenceForms, DifferenceFormExpandsToFiveTerms) {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 100; ++t) {
        const auto p = oracle::random_params(rng, 2.0);
        const Mode mode = make_mode(p, 1 + t % 10);
        const double alpha = oracle::log_uniform(rng, 1.0, 1e4), dt = oracle::log_uniform(rng, 1e-4, 1e-2);
        // Substituting D_j = sum_k (-1)^k binom(j,k) eta^{n+1-k} must give the five-term coefficients.
        const auto [c_eta, c2, c3, c4] = recurrence_difference_coefficients(p, mode, alpha, dt);
        const std::array<double, 5> expanded{c2 + c3 + c4, c_eta - 2 * c2 - 3 * c3 - 4 * c4, c2 + 3 * c3 + 6 * c4,
                                             -c3 - 4 * c4, c4};
        const auto five = recurrence_coefficients(p, mode, alpha, dt);
        for (std::size_t k = 0; k < 5; ++k)
            EXPECT_NEAR(expanded[k], five[k], 1e-10 * std::max(std::abs(five[k]), std::abs(five[0])));
        // One step of each form from the same history.
        const std::array<double, 4> h{0.3, -0.2, 0.5, 0.1};
        const DifferenceHistory dh{h[0], h[0] - h[1], h[0] - 2 * h[1] + h[2], h[0] - 3 * h[1] + 3 * h[2] - h[3]};
        const double a = step_recurrence(std::span<const double, 4>(h), p, mode, alpha, dt);
        const double b = step_recurrence(dh, p, mode, alpha, dt).eta;
        EXPECT_NEAR(a, b, 1e-8 * std::max(1.0, std::abs(a)));
    }
}

TEST(Simulate, RecordIndexing) {
    const Discretization d{5e-5, 1, 10};
    const auto traj = simulate(Scheme::explicit_rn, kP, d, make_mode(kP, 1), 1e3, {1.0, 0.5, 0.2});
    ASSERT_EQ(traj.last_step(), 10);
    EXPECT_EQ(traj.at(1).eta, 1.0);
    EXPECT_EQ(traj.eta(0), 0.5);
    EXPECT_EQ(traj.eta(-1), 0.5);
    EXPECT_EQ(traj.eta(-2), 0.5);
    EXPECT_DOUBLE_EQ(traj.at(3).time, 3 * 5e-5);
    EXPECT_THROW((void)traj.eta(11), std::out_of_range);
    EXPECT_FALSE(traj.blow_up);
}

TEST(Simulate, AlphaZeroFlatHistoryIsFrozen) {
    for (const Scheme s : {Scheme::explicit_rn, Scheme::recurrence}) {
        const auto traj = simulate(s, kP, {5e-4, 1, 500}, make_mode(kP, 7), 0.0, {0.3, 0.3, 0.0});
        for (const auto& r : traj.series) EXPECT_EQ(r.eta, 0.3);
    }
}

TEST(Simulate, ExplicitAndRecurrenceAgree) {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 30; ++t) {
        const auto p = oracle::random_params(rng, 2.0);
        const Mode mode = make_mode(p, 1 + t % 5);
        const double alpha = oracle::log_uniform(rng, 1.0, 1e4);
        const double dt = oracle::log_uniform(rng, 1e-5, 1e-3);
        const Discretization d{dt, 1, 100};
        const InitialData init{1.0, 0.9, 0.1};
        const auto a = simulate(Scheme::explicit_rn, p, d, mode, alpha, init);
        const auto b = simulate(Scheme::recurrence, p, d, mode, alpha, init);
        ASSERT_EQ(a.last_step(), b.last_step());
        for (long n = 1; n <= a.last_step(); ++n) {
            const double scale = std::max(1.0, std::abs(a.at(n).eta));
            EXPECT_NEAR(a.at(n).eta, b.at(n).eta, 1e-8 * scale);
        }
    }
}

TEST(Simulate, Linearity) {
    const Mode mode = make_mode(kP, 4);
    const Discretization d{2e-5, 1, 300};
    const InitialData a{1.0, 0.7, -0.3}, b{-0.2, 0.4, 2.0};
    const InitialData sum{a.eta1 + 3 * b.eta1, a.eta0 + 3 * b.eta0, a.u0 + 3 * b.u0};
    for (const Scheme s : {Scheme::explicit_rn, Scheme::recurrence, Scheme::implicit_ref}) {
        const auto ta = simulate(s, kP, d, mode, 5e3, a);
        const auto tb = simulate(s, kP, d, mode, 5e3, b);
        const auto ts = simulate(s, kP, d, mode, 5e3, sum);
        const auto tc = simulate(s, kP, d, mode, 5e3, a.scaled(-2.5));
        double scale = 0.0;
        for (long n = 1; n <= ts.last_step(); ++n) {
            scale = std::max({scale, std::abs(ta.at(n).eta), std::abs(tb.at(n).eta)});
            EXPECT_NEAR(ts.at(n).eta, ta.at(n).eta + 3 * tb.at(n).eta, 1e-11 * scale);
            EXPECT_NEAR(tc.at(n).eta, -2.5 * ta.at(n).eta, 1e-11 * scale);
        }
    }
}

TEST(Simulate, ImplicitReferenceNeverGrows) {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 50; ++t) {
        const auto p = oracle::random_params(rng);
        const Mode mode = make_mode(p, 1 + t);
        const double dt = oracle::log_uniform(rng, 1e-6, 1e-1);
        const auto traj = simulate(Scheme::implicit_ref, p, {dt, 1, 2000}, mode, 0.0, {1.0, 1.0, 0.0});
        EXPECT_FALSE(traj.blow_up);
        double peak = 0.0;
        for (const auto& r : traj.series) peak = std::max(peak, std::abs(r.eta));
        EXPECT_LT(peak, 10.0);
    }
}

TEST(Simulate, BlowUpStopsTheRun) {
    const auto traj = simulate(Scheme::explicit_rn, kP, {5e-4, 1, 5000}, make_mode(kP, 50), 1e3, {1.0, 1.0, 0.0});
    ASSERT_TRUE(traj.blow_up.has_value());
    EXPECT_EQ(traj.last_step(), *traj.blow_up);
    EXPECT_LT(*traj.blow_up, 5000);
}

TEST(Simulate, RejectsBadInput) {
    EXPECT_THROW((void)simulate(Scheme::explicit_rn, kP, {0.0, 1, 10}, make_mode(kP, 1), 1.0, {1, 1, 0}),
                 InvalidParameter);
    EXPECT_THROW((void)simulate(Scheme::explicit_rn, kP, {1e-4, 1, 0}, make_mode(kP, 1), 1.0, {1, 1, 0}),
                 InvalidParameter);
    EXPECT_THROW((void)simulate(Scheme::explicit_rn, kP, {1e-4, 1, 10}, make_mode(kP, 1), -1.0, {1, 1, 0}),
                 InvalidParameter);
    EXPECT_THROW((void)parse_scheme("dirichlet"), InvalidParameter);
    EXPECT_EQ(parse_scheme("recurrence"), Scheme::recurrence);
}

TEST(KinematicDefect, VanishesOnExplicitRuns) {
    const Mode mode = make_mode(kP, 2);
    const double alpha = 3e3, dt = 1e-5;
    const auto traj = simulate(Scheme::explicit_rn, kP, {dt, 1, 400}, mode, alpha, {1.0, 0.99, 0.5});
    for (long n = 2; n < traj.last_step(); ++n) {
        const double scale = kinematic_defect_scale(traj, n, kP, alpha, dt);
        EXPECT_LE(std::abs(kinematic_defect(traj, n, kP, alpha, dt)), 1e-12 * scale) << n;
    }
    EXPECT_THROW((void)kinematic_defect(traj, 1, kP, alpha, dt), std::out_of_range);
}

TEST(GrowthRate, GeometricSequence) {
    std::vector<double> v;
    for (int n = 0; n < 400; ++n) v.push_back(std::pow(0.99, n) * std::cos(0.7 * n));
    const auto g = growth_rate(std::span<const double>(v), 100);
    ASSERT_TRUE(g.has_value());
    EXPECT_NEAR(*g, 0.99, 1e-4);
    std::vector<double> zeros(100, 0.0);
    EXPECT_FALSE(growth_rate(std::span<const double>(zeros), 10).has_value());
    EXPECT_THROW((void)growth_rate(std::span<const double>(zeros), 95), std::invalid_argument);
}

TEST(GrowthRate, RealRootTrend) {
    std::vector<double> v;
    for (int n = 0; n < 400; ++n) v.push_back(std::pow(1.003, n) + std::pow(0.5, n));
    const auto g = growth_rate(std::span<const double>(v), 100);
    ASSERT_TRUE(g.has_value());
    EXPECT_NEAR(*g, 1.003, 1e-9);
}

TEST(GrowthRate, SlowOscillationIsInconclusive) {
    std::vector<double> v;
    for (int n = 0; n < 2000; ++n) v.push_back(std::cos(1e-3 * n));
    EXPECT_FALSE(growth_rate(std::span<const double>(v), 1000).has_value());
}

TEST(FittedGrowthRate, SlowPairWithSubdominantPair) {
    std::vector<double> v;
    for (int n = 0; n < 2000; ++n)
        v.push_back(std::pow(1.0002, n) * std::cos(1e-3 * n + 0.3) + 0.8 * std::pow(0.9995, n) * std::cos(0.02 * n));
    const auto g = fitted_growth_rate(std::span<const double>(v), 1000);
    ASSERT_TRUE(g.has_value());
    EXPECT_NEAR(*g, 1.0002, 1e-9);
}

TEST(FittedGrowthRate, NegativeRealRoot) {
    std::vector<double> v;
    for (int n = 0; n < 600; ++n) v.push_back(std::pow(-1.01, n) + std::pow(0.7, n) + 0.5 * std::pow(0.2, n));
    const auto g = fitted_growth_rate(std::span<const double>(v), 100);
    ASSERT_TRUE(g.has_value());
    EXPECT_NEAR(*g, 1.01, 1e-9);
}

TEST(FittedGrowthRate, MatchesRootsOnRecurrenceRun) {
    const auto mode = make_mode(kP, 3);
    const double alpha = 800.0, dt = 2e-5;
    const auto traj = simulate(Scheme::recurrence, kP, {dt, 1, 2000}, mode, alpha, {1.0, 0.9, 0.1});
    const auto eta = traj.eta_series();
    const auto g = fitted_growth_rate(std::span<const double>(eta), 1000);
    ASSERT_TRUE(g.has_value());
    EXPECT_NEAR(*g / spectral_radius(kP, mode, alpha, dt), 1.0, 1e-8);
}

TEST(FittedGrowthRate, DegenerateTails) {
    std::vector<double> flat(200, 1.0);
    EXPECT_FALSE(fitted_growth_rate(std::span<const double>(flat), 50).has_value());
    std::vector<double> zeros(200, 0.0);
    EXPECT_FALSE(fitted_growth_rate(std::span<const double>(zeros), 50).has_value());
    EXPECT_THROW((void)fitted_growth_rate(std::span<const double>(flat), 190), std::invalid_argument);
}

TEST(SimulateSpectrum, ParallelMatchesSerial) {
    const auto spectrum = build_spectrum(kP, 30);
    const Discretization d{5e-5, 30, 300};
    const auto a = simulate_spectrum(Scheme::explicit_rn, kP, d, spectrum, 2e3, {1, 1, 0}, 1);
    const auto b = simulate_spectrum(Scheme::explicit_rn, kP, d, spectrum, 2e3, {1, 1, 0}, 4);
    ASSERT_EQ(a.modes.size(), b.modes.size());
    for (std::size_t i = 0; i < a.modes.size(); ++i) EXPECT_EQ(a.modes[i].eta_series(), b.modes[i].eta_series());
    EXPECT_EQ(a.first_blow_up, b.first_blow_up);
}
