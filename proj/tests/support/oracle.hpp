#pragma once

// Reference computations for the test suites. Nothing here calls into the
// library's root finder: polynomial roots come from Aberth-Ehrlich iteration
// in long double, started on a circle from the Cauchy bound.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "rnstab/model.hpp"

namespace rnstab::oracle {

using cld = std::complex<long double>;

/// Roots of sum_k c[k] x^(n-k) (c[0] leading) by simultaneous Aberth iteration.
inline std::vector<cld> aberth_roots(const std::vector<long double>& c, int max_iter = 500) {
    const std::size_t n = c.size() - 1;
    long double bound = 0.0L;
    for (std::size_t k = 1; k <= n; ++k) bound = std::max(bound, std::abs(c[k] / c[0]));
    bound += 1.0L;
    std::vector<cld> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const long double angle = 2.0L * std::numbers::pi_v<long double> * (k + 0.25L) / n + 0.4L;
        z[k] = std::polar(0.5L * bound, angle);
    }
    auto eval = [&](cld x) {
        cld p = c[0], dp = 0.0L;
        for (std::size_t k = 1; k <= n; ++k) {
            dp = dp * x + p;
            p = p * x + c[k];
        }
        return std::pair{p, dp};
    };
    for (int it = 0; it < max_iter; ++it) {
        long double worst = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            const auto [p, dp] = eval(z[i]);
            if (p == cld(0.0L)) continue;
            const cld ratio = p / dp;
            cld repulsion = 0.0L;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) repulsion += 1.0L / (z[i] - z[j]);
            const cld step = ratio / (1.0L - ratio * repulsion);
            z[i] -= step;
            worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(z[i])));
        }
        if (worst < 1e-30L) break;
    }
    std::sort(z.begin(), z.end(), [](const cld& a, const cld& b) { return std::abs(a) > std::abs(b); });
    return z;
}

inline long double max_modulus(const std::vector<cld>& roots) {
    long double out = 0.0L;
    for (const auto& r : roots) out = std::max(out, std::abs(r));
    return out;
}

/// log-uniform sample on [lo, hi].
inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

/// Positive parameter set with each field spread over `decades` decades
/// around the hemodynamic fixture.
inline PhysicalParams random_params(std::mt19937_64& rng, double decades = 4.0) {
    const double f = std::pow(10.0, decades / 2.0);
    const PhysicalParams base{1.0, 1.1, 0.1, 4.0e4, 4.0e4, 0.5, 5.0};
    return PhysicalParams{log_uniform(rng, base.rho_f / f, base.rho_f * f),
                          log_uniform(rng, base.rho_s / f, base.rho_s * f),
                          log_uniform(rng, base.h_s / f, base.h_s * f),
                          log_uniform(rng, base.beta / f, base.beta * f),
                          log_uniform(rng, base.psi / f, base.psi * f),
                          log_uniform(rng, 0.1, 1.0),
                          log_uniform(rng, 2.0, 10.0)};
}

}  // namespace rnstab::oracle
