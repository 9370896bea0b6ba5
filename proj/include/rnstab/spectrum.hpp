#pragma once

// Analytic spectra of the added-mass and interface-Laplace operators on the
// rectangular channel, and the mesh-truncation surrogate for the discrete
// spectrum. Both operators are diagonal in the sine basis
// g_i(x) = sqrt(2/L) sin(i pi x / L); the basis itself is never evaluated.

#include <cmath>
#include <numbers>
#include <vector>

#include "rnstab/model.hpp"

namespace rnstab {

/// mu_i = L / (i pi tanh(i pi R / L)).
[[nodiscard]] inline double added_mass_eigenvalue(int i, double length, double radius) {
    if (i < 1) throw InvalidParameter("mode index must be >= 1");
    if (!(length > 0.0) || !(radius > 0.0)) throw InvalidParameter("L and R must be positive");
    const double k = i * std::numbers::pi / length;
    return 1.0 / (k * std::tanh(k * radius));
}

/// lambda_i = (i pi / L)^2.
[[nodiscard]] inline double laplace_eigenvalue(int i, double length) {
    if (i < 1) throw InvalidParameter("mode index must be >= 1");
    if (!(length > 0.0)) throw InvalidParameter("L must be positive");
    const double k = i * std::numbers::pi / length;
    return k * k;
}

/// Number of modes a mesh of size h resolves on an interface of length L:
/// round-half-up of L/h, at least one. With this truncation mu_min ~ h,
/// lambda_max ~ h^-2 and mu_max ~ h^0.
[[nodiscard]] inline int truncation_from_h(double length, double h) {
    if (!(h > 0.0) || !(h < length)) throw InvalidParameter("h must satisfy 0 < h < L");
    const int n = static_cast<int>(std::floor(length / h + 0.5));
    return n < 1 ? 1 : n;
}

[[nodiscard]] inline Mode make_mode(const PhysicalParams& p, int i) {
    return Mode{i, added_mass_eigenvalue(i, p.length, p.radius), laplace_eigenvalue(i, p.length)};
}

/// Modes 1..n_modes ordered by index.
[[nodiscard]] inline std::vector<Mode> build_spectrum(const PhysicalParams& p, int n_modes) {
    if (n_modes < 1) throw InvalidParameter("zero modes");
    std::vector<Mode> modes;
    modes.reserve(static_cast<std::size_t>(n_modes));
    for (int i = 1; i <= n_modes; ++i) modes.push_back(make_mode(p, i));
    return modes;
}

}  // namespace rnstab
