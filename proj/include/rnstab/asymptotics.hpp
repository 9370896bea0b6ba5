#pragma once

// Small-step asymptotics of the roots of P(1 + U), U = u + i v.
//
// Splitting P(1 + U) = 0 into real and imaginary parts and discarding v = 0
// (no real root with u > -1) leaves
//
//   v^2 = (4u^3 + 3A u^2 z + 2u z (A + B) + A C z^3) / (4u + A z)
//
// and, after substituting v^2 into the real part, a sextic in u alone. For
// small z the four roots split into two conjugate pairs:
//
//   u1 = -A z / 2 + O(z^2),                 v1^2 = (A + B) z + O(z^2),
//   u2 = -A B C z^2 / (2 (A + B)^2) + O(z^3), v2^2 = A C z^2 / (A + B) + O(z^3),
//
// with |1 + U1|^2 = 1 + B z + O(z^2) and |1 + U2|^2 = 1 + A^2 C z^2 / (A + B)^2 + O(z^3).
// Both exceed 1, so all roots y = 1/(1 + U) of chi lie inside the unit disc.

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "rnstab/model.hpp"
#include "rnstab/polynomial.hpp"

namespace rnstab {

struct RootAsymptotics {
    double u1 = 0.0;
    double v1_sq = 0.0;
    double u2 = 0.0;
    double v2_sq = 0.0;
    double modulus1_sq = 0.0;  ///< |1 + U1|^2 to first order
    double modulus2_sq = 0.0;  ///< |1 + U2|^2 to second order
};

[[nodiscard]] inline RootAsymptotics root_asymptotics(const ReducedGroups& g, double z) {
    if (!(z > 0.0)) throw InvalidParameter("root_asymptotics requires z > 0");
    if (!(g.A > 0.0) || !(g.B > 0.0) || !(g.C > 0.0)) throw InvalidParameter("reduced groups must be positive");
    const double s = g.A + g.B;
    RootAsymptotics out;
    out.u1 = -g.A * z / 2.0;
    out.v1_sq = s * z;
    out.u2 = -g.A * g.B * g.C * z * z / (2.0 * s * s);
    out.v2_sq = g.C * g.A * z * z / s;
    out.modulus1_sq = 1.0 + g.B * z;
    out.modulus2_sq = 1.0 + g.C * g.A * g.A * z * z / (s * s);
    return out;
}

/// Sextic in u obtained by eliminating v^2; t[k] multiplies u^k.
struct SexticCoefficients {
    std::array<double, 7> t{};

    [[nodiscard]] double operator()(double u) const {
        double acc = t[6];
        for (int k = 5; k >= 0; --k) acc = acc * u + t[static_cast<std::size_t>(k)];
        return acc;
    }

    /// Sum of |t_k u^k|: the magnitude against which a residual is judged.
    [[nodiscard]] double term_scale(double u) const {
        double acc = 0.0, power = 1.0;
        for (std::size_t k = 0; k < 7; ++k) {
            acc += std::abs(t[k] * power);
            power *= u;
        }
        return acc;
    }
};

[[nodiscard]] inline SexticCoefficients sextic_coefficients(const ReducedGroups& g, double z) {
    if (!(z > 0.0)) throw InvalidParameter("sextic_coefficients requires z > 0");
    const double a = g.A, b = g.B, c = g.C;
    const double s = a + b;
    const double z2 = z * z, z3 = z2 * z, z4 = z3 * z, z5 = z4 * z;
    SexticCoefficients out;
    out.t[6] = -64.0;
    out.t[5] = -96.0 * a * z;
    out.t[4] = -(32.0 * s * z + 48.0 * a * a * z2);
    out.t[3] = -(32.0 * a * s * z2 + 8.0 * a * a * a * z3);
    out.t[2] = -(4.0 * s * s * z2 + 8.0 * a * (a * a + b * a - 2.0 * c) * z3 + 4.0 * a * a * c * z4);
    out.t[1] = -2.0 * a * s * s * z3 + 8.0 * a * a * c * z4 - 2.0 * a * a * a * c * z5;
    out.t[0] = -a * a * c * (b - z * c) * z5;
    return out;
}

/// v^2 on the non-real branch, as a function of u.
[[nodiscard]] inline double v_squared_branch(const ReducedGroups& g, double z, double u) {
    const double num = 4.0 * u * u * u + 3.0 * g.A * u * u * z + 2.0 * u * z * (g.A + g.B) + g.A * g.C * z * z * z;
    return num / (4.0 * u + g.A * z);
}

/// Computed (u, v^2) of the two conjugate pairs, branch 1 being the pair with
/// the larger imaginary part.
struct RootBranches {
    double u1 = 0.0;
    double v1_sq = 0.0;
    double u2 = 0.0;
    double v2_sq = 0.0;
};

/// Splits the roots of P(1 + U) into the two conjugate pairs; empty when the
/// roots are not two non-real pairs.
[[nodiscard]] inline std::optional<RootBranches> split_branches(const RootSet& shifted_roots) {
    std::array<std::complex<double>, 2> upper{};
    std::size_t count = 0;
    for (const auto& r : shifted_roots.roots) {
        if (r.imag() > 0.0) {
            if (count == 2) return std::nullopt;
            upper[count++] = r;
        }
    }
    if (count != 2) return std::nullopt;
    if (upper[0].imag() < upper[1].imag()) std::swap(upper[0], upper[1]);
    return RootBranches{upper[0].real(), upper[0].imag() * upper[0].imag(), upper[1].real(),
                        upper[1].imag() * upper[1].imag()};
}

}  // namespace rnstab
