#pragma once

// Stability analysis of the explicit Robin-Neumann scheme, mode by mode.
//
// The displacement recurrence of a mode has the characteristic quartic
//
//   chi(y) = m/dt^2 (1 + alpha dt/(rho_f mu)) y^4
//          + (-2 alpha m/(rho_f mu dt) + alpha dt (beta + psi lambda)/(rho_f mu) + alpha/dt - 4 m/dt^2) y^3
//          + (alpha m/(rho_f mu dt) - 2 alpha/dt + 6 m/dt^2) y^2
//          + (alpha/dt - 4 m/dt^2) y
//          + m/dt^2,                                       m = rho_s H_s,
//
// and the scheme is stable for that mode when all four roots lie in the open
// unit disc. Scaling by dt^2/m gives Q(y); its reciprocal P(x) = x^4 Q(1/x)
// has roots x = 1/y, and P(1 + U) has closed-form coefficients that do not
// suffer cancellation when the roots cluster near x = 1 (small dt). Spectral
// radii are therefore computed from P(1 + U).

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rnstab/model.hpp"
#include "rnstab/polynomial.hpp"

namespace rnstab {

/// Margin around modulus 1 separating stable / marginal / unstable.
inline constexpr double kStabilityMargin = 1e-9;

enum class Classification { stable, marginal, unstable };

[[nodiscard]] constexpr std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::stable: return "stable";
        case Classification::marginal: return "marginal";
        case Classification::unstable: return "unstable";
    }
    return "marginal";
}

[[nodiscard]] inline Classification classify_radius(double radius, double margin = kStabilityMargin) {
    if (radius < 1.0 - margin) return Classification::stable;
    if (radius > 1.0 + margin) return Classification::unstable;
    return Classification::marginal;
}

// ---------------------------------------------------------------------------
// Polynomial forms

[[nodiscard]] inline QuarticCoefficients characteristic_chi(const PhysicalParams& p, const Mode& mode, double alpha,
                                                            double dt) {
    if (alpha < 0.0) throw InvalidParameter("alpha must be >= 0");
    if (!(dt > 0.0)) throw InvalidParameter("dt must be positive");
    const double m = p.structure_mass();
    const double s = m / (dt * dt);
    if (alpha == 0.0) return QuarticCoefficients{{s, -4.0 * s, 6.0 * s, -4.0 * s, s}, QuarticForm::chi, true};
    const double fm = p.rho_f * mode.mu;
    const double k = modal_stiffness(p, mode);
    return QuarticCoefficients{{
                                   s * (1.0 + alpha * dt / fm),
                                   -2.0 * alpha * m / (fm * dt) + alpha * dt * k / fm + alpha / dt - 4.0 * s,
                                   alpha * m / (fm * dt) - 2.0 * alpha / dt + 6.0 * s,
                                   alpha / dt - 4.0 * s,
                                   s,
                               },
                               QuarticForm::chi, false};
}

/// Q(y) = dt^2/(rho_s H_s) chi(y).
[[nodiscard]] inline QuarticCoefficients normalize_chi(const QuarticCoefficients& chi, const PhysicalParams& p,
                                                       double dt) {
    if (chi.form != QuarticForm::chi) throw std::invalid_argument("normalize_chi expects a chi-form quartic");
    QuarticCoefficients q = chi;
    const double scale = dt * dt / p.structure_mass();
    for (double& v : q.c) v *= scale;
    q.form = QuarticForm::q;
    return q;
}

/// Closed form of Q in the reduced groups, z = dt:
/// (1 + Bz) y^4 - (4 + (2B - A) z - A C z^3) y^3 + (6 + (B - 2A) z) y^2 - (4 - A z) y + 1.
[[nodiscard]] inline QuarticCoefficients characteristic_q(const ReducedGroups& g, double z) {
    const auto [a, b, c] = g;
    return QuarticCoefficients{{1.0 + b * z, -(4.0 + (2.0 * b - a) * z - a * c * z * z * z), 6.0 + (b - 2.0 * a) * z,
                                -(4.0 - a * z), 1.0},
                               QuarticForm::q, false};
}

/// P(x) = x^4 Q(1/x): coefficient reversal.
[[nodiscard]] inline QuarticCoefficients reciprocal_P(const QuarticCoefficients& q) {
    if (q.form != QuarticForm::q) throw std::invalid_argument("reciprocal_P expects a Q-form quartic");
    QuarticCoefficients out = q;
    std::reverse(out.c.begin(), out.c.end());
    out.form = QuarticForm::p;
    return out;
}

/// P(1 + U) = U^4 + A z U^3 + (A + B) z U^2 + A C z^3 U + A C z^3.
[[nodiscard]] inline QuarticCoefficients shifted_P(const ReducedGroups& g, double z) {
    const double acz3 = g.A * g.C * z * z * z;
    return QuarticCoefficients{{1.0, g.A * z, (g.A + g.B) * z, acz3, acz3}, QuarticForm::shifted_p, false};
}

// ---------------------------------------------------------------------------
// Roots

/// Roots y of chi, obtained from P(1 + U) through y = 1 / (1 + U).
/// alpha = 0 gives the quadruple root y = 1.
[[nodiscard]] inline RootSet chi_roots(const PhysicalParams& p, const Mode& mode, double alpha, double dt) {
    if (alpha < 0.0) throw InvalidParameter("alpha must be >= 0");
    if (alpha == 0.0) return make_root_set({1.0, 1.0, 1.0, 1.0});
    const RootSet shifted = quartic_roots(shifted_P(reduced_groups(p, alpha, mode), dt));
    std::array<std::complex<double>, 4> y{};
    for (std::size_t i = 0; i < 4; ++i) y[i] = 1.0 / (1.0 + shifted.roots[i]);
    return make_root_set(y);
}

[[nodiscard]] inline double spectral_radius(const PhysicalParams& p, const Mode& mode, double alpha, double dt) {
    return chi_roots(p, mode, alpha, dt).spectral_radius;
}

// ---------------------------------------------------------------------------
// Sufficient instability condition

/// chi(-1) = alpha/(rho_f mu dt) (4 m - 4 rho_f mu - dt^2 (beta + psi lambda)) + 16 m/dt^2.
/// Negative exactly when m < gamma_i, in which case chi has a real root below -1.
[[nodiscard]] inline double chi_at_minus_one(const PhysicalParams& p, const Mode& mode, double alpha, double dt) {
    const double m = p.structure_mass();
    const double fm = p.rho_f * mode.mu;
    const double k = modal_stiffness(p, mode);
    return alpha / (fm * dt) * (4.0 * m - 4.0 * fm - dt * dt * k) + 16.0 * m / (dt * dt);
}

/// gamma_i = alpha dt (4 rho_f mu + dt^2 (beta + psi lambda)) / (16 rho_f mu + 4 alpha dt).
[[nodiscard]] inline double instability_gamma(const PhysicalParams& p, const Mode& mode, double alpha, double dt) {
    const double fm = p.rho_f * mode.mu;
    const double k = modal_stiffness(p, mode);
    return alpha * dt * (4.0 * fm + dt * dt * k) / (16.0 * fm + 4.0 * alpha * dt);
}

struct InstabilityCheck {
    bool unstable = false;  ///< rho_s H_s < max_i gamma_i
    double gamma_max = 0.0;
    int argmax_mode = 0;
};

[[nodiscard]] inline InstabilityCheck instability_sufficient(const PhysicalParams& p, const std::vector<Mode>& spectrum,
                                                             double alpha, double dt) {
    InstabilityCheck out;
    bool first = true;
    for (const auto& mode : spectrum) {
        const double g = instability_gamma(p, mode, alpha, dt);
        if (first || g > out.gamma_max) {
            out.gamma_max = g;
            out.argmax_mode = mode.index;
            first = false;
        }
    }
    out.unstable = !first && p.structure_mass() < out.gamma_max;
    return out;
}

/// Closed-form instability thresholds built from the extreme eigenvalues of
/// the (truncated) spectrum.
struct Thresholds {
    double eta_bar = 0.0;            ///< gamma with mu_min and lambda_max, for the given alpha
    double eta_1 = 0.0;              ///< rho_f mu_min + dt^2 (beta + psi lambda_max) / 4
    std::optional<double> alpha_1;   ///< defined iff rho_s H_s < eta_1
    double eta_2 = 0.0;              ///< rho_f mu_1
    std::optional<double> alpha_2;   ///< defined iff rho_s H_s < eta_2
};

[[nodiscard]] inline Thresholds thresholds(const PhysicalParams& p, const std::vector<Mode>& spectrum, double dt,
                                           double alpha) {
    if (spectrum.empty()) throw InvalidParameter("zero modes");
    if (!(dt > 0.0)) throw InvalidParameter("dt must be positive");
    double mu_min = spectrum.front().mu, mu_1 = spectrum.front().mu, lambda_max = spectrum.front().lambda;
    for (const auto& mode : spectrum) {
        mu_min = std::min(mu_min, mode.mu);
        lambda_max = std::max(lambda_max, mode.lambda);
        if (mode.index == 1) mu_1 = mode.mu;
    }
    const double m = p.structure_mass();
    const double fm_min = p.rho_f * mu_min;
    const double k_max = p.beta + p.psi * lambda_max;

    Thresholds t;
    t.eta_bar = alpha * dt * (4.0 * fm_min + dt * dt * k_max) / (16.0 * fm_min + 4.0 * alpha * dt);
    t.eta_1 = fm_min + dt * dt * k_max / 4.0;
    if (m < t.eta_1) t.alpha_1 = 16.0 * fm_min * m / (dt * (4.0 * fm_min + dt * dt * k_max - 4.0 * m));
    t.eta_2 = p.rho_f * mu_1;
    if (m < t.eta_2) t.alpha_2 = 4.0 * t.eta_2 * m / (dt * (t.eta_2 - m));
    return t;
}

// ---------------------------------------------------------------------------
// Classification

struct StabilityVerdict {
    std::vector<double> per_mode_radius;
    int worst_mode = 0;
    double spectral_radius = 0.0;
    Classification classification = Classification::marginal;
    double gamma_max = 0.0;
    int gamma_argmax = 0;
    bool instability_sufficient = false;
};

[[nodiscard]] inline StabilityVerdict classify(const PhysicalParams& p, const std::vector<Mode>& spectrum, double alpha,
                                               double dt, double margin = kStabilityMargin) {
    if (spectrum.empty()) throw InvalidParameter("zero modes");
    StabilityVerdict v;
    v.per_mode_radius.reserve(spectrum.size());
    for (const auto& mode : spectrum) {
        const double r = spectral_radius(p, mode, alpha, dt);
        if (v.per_mode_radius.empty() || r > v.spectral_radius) {
            v.spectral_radius = r;
            v.worst_mode = mode.index;
        }
        v.per_mode_radius.push_back(r);
    }
    v.classification = classify_radius(v.spectral_radius, margin);
    const auto check = instability_sufficient(p, spectrum, alpha, dt);
    v.gamma_max = check.gamma_max;
    v.gamma_argmax = check.argmax_mode;
    v.instability_sufficient = alpha > 0.0 && check.unstable;
    return v;
}

/// Bisection estimate of the onset of instability in dt for a given alpha.
/// The lower side accepts marginal verdicts: at small dt the slow root pair sits
/// within O(dt^2) of the unit circle, inside the classification margin.
struct CriticalStep {
    bool found = false;
    double stable_dt = 0.0;    ///< largest dt known not unstable
    double unstable_dt = 0.0;  ///< smallest dt known unstable
    double estimate = 0.0;     ///< geometric midpoint of the final bracket
    int iterations = 0;
    std::string note;
};

/// Assumes the classification switches once on [lo, hi]; brackets that are
/// unstable at lo or not unstable at hi are reported, not resolved.
[[nodiscard]] inline CriticalStep critical_dt(const PhysicalParams& p, const std::vector<Mode>& spectrum, double alpha,
                                              double lo, double hi, double tol = 1e-6) {
    if (!(alpha > 0.0)) throw InvalidParameter("critical_dt requires alpha > 0");
    if (!(lo > 0.0) || !(hi > lo)) throw InvalidParameter("critical_dt requires 0 < lo < hi");
    if (!(tol > 0.0)) throw InvalidParameter("critical_dt requires tol > 0");
    auto stable = [&](double dt) { return classify(p, spectrum, alpha, dt).classification != Classification::unstable; };

    CriticalStep out;
    out.stable_dt = lo;
    out.unstable_dt = hi;
    if (!stable(lo) || stable(hi)) {
        out.note = "monotonicity not found";
        return out;
    }
    while (hi / lo - 1.0 > tol && out.iterations < 200) {
        const double mid = std::sqrt(lo * hi);
        (stable(mid) ? lo : hi) = mid;
        ++out.iterations;
    }
    out.found = true;
    out.stable_dt = lo;
    out.unstable_dt = hi;
    out.estimate = std::sqrt(lo * hi);
    return out;
}

}  // namespace rnstab
