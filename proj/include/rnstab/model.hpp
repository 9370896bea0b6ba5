#pragma once

// Physical and discretization parameters of the modal fluid-structure model,
// plus the nondimensional groups used by the characteristic-polynomial analysis.
//
// All quantities are CGS. No rescaling is performed anywhere in the library.

#include <cmath>
#include <stdexcept>
#include <string>

namespace rnstab {

class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Fluid and structure data of the channel model.
struct PhysicalParams {
    double rho_f = 0.0;   ///< fluid density [g/cm^3]
    double rho_s = 0.0;   ///< structure density [g/cm^3]
    double h_s = 0.0;     ///< structure thickness [cm]
    double beta = 0.0;    ///< zeroth-order elasticity coefficient [dyne/cm^3]
    double psi = 0.0;     ///< second-order elasticity coefficient [dyne/cm]
    double radius = 0.0;  ///< channel radius R [cm]
    double length = 0.0;  ///< channel length L [cm]

    /// Structure mass per unit interface area, rho_s * H_s [g/cm^2].
    [[nodiscard]] double structure_mass() const { return rho_s * h_s; }
};

struct Discretization {
    double dt = 0.0;  ///< time step [s]
    int n_modes = 0;  ///< retained interface modes
    int n_steps = 0;  ///< number of time steps
};

/// One interface sine mode g_i(x) = sqrt(2/L) sin(i pi x / L).
struct Mode {
    int index = 0;       ///< i >= 1
    double mu = 0.0;     ///< added-mass eigenvalue [cm]
    double lambda = 0.0; ///< interface Laplace eigenvalue [1/cm^2]
};

/// Normalized groups of the per-mode quartic: A = alpha/(rho_s H_s),
/// B = alpha/(rho_f mu), C = (beta + psi lambda)/(rho_f mu).
struct ReducedGroups {
    double A = 0.0;  ///< [1/s]
    double B = 0.0;  ///< [1/s]
    double C = 0.0;  ///< [1/s^2]
};

/// Hemodynamic fixture: rho_f = 1, rho_s = 1.1, H_s = 0.1, R = 0.5, L = 5.
/// beta and psi are free model inputs; 4e4 is only a representative magnitude.
[[nodiscard]] inline PhysicalParams fixture_params() {
    return PhysicalParams{1.0, 1.1, 0.1, 4.0e4, 4.0e4, 0.5, 5.0};
}

[[nodiscard]] inline Discretization fixture_discretization() {
    return Discretization{5.0e-4, 50, 200};
}

struct ValidatedSetup {
    PhysicalParams params;
    Discretization disc;
};

namespace detail {
inline void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw InvalidParameter(std::string("non-positive field: ") + name);
}
}  // namespace detail

inline void validate_params(const PhysicalParams& p) {
    detail::require_positive(p.rho_f, "rho_f");
    detail::require_positive(p.rho_s, "rho_s");
    detail::require_positive(p.h_s, "h_s");
    detail::require_positive(p.beta, "beta");
    detail::require_positive(p.psi, "psi");
    detail::require_positive(p.radius, "radius");
    detail::require_positive(p.length, "length");
}

/// Returns the pair unchanged or throws InvalidParameter naming the first
/// violated invariant.
[[nodiscard]] inline ValidatedSetup validate_params(const PhysicalParams& p, const Discretization& d) {
    validate_params(p);
    detail::require_positive(d.dt, "dt");
    if (d.n_modes < 1) throw InvalidParameter("zero modes");
    if (d.n_steps < 1) throw InvalidParameter("zero steps");
    return ValidatedSetup{p, d};
}

/// Elastic stiffness of a mode, beta + psi * lambda_i [dyne/cm^3].
[[nodiscard]] inline double modal_stiffness(const PhysicalParams& p, const Mode& m) {
    return p.beta + p.psi * m.lambda;
}

/// alpha = 0 is not admitted here; the degenerate scheme is handled by the
/// simulator and analyzer directly.
[[nodiscard]] inline ReducedGroups reduced_groups(const PhysicalParams& p, double alpha, const Mode& mode) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw InvalidParameter("reduced_groups requires alpha > 0");
    if (mode.index < 1 || !(mode.mu > 0.0) || !(mode.lambda > 0.0))
        throw InvalidParameter("invalid mode");
    const double fluid_mass = p.rho_f * mode.mu;
    return ReducedGroups{alpha / p.structure_mass(), alpha / fluid_mass,
                         modal_stiffness(p, mode) / fluid_mass};
}

}  // namespace rnstab
