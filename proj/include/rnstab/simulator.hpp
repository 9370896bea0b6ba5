#pragma once

// Time stepping of one interface mode of the coupled problem.
//
// Three schemes are provided:
//  - explicit_rn:  the loosely coupled Robin-Neumann scheme. Per step, one fluid
//                  solve with a Robin interface condition (alpha) followed by one
//                  leap-frog structure update driven by the fluid pressure.
//  - recurrence:   the same scheme with u and p eliminated, i.e. the five-term
//                  difference equation in the displacement alone, advanced in
//                  backward-difference form.
//  - implicit_ref: a fully coupled reference enforcing u = (eta^n - eta^{n-1})/dt
//                  exactly, with the added mass moved to the structure side.
//
// Startup convention: the first Robin right-hand side needs eta^{-1}. Unless
// supplied it is set to eta^0 (structure at rest); eta^{-2} likewise.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rnstab/model.hpp"
#include "rnstab/parallel.hpp"
#include "rnstab/polynomial.hpp"

namespace rnstab {

enum class Scheme { explicit_rn, recurrence, implicit_ref };

[[nodiscard]] constexpr std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::explicit_rn: return "explicit-rn";
        case Scheme::recurrence: return "recurrence";
        case Scheme::implicit_ref: return "implicit";
    }
    return "explicit-rn";
}

[[nodiscard]] inline Scheme parse_scheme(std::string_view name) {
    if (name == "explicit-rn" || name == "explicit_rn") return Scheme::explicit_rn;
    if (name == "recurrence") return Scheme::recurrence;
    if (name == "implicit" || name == "implicit_ref") return Scheme::implicit_ref;
    throw InvalidParameter("unknown scheme: " + std::string(name));
}

/// Modal initial data: eta^1, eta^0, u^0 and optionally the two startup values.
struct InitialData {
    double eta1 = 0.0;
    double eta0 = 0.0;
    double u0 = 0.0;
    std::optional<double> eta_m1;
    std::optional<double> eta_m2;

    [[nodiscard]] double eta_minus1() const { return eta_m1.value_or(eta0); }
    [[nodiscard]] double eta_minus2() const { return eta_m2.value_or(eta0); }
    [[nodiscard]] InitialData scaled(double c) const {
        InitialData out{c * eta1, c * eta0, c * u0, std::nullopt, std::nullopt};
        if (eta_m1) out.eta_m1 = c * *eta_m1;
        if (eta_m2) out.eta_m2 = c * *eta_m2;
        return out;
    }
};

/// State entering step n of the explicit scheme, kept in difference form:
/// eta = eta^n, d1 = eta^n - eta^{n-1}, d2 = eta^n - 2 eta^{n-1} + eta^{n-2}, and
/// slip = u^{n-1} - (eta^{n-1} - eta^{n-2})/dt. Carrying the differences
/// instead of rebuilding them from rounded displacements keeps roundoff from
/// exciting the root cluster near y = 1 at small dt.
/// After the step, u and p hold u^n and p^n and step is n + 1.
struct ModalState {
    double eta = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double slip = 0.0;
    double u = 0.0;
    double p = 0.0;
    long step = 1;
    bool blown_up = false;
};

/// State entering step 1 from eta^1, eta^0, eta^{-1} and u^0.
[[nodiscard]] inline ModalState initial_state(const InitialData& init, double dt) {
    if (!(dt > 0.0)) throw InvalidParameter("dt must be positive");
    ModalState s;
    s.eta = init.eta1;
    s.d1 = init.eta1 - init.eta0;
    s.d2 = s.d1 - (init.eta0 - init.eta_minus1());
    s.slip = init.u0 - (init.eta0 - init.eta_minus1()) / dt;
    s.u = init.u0;
    return s;
}

struct StepRecord {
    long step = 0;
    double time = 0.0;
    double eta = 0.0;
    double u = 0.0;
    double p = 0.0;
};

struct ModalTrajectory {
    Scheme scheme = Scheme::explicit_rn;
    Mode mode;
    double alpha = 0.0;
    double dt = 0.0;
    InitialData init;                ///< with eta_m1 / eta_m2 resolved
    std::vector<StepRecord> series;  ///< records for n = 1, 2, ...
    std::optional<long> blow_up;     ///< first step whose |eta| crossed the threshold

    [[nodiscard]] long last_step() const { return static_cast<long>(series.size()); }

    /// eta^n for -2 <= n <= last_step().
    [[nodiscard]] double eta(long n) const {
        if (n == -2) return init.eta_minus2();
        if (n == -1) return init.eta_minus1();
        if (n == 0) return init.eta0;
        if (n >= 1 && n <= last_step()) return series[static_cast<std::size_t>(n - 1)].eta;
        throw std::out_of_range("trajectory has no eta at step " + std::to_string(n));
    }

    [[nodiscard]] const StepRecord& at(long n) const {
        if (n < 1 || n > last_step()) throw std::out_of_range("trajectory has no record " + std::to_string(n));
        return series[static_cast<std::size_t>(n - 1)];
    }

    [[nodiscard]] std::vector<double> eta_series() const {
        std::vector<double> out;
        out.reserve(series.size());
        for (const auto& r : series) out.push_back(r.eta);
        return out;
    }
};

struct SimulationOptions {
    double blow_up_factor = 1e8;  ///< threshold relative to the initial magnitude
    double zero_floor = 1e-30;    ///< magnitude floor for zero initial data
};

// ---------------------------------------------------------------------------
// Single steps

/// One explicit Robin-Neumann step.
///
/// Fluid: -alpha u^n + p^n = g^n with the added-mass response
/// p^n = -rho_f mu (u^n - u^{n-1})/dt and the Robin datum
/// g^n = -alpha (eta^n - eta^{n-1})/dt + rho_s H_s (eta^n - 2 eta^{n-1} + eta^{n-2})/dt^2 + K eta^n.
/// Structure: rho_s H_s (eta^{n+1} - 2 eta^n + eta^{n-1})/dt^2 + K eta^n = p^n.
///
/// Written for the slip s^n = u^n - (eta^n - eta^{n-1})/dt the fluid solve reads
/// (alpha + rho_f mu/dt) s^n = rho_f mu s^{n-1}/dt - (rho_f mu + rho_s H_s) d2/dt^2 - K eta^n,
/// and the structure update p^n - K eta^n = alpha s^n + rho_s H_s d2/dt^2.
[[nodiscard]] inline ModalState step_explicit_rn(const ModalState& state, const PhysicalParams& p, const Mode& mode,
                                                 double alpha, double dt) {
    if (alpha < 0.0) throw InvalidParameter("alpha must be >= 0");
    if (!(dt > 0.0)) throw InvalidParameter("dt must be positive");
    const double m = p.structure_mass();
    const double fluid_mass = p.rho_f * mode.mu;
    const double k = modal_stiffness(p, mode);
    const double dt2 = dt * dt;

    const double slip =
        (fluid_mass * state.slip / dt - (fluid_mass + m) * state.d2 / dt2 - k * state.eta) / (alpha + fluid_mass / dt);
    const double inertia = m * state.d2 / dt2;

    ModalState next;
    next.slip = slip;
    next.u = state.d1 / dt + slip;
    next.p = alpha * slip + inertia + k * state.eta;
    next.d2 = state.d2 + alpha * slip * dt2 / m;
    next.d1 = state.d1 + next.d2;
    next.eta = state.eta + next.d1;
    next.step = state.step + 1;
    next.blown_up = state.blown_up || !std::isfinite(next.eta) || !std::isfinite(next.u) || !std::isfinite(next.p);
    return next;
}

/// Coefficients (leading first) of the displacement recurrence obtained by
/// eliminating u and p, multiplied through by alpha so the alpha = 0 limit
/// stays finite. Proportional to the characteristic polynomial chi.
[[nodiscard]] inline std::array<double, 5> recurrence_coefficients(const PhysicalParams& p, const Mode& mode,
                                                                   double alpha, double dt) {
    const double m = p.structure_mass();
    const double fm = p.rho_f * mode.mu;
    const double k = modal_stiffness(p, mode);
    const double dt2 = dt * dt;
    const double dt3 = dt2 * dt;
    return {
        m / dt2 * (alpha + fm / dt),
        alpha * (-2.0 * m / dt2 + k + fm / dt2) - 4.0 * m * fm / dt3,
        alpha * (m / dt2 - 2.0 * fm / dt2) + 6.0 * m * fm / dt3,
        alpha * fm / dt2 - 4.0 * m * fm / dt3,
        m * fm / dt3,
    };
}

/// The same recurrence in backward differences of eta^{n+1}:
///   alpha K eta^n + alpha (rho_f mu + rho_s H_s)/dt^2 D2 - alpha rho_f mu/dt^2 D3 + rho_s H_s rho_f mu/dt^3 D4 = 0,
/// with Dj the j-th backward difference at n + 1. Returns the coefficients of
/// (eta^n, D2, D3, D4).
[[nodiscard]] inline std::array<double, 4> recurrence_difference_coefficients(const PhysicalParams& p,
                                                                              const Mode& mode, double alpha,
                                                                              double dt) {
    const double m = p.structure_mass();
    const double fm = p.rho_f * mode.mu;
    const double dt2 = dt * dt;
    return {alpha * modal_stiffness(p, mode), alpha * (fm + m) / dt2, -alpha * fm / dt2, m * fm / (dt2 * dt)};
}

/// eta^{n+1} from (eta^n, eta^{n-1}, eta^{n-2}, eta^{n-3}) by the five-term form.
[[nodiscard]] inline double step_recurrence(std::span<const double, 4> eta_hist, const PhysicalParams& p,
                                            const Mode& mode, double alpha, double dt) {
    for (double v : eta_hist)
        if (!std::isfinite(v)) throw std::domain_error("step_recurrence: non-finite history");
    if (alpha < 0.0) throw InvalidParameter("alpha must be >= 0");
    if (alpha == 0.0) {
        // chi = (rho_s H_s / dt^2) (y - 1)^4: vanishing fourth difference.
        return 4.0 * eta_hist[0] - 6.0 * eta_hist[1] + 4.0 * eta_hist[2] - eta_hist[3];
    }
    const auto c = recurrence_coefficients(p, mode, alpha, dt);
    return -(c[1] * eta_hist[0] + c[2] * eta_hist[1] + c[3] * eta_hist[2] + c[4] * eta_hist[3]) / c[0];
}

/// Backward differences of eta at one step: (eta^n, D1, D2, D3). Carried in
/// extended precision: when the dominant root is far from 1 the differences
/// are all of the size of eta and the double sums lose a few digits.
struct DifferenceHistory {
    long double eta = 0.0L;
    long double d1 = 0.0L;
    long double d2 = 0.0L;
    long double d3 = 0.0L;
};

/// Advances the recurrence one step in difference form: solves for the fourth
/// difference and sums back up, so no large terms cancel.
[[nodiscard]] inline DifferenceHistory step_recurrence(const DifferenceHistory& h, const PhysicalParams& p,
                                                       const Mode& mode, double alpha, double dt) {
    if (alpha < 0.0) throw InvalidParameter("alpha must be >= 0");
    const long double m = p.structure_mass();
    const long double fm = static_cast<long double>(p.rho_f) * mode.mu;
    const long double k = static_cast<long double>(p.beta) + static_cast<long double>(p.psi) * mode.lambda;
    const long double a = alpha;
    const long double dt2 = static_cast<long double>(dt) * dt;
    const long double c_eta = a * k, c2 = a * (fm + m) / dt2, c3 = -a * fm / dt2, c4 = m * fm / (dt2 * dt);
    // D3' = D4 + d3, D2' = D3' + d2 substituted into the difference form.
    const long double d4 = alpha == 0.0 ? 0.0L : -(c_eta * h.eta + c2 * (h.d2 + h.d3) + c3 * h.d3) / (c2 + c3 + c4);
    DifferenceHistory next;
    next.d3 = h.d3 + d4;
    next.d2 = h.d2 + next.d3;
    next.d1 = h.d1 + next.d2;
    next.eta = h.eta + next.d1;
    return next;
}

/// Monolithic reference: (rho_s H_s + rho_f mu) (eta^{n+1} - 2 eta^n + eta^{n-1}) / dt^2
///                       + (beta + psi lambda) eta^{n+1} = 0.
/// Only eta_hist[0] and eta_hist[1] are read.
[[nodiscard]] inline double step_implicit_reference(std::span<const double, 4> eta_hist, const PhysicalParams& p,
                                                    const Mode& mode, double dt) {
    if (!(dt > 0.0)) throw InvalidParameter("dt must be positive");
    const double mass = p.structure_mass() + p.rho_f * mode.mu;
    const double k = modal_stiffness(p, mode);
    const double damping = mass / (mass + k * dt * dt);
    return (2.0 * eta_hist[0] - eta_hist[1]) * damping;
}

// ---------------------------------------------------------------------------
// Trajectories

namespace detail {

inline bool record_blows_up(const StepRecord& r, double threshold) {
    return !std::isfinite(r.eta) || !std::isfinite(r.u) || !std::isfinite(r.p) || std::abs(r.eta) > threshold;
}

}  // namespace detail

[[nodiscard]] inline ModalTrajectory simulate(Scheme scheme, const PhysicalParams& p, const Discretization& d,
                                              const Mode& mode, double alpha, const InitialData& init,
                                              const SimulationOptions& opts = {}) {
    validate_params(p);
    if (!(d.dt > 0.0)) throw InvalidParameter("non-positive field: dt");
    if (d.n_steps < 1) throw InvalidParameter("zero steps");
    if (alpha < 0.0 || !std::isfinite(alpha)) throw InvalidParameter("alpha must be finite and >= 0");

    ModalTrajectory traj;
    traj.scheme = scheme;
    traj.mode = mode;
    traj.alpha = alpha;
    traj.dt = d.dt;
    traj.init = init;
    traj.init.eta_m1 = init.eta_minus1();
    traj.init.eta_m2 = init.eta_minus2();
    traj.series.reserve(static_cast<std::size_t>(d.n_steps));

    const double dt = d.dt;
    const double threshold =
        opts.blow_up_factor * std::max({std::abs(init.eta1), std::abs(init.eta0), opts.zero_floor});
    const double m = p.structure_mass();
    const double fluid_mass = p.rho_f * mode.mu;
    const double k = modal_stiffness(p, mode);

    auto push = [&](StepRecord r) {
        traj.series.push_back(r);
        if (detail::record_blows_up(r, threshold)) {
            traj.blow_up = r.step;
            return false;
        }
        return true;
    };

    const ModalState start = initial_state(init, dt);

    switch (scheme) {
        case Scheme::explicit_rn: {
            ModalState state = start;
            for (long n = 1; n <= d.n_steps; ++n) {
                const ModalState next = step_explicit_rn(state, p, mode, alpha, dt);
                if (!push({n, n * dt, state.eta, next.u, next.p})) break;
                state = next;
            }
            break;
        }
        case Scheme::recurrence: {
            // u^0 is free data, so the first step goes through the fluid solve;
            // from n = 2 on, u^{n-1} obeys the corrected kinematic identity and
            // the five-term recurrence holds.
            const ModalState first = step_explicit_rn(start, p, mode, alpha, dt);
            if (!push({1, dt, start.eta, first.u, first.p}) || d.n_steps == 1) break;
            DifferenceHistory hist{first.eta, first.d1, first.d2, first.d2 - start.d2};
            double u_prev = first.u;
            for (long n = 2; n <= d.n_steps; ++n) {
                const DifferenceHistory next = step_recurrence(hist, p, mode, alpha, dt);
                // Recover p^n from the structure equation and u^n from the
                // added-mass relation.
                const double pressure = static_cast<double>(m * next.d2 / (dt * dt) + k * hist.eta);
                const double u = u_prev - dt * pressure / fluid_mass;
                if (!push({n, n * dt, static_cast<double>(hist.eta), u, pressure})) break;
                hist = next;
                u_prev = u;
            }
            break;
        }
        case Scheme::implicit_ref: {
            std::array<double, 4> hist = {init.eta1, init.eta0, init.eta_minus1(), init.eta_minus2()};
            for (long n = 1; n <= d.n_steps; ++n) {
                const double next = step_implicit_reference(std::span<const double, 4>(hist), p, mode, dt);
                const double u = (hist[0] - hist[1]) / dt;
                const double pressure = -fluid_mass * (hist[0] - 2.0 * hist[1] + hist[2]) / (dt * dt);
                if (!push({n, n * dt, hist[0], u, pressure})) break;
                hist = {next, hist[0], hist[1], hist[2]};
            }
            break;
        }
    }
    return traj;
}

/// Residual of the corrected kinematic condition at step n,
///   u^n - (eta^n - eta^{n-1})/dt - rho_s H_s (eta^{n+1} - 3 eta^n + 3 eta^{n-1} - eta^{n-2}) / (alpha dt^2).
/// Zero up to roundoff on explicit Robin-Neumann trajectories.
[[nodiscard]] inline double kinematic_defect(const ModalTrajectory& traj, long n, const PhysicalParams& p,
                                             double alpha, double dt) {
    if (n < 2 || n > traj.last_step() - 1)
        throw std::out_of_range("kinematic_defect: step " + std::to_string(n) + " outside [2, last - 1]");
    const double third = traj.eta(n + 1) - 3.0 * traj.eta(n) + 3.0 * traj.eta(n - 1) - traj.eta(n - 2);
    const double correction = third == 0.0 ? 0.0 : p.structure_mass() * third / (alpha * dt * dt);
    return traj.at(n).u - (traj.eta(n) - traj.eta(n - 1)) / dt - correction;
}

/// Magnitude of the largest term entering the kinematic identity at step n;
/// the roundoff floor of kinematic_defect is a small multiple of eps times this.
[[nodiscard]] inline double kinematic_defect_scale(const ModalTrajectory& traj, long n, const PhysicalParams& p,
                                                   double alpha, double dt) {
    double eta_max = 0.0;
    for (long k = n - 2; k <= n + 1; ++k) eta_max = std::max(eta_max, std::abs(traj.eta(k)));
    const double correction_scale = alpha > 0.0 ? p.structure_mass() * eta_max / (alpha * dt * dt) : 0.0;
    return std::max({std::abs(traj.at(n).u), eta_max / dt, correction_scale});
}

/// Empirical modulus per step, measured on eta[burn_in:].
///
/// The oscillation period is estimated from sign changes; eta is split into
/// windows of about two periods (at least 8 entries) and exp of the
/// least-squares slope of log(window RMS) is returned. With fewer than four
/// sign changes the tail is accepted only if log(window RMS) is close to a
/// straight line (a real dominant root); a fraction of a slow oscillation is
/// not. Empty when the estimate is inconclusive, or a window is zero,
/// subnormal or non-finite.
[[nodiscard]] inline std::optional<double> growth_rate(std::span<const double> eta, std::size_t burn_in) {
    if (eta.size() <= burn_in + 10) throw std::invalid_argument("growth_rate: trajectory shorter than burn_in + 10");
    const auto seg = eta.subspan(burn_in);
    const std::size_t len = seg.size();
    std::size_t changes = 0;
    for (std::size_t k = 1; k < len; ++k)
        if ((seg[k] < 0.0) != (seg[k - 1] < 0.0) && seg[k] != 0.0 && seg[k - 1] != 0.0) ++changes;
    const bool oscillating = changes >= 4;
    const std::size_t width = oscillating ? std::max<std::size_t>(8, (4 * len + changes - 1) / changes) : 8;
    const std::size_t count = len / width;
    if (count < 3) return std::nullopt;

    std::vector<double> xs, ys;
    xs.reserve(count);
    ys.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
        // Scale by the window max to keep the sum of squares in range.
        double peak = 0.0;
        for (std::size_t k = w * width; k < (w + 1) * width; ++k) peak = std::max(peak, std::abs(seg[k]));
        if (!(peak >= std::numeric_limits<double>::min()) || !std::isfinite(peak)) return std::nullopt;
        double sum = 0.0;
        for (std::size_t k = w * width; k < (w + 1) * width; ++k) sum += (seg[k] / peak) * (seg[k] / peak);
        xs.push_back((static_cast<double>(w) + 0.5) * static_cast<double>(width));
        ys.push_back(std::log(peak) + 0.5 * std::log(sum / static_cast<double>(width)));
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t w = 0; w < count; ++w) {
        sx += xs[w];
        sy += ys[w];
        sxx += xs[w] * xs[w];
        sxy += xs[w] * ys[w];
    }
    const double n = static_cast<double>(count);
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (!oscillating) {
        const double intercept = (sy - slope * sx) / n;
        for (std::size_t w = 0; w < count; ++w)
            if (std::abs(ys[w] - intercept - slope * xs[w]) > 0.05) return std::nullopt;
    }
    return std::exp(slope);
}

[[nodiscard]] inline std::optional<double> growth_rate(const ModalTrajectory& traj, std::size_t burn_in) {
    const auto eta = traj.eta_series();
    return growth_rate(std::span<const double>(eta), burn_in);
}

/// Dominant root modulus of eta[burn_in:] by an order-4 linear-prediction
/// fit: the fourth backward difference is regressed on (eta, D1, D2, D3) at
/// the previous step, rows scaled to unit size, in long double. With
/// w = 1 - 1/y the fitted relation is the quartic
///   (1 + c3) w^4 - (c3 - c2) w^3 - (c2 - c1) w^2 - (c1 - c0) w - c0 = 0,
/// which resolves roots clustered near y = 1. Resolves slow oscillations and
/// subdominant roots that the windowed estimate cannot. Empty when the tail
/// is degenerate (e.g. constant) or not finite.
[[nodiscard]] inline std::optional<double> fitted_growth_rate(std::span<const double> eta, std::size_t burn_in) {
    if (eta.size() < burn_in + 16) throw std::invalid_argument("fitted_growth_rate: trajectory shorter than burn_in + 16");
    using Matrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    const std::size_t rows = eta.size() - burn_in - 4;
    Matrix a(static_cast<Eigen::Index>(rows), 4);
    Vector rhs(static_cast<Eigen::Index>(rows));
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t n = burn_in + 3 + i;
        long double v[5];
        long double peak = 0.0L;
        for (std::size_t k = 0; k < 5; ++k) {
            v[k] = eta[n + 1 - k];
            if (!std::isfinite(eta[n + 1 - k])) return std::nullopt;
            peak = std::max(peak, std::abs(v[k]));
        }
        if (peak == 0.0L) return std::nullopt;
        const auto r = static_cast<Eigen::Index>(i);
        a(r, 0) = v[1] / peak;
        a(r, 1) = (v[1] - v[2]) / peak;
        a(r, 2) = (v[1] - 2 * v[2] + v[3]) / peak;
        a(r, 3) = (v[1] - 3 * v[2] + 3 * v[3] - v[4]) / peak;
        rhs(r) = (v[0] - 4 * v[1] + 6 * v[2] - 4 * v[3] + v[4]) / peak;
    }
    Vector scale(4);
    for (Eigen::Index k = 0; k < 4; ++k) {
        scale(k) = a.col(k).norm();
        if (!(scale(k) > 0.0L)) return std::nullopt;
        a.col(k) /= scale(k);
    }
    const auto qr = a.colPivHouseholderQr();
    if (qr.rank() < 4) return std::nullopt;
    Vector c = qr.solve(rhs);
    for (Eigen::Index k = 0; k < 4; ++k) c(k) /= scale(k);

    QuarticCoefficients q;
    q.c = {static_cast<double>(1.0L + c(3)), static_cast<double>(c(2) - c(3)), static_cast<double>(c(1) - c(2)),
           static_cast<double>(c(0) - c(1)), static_cast<double>(-c(0))};
    if (q.c[0] == 0.0) return std::nullopt;
    double out = 0.0;
    for (const auto& w : quartic_roots(q).roots) {
        const double gap = std::abs(1.0 - w);
        if (gap == 0.0) return std::nullopt;
        out = std::max(out, 1.0 / gap);
    }
    return std::isfinite(out) ? std::optional<double>(out) : std::nullopt;
}

/// Independent per-mode runs over a spectrum. The modes do not interact.
struct SpectrumRun {
    std::vector<ModalTrajectory> modes;
    std::optional<long> first_blow_up;  ///< earliest blow-up step over modes
    int blow_up_mode = 0;               ///< mode index attaining it (0 if none)
    double max_abs_eta = 0.0;
};

[[nodiscard]] inline SpectrumRun simulate_spectrum(Scheme scheme, const PhysicalParams& p, const Discretization& d,
                                                   const std::vector<Mode>& spectrum, double alpha,
                                                   const InitialData& init, int jobs = 1,
                                                   const SimulationOptions& opts = {}) {
    SpectrumRun run;
    run.modes.resize(spectrum.size());
    parallel_for(spectrum.size(), jobs,
                 [&](std::size_t i) { run.modes[i] = simulate(scheme, p, d, spectrum[i], alpha, init, opts); });
    for (const auto& t : run.modes) {
        for (const auto& r : t.series)
            if (std::isfinite(r.eta)) run.max_abs_eta = std::max(run.max_abs_eta, std::abs(r.eta));
        if (t.blow_up && (!run.first_blow_up || *t.blow_up < *run.first_blow_up)) {
            run.first_blow_up = t.blow_up;
            run.blow_up_mode = t.mode.index;
        }
    }
    return run;
}

}  // namespace rnstab
