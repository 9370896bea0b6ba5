#pragma once

// Parameter-space studies: stability maps over (alpha, dt, mesh) grids and
// accuracy scans of the explicit scheme against the implicit reference.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rnstab/model.hpp"
#include "rnstab/parallel.hpp"
#include "rnstab/simulator.hpp"
#include "rnstab/spectrum.hpp"
#include "rnstab/stability.hpp"

namespace rnstab {

/// min:max:count[:log|:lin]. Log spacing is the default.
struct RangeSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 1;
    bool log = true;

    [[nodiscard]] std::vector<double> values() const {
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(count));
        if (count == 1) {
            out.push_back(min);
            return out;
        }
        for (int k = 0; k < count; ++k) {
            const double t = static_cast<double>(k) / (count - 1);
            out.push_back(log ? std::exp(std::log(min) + t * (std::log(max) - std::log(min))) : min + t * (max - min));
        }
        out.front() = min;
        out.back() = max;
        return out;
    }
};

inline void validate_range(const RangeSpec& r, std::string_view name) {
    if (r.count < 1) throw InvalidParameter(std::string(name) + ": count must be >= 1");
    if (!(r.min > 0.0) || !(r.max >= r.min) || !std::isfinite(r.max))
        throw InvalidParameter(std::string(name) + ": need 0 < min <= max");
}

[[nodiscard]] inline RangeSpec parse_range(std::string_view text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto colon = text.find(':', start);
        parts.emplace_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    if (parts.size() < 3 || parts.size() > 4)
        throw InvalidParameter("range must be min:max:count[:log|:lin], got '" + std::string(text) + "'");
    RangeSpec r;
    try {
        std::size_t used = 0;
        r.min = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw InvalidParameter("");
        r.max = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw InvalidParameter("");
        r.count = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw InvalidParameter("");
    } catch (const std::exception&) {
        throw InvalidParameter("range must be min:max:count[:log|:lin], got '" + std::string(text) + "'");
    }
    if (parts.size() == 4) {
        if (parts[3] == "log") r.log = true;
        else if (parts[3] == "lin" || parts[3] == "linear") r.log = false;
        else throw InvalidParameter("range spacing must be 'log' or 'lin', got '" + parts[3] + "'");
    }
    validate_range(r, "range");
    return r;
}

enum class EvalMode { analytic_roots, empirical_simulation, both };

[[nodiscard]] inline EvalMode parse_eval_mode(std::string_view s) {
    if (s == "analytic" || s == "analytic_roots") return EvalMode::analytic_roots;
    if (s == "empirical" || s == "empirical_simulation") return EvalMode::empirical_simulation;
    if (s == "both") return EvalMode::both;
    throw InvalidParameter("unknown evaluation mode: " + std::string(s));
}

struct SweepSpec {
    RangeSpec alpha_grid;
    RangeSpec dt_grid;
    std::vector<int> mesh_grid;  ///< n_modes per mesh
    PhysicalParams params = fixture_params();
    EvalMode mode = EvalMode::analytic_roots;
    int empirical_steps = 2000;
    InitialData init{1.0, 1.0, 0.0};
    int jobs = 1;
};

/// Converts mesh sizes h into retained mode counts.
[[nodiscard]] inline std::vector<int> meshes_from_h(double length, const std::vector<double>& hs) {
    std::vector<int> out;
    out.reserve(hs.size());
    for (double h : hs) out.push_back(truncation_from_h(length, h));
    return out;
}

struct SweepRecord {
    double alpha = 0.0;
    double dt = 0.0;
    int n_modes = 0;
    double spectral_radius = NAN;
    int worst_mode = 0;
    Classification classification = Classification::marginal;
    double gamma_max = NAN;
    bool instability_sufficient = false;
    std::optional<double> empirical_growth;
    std::optional<long> blow_up_step;
    /// Empirical verdict matches the analytic one; set only when both ran and
    /// neither is marginal.
    std::optional<bool> empirical_agrees;
    /// Set when the point could not be evaluated.
    std::optional<std::string> error;
};

/// Empirical verdicts need a resolvable change of amplitude over the measured
/// tail: a gain above kEmpiricalGain (or a blow-up) is unstable, a gain below
/// 1 / kEmpiricalGain in every mode is stable, anything in between is marginal
/// at that horizon. A mode whose oscillation is too slow for the horizon leaves
/// the verdict open unless another mode grows.
inline constexpr double kEmpiricalGain = 10.0;

struct EmpiricalOutcome {
    std::optional<double> growth;
    std::optional<long> blow_up_step;
    std::optional<Classification> verdict;
};

[[nodiscard]] inline EmpiricalOutcome empirical_outcome(const PhysicalParams& p, const std::vector<Mode>& spectrum,
                                                        double alpha, double dt, int steps, const InitialData& init) {
    const Discretization d{dt, static_cast<int>(spectrum.size()), steps};
    const SpectrumRun run = simulate_spectrum(Scheme::explicit_rn, p, d, spectrum, alpha, init);
    EmpiricalOutcome out;
    out.blow_up_step = run.first_blow_up;
    bool inconclusive = false;
    double max_log_gain = -INFINITY;  // over decayed modes this stays below every threshold
    for (const auto& traj : run.modes) {
        const std::size_t len = traj.series.size();
        if (len < 24) {
            inconclusive = true;
            continue;
        }
        const auto eta = traj.eta_series();
        const auto tail = std::span<const double>(eta).subspan(len / 2);
        // Decayed far enough that only roundoff (possibly a subnormal limit cycle) remains.
        double head_max = 0.0, tail_max = 0.0;
        for (double v : eta) head_max = std::max(head_max, std::abs(v));
        for (double v : tail) tail_max = std::max(tail_max, std::abs(v));
        if (tail_max <= 1e-150 * head_max) continue;
        const auto g = growth_rate(std::span<const double>(eta), len / 2);
        if (!g) {
            inconclusive = true;
            continue;
        }
        if (!out.growth || *g > *out.growth) out.growth = g;
        max_log_gain = std::max(max_log_gain, std::log(*g) * static_cast<double>(len - len / 2));
    }
    const double resolvable = std::log(kEmpiricalGain);
    if (out.blow_up_step || max_log_gain > resolvable) out.verdict = Classification::unstable;
    else if (inconclusive) out.verdict = std::nullopt;
    else if (max_log_gain < -resolvable) out.verdict = Classification::stable;
    else out.verdict = Classification::marginal;
    return out;
}

/// One record per grid point, ordered alpha-major, then dt, then mesh.
[[nodiscard]] inline std::vector<SweepRecord> run_stability_map(const SweepSpec& spec) {
    validate_range(spec.alpha_grid, "alpha grid");
    validate_range(spec.dt_grid, "dt grid");
    if (spec.mesh_grid.empty()) throw InvalidParameter("mesh grid is empty");
    validate_params(spec.params);

    std::map<int, std::vector<Mode>> spectra;
    for (int n : spec.mesh_grid)
        if (n >= 1) spectra.emplace(n, build_spectrum(spec.params, n));

    const auto alphas = spec.alpha_grid.values();
    const auto dts = spec.dt_grid.values();
    std::vector<SweepRecord> records(alphas.size() * dts.size() * spec.mesh_grid.size());

    parallel_for(records.size(), spec.jobs, [&](std::size_t idx) {
        const std::size_t n_mesh = spec.mesh_grid.size();
        const std::size_t ia = idx / (dts.size() * n_mesh);
        const std::size_t id = (idx / n_mesh) % dts.size();
        const std::size_t im = idx % n_mesh;
        SweepRecord r;
        r.alpha = alphas[ia];
        r.dt = dts[id];
        r.n_modes = spec.mesh_grid[im];
        try {
            if (!spectra.count(r.n_modes)) (void)build_spectrum(spec.params, r.n_modes);  // throws the reason
            const auto& spectrum = spectra.at(r.n_modes);
            const auto check = instability_sufficient(spec.params, spectrum, r.alpha, r.dt);
            r.gamma_max = check.gamma_max;
            r.instability_sufficient = check.unstable;
            std::optional<Classification> analytic;
            if (spec.mode != EvalMode::empirical_simulation) {
                const auto verdict = classify(spec.params, spectrum, r.alpha, r.dt);
                r.spectral_radius = verdict.spectral_radius;
                r.worst_mode = verdict.worst_mode;
                r.classification = verdict.classification;
                analytic = verdict.classification;
            }
            if (spec.mode != EvalMode::analytic_roots) {
                const auto emp = empirical_outcome(spec.params, spectrum, r.alpha, r.dt, spec.empirical_steps, spec.init);
                r.empirical_growth = emp.growth;
                r.blow_up_step = emp.blow_up_step;
                if (spec.mode == EvalMode::empirical_simulation) {
                    r.classification = emp.verdict.value_or(Classification::marginal);
                    if (emp.growth) r.spectral_radius = *emp.growth;
                } else if (analytic && emp.verdict && *analytic != Classification::marginal &&
                           *emp.verdict != Classification::marginal) {
                    r.empirical_agrees = *emp.verdict == *analytic;
                }
            }
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        records[idx] = std::move(r);
    });
    return records;
}

/// Grid points of one alpha where a stable dt sits above an unstable one.
/// Empty when the stable set is a down-set of the sorted dt grid.
[[nodiscard]] inline std::vector<std::string> monotonicity_warnings(const std::vector<SweepRecord>& records) {
    std::map<std::pair<double, int>, std::vector<const SweepRecord*>> groups;
    for (const auto& r : records) groups[{r.alpha, r.n_modes}].push_back(&r);
    std::vector<std::string> warnings;
    for (auto& [key, rows] : groups) {
        std::sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) { return a->dt < b->dt; });
        bool seen_unstable = false;
        for (const auto* r : rows) {
            if (r->error) continue;
            if (r->classification == Classification::unstable) seen_unstable = true;
            else if (seen_unstable && r->classification == Classification::stable) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "alpha=%.6g n_modes=%d: stable at dt=%.6g above an unstable dt",
                              key.first, key.second, r->dt);
                warnings.emplace_back(buf);
                break;
            }
        }
    }
    return warnings;
}

// ---------------------------------------------------------------------------
// Accuracy

struct AccuracyRecord {
    double alpha = 0.0;
    std::vector<double> per_mode_error;  ///< relative L2-in-time error per mode
    std::optional<double> error;         ///< aggregated over modes; empty when blown up
    bool stable = false;
    std::optional<long> blow_up_step;
};

/// Relative discrete L2-in-time difference of the interface displacement of
/// the explicit scheme against the implicit reference, both started from the
/// same modal data. Modes are aggregated root-sum-square:
/// sqrt(sum_i ||d_i||^2) / sqrt(sum_i ||ref_i||^2).
[[nodiscard]] inline std::vector<AccuracyRecord> run_accuracy_scan(const PhysicalParams& p,
                                                                   const std::vector<Mode>& spectrum, double dt,
                                                                   const std::vector<double>& alphas, int horizon,
                                                                   const InitialData& init, int jobs = 1) {
    if (spectrum.empty()) throw InvalidParameter("zero modes");
    if (horizon < 1) throw InvalidParameter("zero steps");
    for (double a : alphas)
        if (a < 0.0 || !std::isfinite(a)) throw InvalidParameter("alphas must be >= 0");
    const Discretization d{dt, static_cast<int>(spectrum.size()), horizon};

    std::vector<ModalTrajectory> reference(spectrum.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i)
        reference[i] = simulate(Scheme::implicit_ref, p, d, spectrum[i], 0.0, init);

    std::vector<AccuracyRecord> out(alphas.size());
    parallel_for(alphas.size(), jobs, [&](std::size_t k) {
        AccuracyRecord rec;
        rec.alpha = alphas[k];
        double diff_total = 0.0, ref_total = 0.0;
        for (std::size_t i = 0; i < spectrum.size(); ++i) {
            const auto traj = simulate(Scheme::explicit_rn, p, d, spectrum[i], rec.alpha, init);
            if (traj.blow_up && (!rec.blow_up_step || *traj.blow_up < *rec.blow_up_step)) rec.blow_up_step = traj.blow_up;
            double diff = 0.0, ref = 0.0;
            for (std::size_t n = 0; n < traj.series.size(); ++n) {
                const double r = reference[i].series[n].eta;
                const double delta = traj.series[n].eta - r;
                diff += delta * delta;
                ref += r * r;
            }
            rec.per_mode_error.push_back(ref > 0.0 ? std::sqrt(diff / ref) : (diff > 0.0 ? INFINITY : 0.0));
            diff_total += diff;
            ref_total += ref;
        }
        rec.stable = !rec.blow_up_step;
        if (rec.stable) rec.error = ref_total > 0.0 ? std::sqrt(diff_total / ref_total) : 0.0;
        else rec.per_mode_error.clear();
        out[k] = std::move(rec);
    });
    return out;
}

/// Index of the smallest reported error; empty if no run stayed bounded.
[[nodiscard]] inline std::optional<std::size_t> accuracy_argmin(const std::vector<AccuracyRecord>& records) {
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < records.size(); ++k) {
        if (!records[k].error) continue;
        if (!best || *records[k].error < *records[*best].error) best = k;
    }
    return best;
}

}  // namespace rnstab
