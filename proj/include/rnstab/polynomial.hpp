#pragma once

// Real quartic polynomials and their complex roots.
//
// Roots come from the eigenvalues of the balanced companion matrix, followed
// by a residual-guarded Newton polish in extended precision. Repeated roots
// are flagged, never rejected.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace rnstab {

/// Which representation a quartic stands for.
///  - chi:       characteristic polynomial of the displacement recurrence, roots y
///  - q:         chi scaled by dt^2/(rho_s H_s)
///  - p:         reciprocal polynomial x^4 Q(1/x), roots x = 1/y
///  - shifted_p: P(1 + U) in the variable U = x - 1
///  - generic:   anything else
enum class QuarticForm { chi, q, p, shifted_p, generic };

[[nodiscard]] constexpr std::string_view to_string(QuarticForm f) {
    switch (f) {
        case QuarticForm::chi: return "chi";
        case QuarticForm::q: return "Q";
        case QuarticForm::p: return "P";
        case QuarticForm::shifted_p: return "P(1+U)";
        case QuarticForm::generic: return "generic";
    }
    return "generic";
}

/// c[0] is the leading (degree-4) coefficient, c[4] the constant term.
struct QuarticCoefficients {
    std::array<double, 5> c{};
    QuarticForm form = QuarticForm::generic;
    bool degenerate = false;  ///< alpha = 0 branch: chi proportional to (y - 1)^4

    [[nodiscard]] double leading() const { return c[0]; }
    [[nodiscard]] double constant() const { return c[4]; }

    template <typename T>
    [[nodiscard]] T operator()(const T& y) const {
        T acc = T(c[0]);
        for (std::size_t k = 1; k < 5; ++k) acc = acc * y + T(c[k]);
        return acc;
    }
};

struct RootSet {
    std::array<std::complex<double>, 4> roots{};
    std::array<double, 4> moduli{};
    std::array<bool, 4> simple{};
    double spectral_radius = 0.0;

    [[nodiscard]] bool all_simple() const {
        return std::all_of(simple.begin(), simple.end(), [](bool s) { return s; });
    }
};

/// Relative pairwise separation below which two roots count as repeated.
inline constexpr double kSimpleRootTolerance = 1e-8;

/// Sorts by decreasing modulus (ties: decreasing imaginary part) and fills
/// moduli, simplicity flags and the spectral radius.
[[nodiscard]] inline RootSet make_root_set(std::array<std::complex<double>, 4> roots) {
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma > mb;
        return a.imag() > b.imag();
    });
    RootSet out;
    out.roots = roots;
    for (std::size_t i = 0; i < 4; ++i) out.moduli[i] = std::abs(roots[i]);
    out.spectral_radius = *std::max_element(out.moduli.begin(), out.moduli.end());
    const double sep = kSimpleRootTolerance * std::max(out.spectral_radius, std::numeric_limits<double>::min());
    for (std::size_t i = 0; i < 4; ++i) {
        bool simple = true;
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j && std::abs(roots[i] - roots[j]) <= sep) simple = false;
        out.simple[i] = simple;
    }
    return out;
}

namespace detail {

using Matrix4 = Eigen::Matrix<double, 4, 4>;

// Parlett-Reinsch balancing with radix-2 scalings (exact in floating point).
inline void balance(Matrix4& a) {
    constexpr double radix = 2.0;
    constexpr double sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < 4; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < 4; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) *= 1.0 / f;
                a.col(i) *= f;
            }
        }
    }
}

template <typename T>
std::pair<T, T> eval_with_derivative(const std::array<long double, 5>& c, const T& x) {
    T p = T(c[0]);
    T dp = T(0);
    for (std::size_t k = 1; k < 5; ++k) {
        dp = dp * x + p;
        p = p * x + T(c[k]);
    }
    return {p, dp};
}

template <typename T>
T polish(const std::array<long double, 5>& c, T x) {
    auto [px, dpx] = eval_with_derivative(c, x);
    for (int it = 0; it < 4; ++it) {
        if (px == T(0) || dpx == T(0)) break;
        const T candidate = x - px / dpx;
        auto [pc, dpc] = eval_with_derivative(c, candidate);
        if (!(std::abs(pc) < std::abs(px))) break;
        x = candidate;
        px = pc;
        dpx = dpc;
    }
    return x;
}

}  // namespace detail

/// Four roots of a real quartic with nonzero leading coefficient.
[[nodiscard]] inline RootSet quartic_roots(const QuarticCoefficients& q) {
    if (q.leading() == 0.0 || !std::isfinite(q.leading()))
        throw std::invalid_argument("quartic_roots: leading coefficient must be nonzero");
    for (double v : q.c)
        if (!std::isfinite(v)) throw std::invalid_argument("quartic_roots: non-finite coefficient");

    detail::Matrix4 companion = detail::Matrix4::Zero();
    for (int j = 0; j < 4; ++j) companion(0, j) = -q.c[static_cast<std::size_t>(j + 1)] / q.leading();
    for (int i = 1; i < 4; ++i) companion(i, i - 1) = 1.0;
    detail::balance(companion);

    Eigen::EigenSolver<detail::Matrix4> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("quartic_roots: eigenvalue iteration failed");
    const auto eig = solver.eigenvalues();

    std::array<long double, 5> cl{};
    for (std::size_t k = 0; k < 5; ++k) cl[k] = static_cast<long double>(q.c[k]);

    std::vector<std::complex<double>> out;
    out.reserve(4);
    for (int k = 0; k < 4; ++k) {
        const std::complex<double> r = eig(k);
        if (r.imag() == 0.0) {
            out.emplace_back(static_cast<double>(detail::polish(cl, static_cast<long double>(r.real()))), 0.0);
        } else if (r.imag() > 0.0) {
            const auto x = detail::polish(cl, std::complex<long double>(r.real(), r.imag()));
            const std::complex<double> root(static_cast<double>(x.real()), std::abs(static_cast<double>(x.imag())));
            out.push_back(root);
            out.push_back(std::conj(root));
        }
    }
    if (out.size() != 4) throw std::runtime_error("quartic_roots: unpaired complex eigenvalue");
    return make_root_set({out[0], out[1], out[2], out[3]});
}

}  // namespace rnstab
