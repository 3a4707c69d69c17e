#pragma once
// Independent numerical checks of the scaled intertwining construction:
// finite-difference spectra of the partner, discretised operator identities
// and the shape of the partner well.
//
// Grid convention: checks take a base grid for the original Hamiltonian H
// (coordinate y). The partner H_2 lives on its dilation by e^{-lambda}
// (GridSpec::dilated), so node i of one grid maps onto node i of the other
// and U acts on samples as multiplication by e^{lambda/2}.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "scalint/eigensolver.hpp"
#include "scalint/errors.hpp"
#include "scalint/grid.hpp"
#include "scalint/intertwining.hpp"
#include "scalint/potential.hpp"
#include "scalint/riccati.hpp"

namespace scalint {

inline constexpr double kInteriorTrim = 0.05;
inline constexpr double kBoundaryAmplitudeLimit = 1e-8;

/// Symmetric base interval [-L, L], L = max(12, 8/sqrt(min_curvature)).
inline GridSpec auto_base_grid(double min_curvature, std::size_t n) {
    const double half = min_curvature > 0.0 ? std::max(12.0, 8.0 / std::sqrt(min_curvature)) : 12.0;
    return GridSpec(-half, half, n);
}

struct SpectrumReport {
    std::vector<double> expected;
    std::vector<double> computed;
    std::vector<double> abs_errors;
    std::vector<double> rel_errors;
    double tolerance = 0.0;
    bool passed = false;
    double boundary_amplitude = 0.0;  // of the highest computed state
};

inline SpectrumReport make_spectrum_report(std::vector<double> expected, std::vector<double> computed, double tol) {
    if (expected.size() != computed.size()) throw UsageError("make_spectrum_report: size mismatch");
    SpectrumReport r;
    r.tolerance = tol;
    r.passed = true;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const double e = std::abs(computed[i] - expected[i]);
        r.abs_errors.push_back(e);
        r.rel_errors.push_back(expected[i] != 0.0 ? e / std::abs(expected[i]) : e);
        r.passed = r.passed && e <= tol;
    }
    r.expected = std::move(expected);
    r.computed = std::move(computed);
    return r;
}

/// e^{2 lambda} {E} U e^{2 lambda} {base levels}, the k smallest, ascending.
inline std::vector<double> predicted_partner_spectrum(const std::vector<double>& base_levels, double energy, double lambda,
                                                      std::size_t k) {
    const double s2 = std::exp(2.0 * lambda);
    std::vector<double> all;
    all.push_back(s2 * energy);
    for (double e : base_levels) all.push_back(s2 * e);
    std::sort(all.begin(), all.end());
    if (all.size() < k) throw UsageError("predicted_partner_spectrum: not enough base levels");
    all.resize(k);
    return all;
}

/// FD spectrum of V_2 on base_grid.dilated(lambda) against the predicted map.
/// Base levels are n + 1/2 for the oscillator and FD eigenvalues of V otherwise.
inline SpectrumReport verify_spectrum_map(const PotentialModel& v, const Superpotential& sp, const IntertwiningParams& params,
                                          std::size_t k, double tol, const GridSpec& base_grid) {
    const GridSpec xg = base_grid.dilated(params.lambda);
    const auto sampled = sample_superpotential(sp, params.lambda, xg);
    const auto v2 = scaled_partner(v, sampled.deriv, params.lambda);
    const auto h2 = discretize(v2);
    auto computed = lowest_k_eigenvalues(h2, k);
    const double amp = boundary_amplitude(eigenvector(h2, computed.back()));
    if (amp > kBoundaryAmplitudeLimit) {
        throw UsageError("verify_spectrum_map: grid too narrow, level " + std::to_string(k - 1) +
                         " has boundary amplitude " + std::to_string(amp));
    }

    std::vector<double> base_levels;
    if (v.is_harmonic()) {
        for (std::size_t n = 0; n < k; ++n) base_levels.push_back(static_cast<double>(n) + 0.5);
    } else {
        base_levels = lowest_k_eigenvalues(discretize(v.sample(base_grid)), k);
    }
    auto report = make_spectrum_report(predicted_partner_spectrum(base_levels, sp.energy, params.lambda, k),
                                       std::move(computed), tol);
    report.boundary_amplitude = amp;
    return report;
}

/// Oscillator overload using the closed-form superpotential.
inline SpectrumReport verify_spectrum_map(const PotentialModel& v, const IntertwiningParams& params, std::size_t k,
                                          double tol, const GridSpec& base_grid) {
    if (!v.is_harmonic()) {
        throw UsageError("verify_spectrum_map: closed form available only for the harmonic oscillator; "
                         "supply a numeric superpotential");
    }
    return verify_spectrum_map(v, Superpotential::oscillator(params.energy, params.nu), params, k, tol, base_grid);
}

namespace detail {

/// (-1/2 D^2 + V) phi with Dirichlet ends, V given per node.
inline std::vector<double> apply_hamiltonian(std::span<const double> v, std::span<const double> phi, double h) {
    const std::size_t n = phi.size();
    const double c = 0.5 / (h * h);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i > 0 ? phi[i - 1] : 0.0;
        const double right = i + 1 < n ? phi[i + 1] : 0.0;
        out[i] = -c * (left - 2.0 * phi[i] + right) + v[i] * phi[i];
    }
    return out;
}

struct ScaledOperators {
    GridSpec base;
    GridSpec partner;
    std::vector<double> v;   // V on base nodes
    std::vector<double> v2;  // e^{2 lambda} V(e^lambda x) - alpha' on partner nodes
};

inline ScaledOperators scaled_operators(const PotentialModel& potential, const GridFunction& alpha,
                                        const IntertwiningParams& params, const GridSpec& base) {
    ScaledOperators ops{base, base.dilated(params.lambda), {}, {}};
    if (!(alpha.grid() == ops.partner)) {
        throw UsageError("operator residual: alpha must be sampled on the base grid dilated by e^{-lambda}");
    }
    const auto alpha_deriv = derivative(alpha.values(), ops.partner.h());
    const double s2 = params.spectral_scale();
    ops.v.resize(base.n());
    ops.v2.resize(base.n());
    for (std::size_t i = 0; i < base.n(); ++i) {
        ops.v[i] = potential(base.x(i));
        ops.v2[i] = s2 * ops.v[i] - alpha_deriv[i];
    }
    return ops;
}

inline std::vector<double> difference(std::span<const double> a, std::span<const double> b) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

inline void require_base_grid(const std::vector<GridFunction>& tests, const char* where) {
    if (tests.empty()) throw UsageError(std::string(where) + ": no test functions");
    for (const auto& t : tests) {
        if (!(t.grid() == tests.front().grid())) throw UsageError(std::string(where) + ": test functions on different grids");
    }
}

}  // namespace detail

/// max over test functions of |(H_2 A+ - e^{2 lambda} A+ H) psi| / |A+ psi|,
/// interior-restricted. Test functions live on the base grid; alpha on its
/// dilation by e^{-lambda}.
inline double intertwining_residual(const PotentialModel& potential, const GridFunction& alpha,
                                    const IntertwiningParams& params, const std::vector<GridFunction>& tests) {
    detail::require_base_grid(tests, "intertwining_residual");
    const auto ops = detail::scaled_operators(potential, alpha, params, tests.front().grid());
    const double hy = ops.base.h();
    const double hx = ops.partner.h();
    const double u = std::exp(0.5 * params.lambda);
    const double s2 = params.spectral_scale();
    const auto range = interior(ops.base.n(), kInteriorTrim);

    double worst = 0.0;
    for (const auto& psi : tests) {
        std::vector<double> upsi(psi.size());
        for (std::size_t i = 0; i < psi.size(); ++i) upsi[i] = u * psi[i];
        const auto raised = apply_raising(alpha.values(), upsi, hx);
        const auto lhs = detail::apply_hamiltonian(ops.v2, raised, hx);

        auto hpsi = detail::apply_hamiltonian(ops.v, psi.values(), hy);
        for (auto& x : hpsi) x *= u;
        auto rhs = apply_raising(alpha.values(), hpsi, hx);
        for (auto& x : rhs) x *= s2;

        const double denom = l2_norm(raised, hx, range);
        if (denom == 0.0) throw DomainError("intertwining_residual: degenerate test function (A+ psi = 0)");
        worst = std::max(worst, l2_norm(detail::difference(lhs, rhs), hx, range) / denom);
    }
    return worst;
}

/// Relative residuals of H = e^{-2 lambda} A A+ + E (first) and
/// H_2 = A+ A + e^{2 lambda} E (second), with A = (1/sqrt 2) U+ (D + alpha).
/// The second identity is tested on U psi for each base-grid test function.
inline std::pair<double, double> factorization_residual(const PotentialModel& potential, const GridFunction& alpha,
                                                        const IntertwiningParams& params,
                                                        const std::vector<GridFunction>& tests) {
    detail::require_base_grid(tests, "factorization_residual");
    const auto ops = detail::scaled_operators(potential, alpha, params, tests.front().grid());
    const double hy = ops.base.h();
    const double hx = ops.partner.h();
    const double u = std::exp(0.5 * params.lambda);
    const double s2 = params.spectral_scale();
    const double e = params.energy;
    const auto range = interior(ops.base.n(), kInteriorTrim);

    double first = 0.0, second = 0.0;
    for (const auto& psi : tests) {
        const double psi_norm = l2_norm(psi.values(), hy, range);
        if (psi_norm == 0.0) throw DomainError("factorization_residual: degenerate test function");

        std::vector<double> upsi(psi.size());
        for (std::size_t i = 0; i < psi.size(); ++i) upsi[i] = u * psi[i];

        // H psi  vs  e^{-2 lambda} A A+ psi + E psi
        const auto raised = apply_raising(alpha.values(), upsi, hx);
        const auto lowered = apply_lowering(alpha.values(), raised, hx);
        const auto hpsi = detail::apply_hamiltonian(ops.v, psi.values(), hy);
        std::vector<double> rhs(psi.size());
        for (std::size_t i = 0; i < psi.size(); ++i) rhs[i] = lowered[i] / (u * s2) + e * psi[i];
        first = std::max(first, l2_norm(detail::difference(hpsi, rhs), hy, range) / psi_norm);

        // H_2 phi  vs  A+ A phi + e^{2 lambda} E phi, phi = U psi (U U+ = 1 on samples)
        const double phi_norm = l2_norm(upsi, hx, range);
        const auto a_phi = apply_lowering(alpha.values(), upsi, hx);
        const auto aa_phi = apply_raising(alpha.values(), a_phi, hx);
        const auto h2phi = detail::apply_hamiltonian(ops.v2, upsi, hx);
        std::vector<double> rhs2(psi.size());
        for (std::size_t i = 0; i < psi.size(); ++i) rhs2[i] = aa_phi[i] + s2 * e * upsi[i];
        second = std::max(second, l2_norm(detail::difference(h2phi, rhs2), hx, range) / phi_norm);
    }
    return {first, second};
}

enum class WellShape { SingleWell, DoubleWell, PeakedSingleWell };

inline const char* to_string(WellShape s) {
    switch (s) {
        case WellShape::SingleWell: return "SingleWell";
        case WellShape::DoubleWell: return "DoubleWell";
        case WellShape::PeakedSingleWell: return "PeakedSingleWell";
    }
    return "?";
}

/// Curvature at the bottom must exceed the outer curvature by this factor to
/// count as a peaked well.
inline constexpr double kPeakedCurvatureRatio = 1.1;

/// Shape of a symmetric confining well after a 5-point moving average:
///   DoubleWell        at least two strict local minima;
///   PeakedSingleWell  one minimum whose curvature exceeds kPeakedCurvatureRatio
///                     times the curvature of the outer envelope (a narrow dip
///                     sitting in a wider well);
///   SingleWell        otherwise (parabola-like or flat-bottomed).
/// The outer envelope curvature is averaged over 80%-95% of the half-width.
inline WellShape classify_shape(const GridFunction& v2) {
    const GridSpec& g = v2.grid();
    const std::size_t n = g.n();
    if (n < 41) throw UsageError("classify_shape: need at least 41 grid points");
    if (std::abs(g.x_min() + g.x_max()) > 1e-9 * (g.x_max() - g.x_min())) {
        throw UsageError("classify_shape: grid must be symmetric about x = 0");
    }
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= 2 ? i - 2 : 0;
        const std::size_t hi = std::min(n - 1, i + 2);
        double acc = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) acc += v2[j];
        s[i] = acc / static_cast<double>(hi - lo + 1);
    }

    std::vector<std::size_t> minima;
    for (std::size_t i = 3; i + 3 < n; ++i) {
        if (s[i] < s[i - 1] && s[i] < s[i + 1]) minima.push_back(i);
    }
    if (minima.size() >= 2) return WellShape::DoubleWell;

    const std::size_t stride = std::max<std::size_t>(1, n / 200);
    const double hs = stride * g.h();
    auto curvature = [&](std::size_t i) { return (s[i + stride] - 2.0 * s[i] + s[i - stride]) / (hs * hs); };

    const std::size_t bottom = minima.empty() ? n / 2 : minima.front();
    if (bottom < stride || bottom + stride >= n) return WellShape::SingleWell;
    const double bottom_curv = curvature(bottom);

    const std::size_t mid = n / 2;
    const auto half = static_cast<double>(mid);
    const auto from = static_cast<std::size_t>(0.80 * half);
    const auto to = static_cast<std::size_t>(0.95 * half);
    double outer = 0.0;
    std::size_t count = 0;
    for (std::size_t k = from; k <= to; ++k) {
        const std::size_t right = mid + k;
        const std::size_t left = mid - k;
        if (right + stride < n) {
            outer += curvature(right);
            ++count;
        }
        if (left >= stride) {
            outer += curvature(left);
            ++count;
        }
    }
    outer /= static_cast<double>(std::max<std::size_t>(count, 1));
    if (outer > 0.0 && bottom_curv > kPeakedCurvatureRatio * outer) return WellShape::PeakedSingleWell;
    return WellShape::SingleWell;
}

}  // namespace scalint
