#pragma once
// Spectral design with the scaled intertwiner: uniform rescaling of a whole
// spectrum, and the fixed-ground map E = e^{-2 lambda} E0 that pins the new
// ground level at E0 while the excited levels scale by kappa = E0 / E.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "scalint/eigensolver.hpp"
#include "scalint/errors.hpp"
#include "scalint/intertwining.hpp"
#include "scalint/riccati.hpp"
#include "scalint/spectral_verify.hpp"

namespace scalint {

/// Open interval (lo, hi) of admissible factorization energies; both ends on
/// the same side of zero.
struct EnergyInterval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = 0.0;

    bool contains(double e) const { return e > lo && e < hi; }
    bool same_sign() const { return lo < hi && (hi <= 0.0 || lo >= 0.0); }
};

inline constexpr double kPositiveIntervalMargin = 1e-6;

/// Oscillator presets: I1 = (-inf, 0) and I2 = (0, 1/2), the latter kept 1e-6 below 1/2.
inline EnergyInterval oscillator_negative_interval() { return {-std::numeric_limits<double>::infinity(), 0.0}; }
inline EnergyInterval oscillator_positive_interval() { return {0.0, 0.5 - kPositiveIntervalMargin}; }

struct DesignTarget {
    double ground_level = -0.5;   // E0, kept fixed
    double spacing_factor = 1.0;  // kappa = E0 / E
    EnergyInterval interval = oscillator_negative_interval();
};

/// lambda = ln(sigma)/2, so every level is multiplied by sigma = e^{2 lambda}.
inline double design_uniform_scale(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DesignError(DesignError::Kind::NonPositive, "design_uniform_scale: sigma must be positive, got " + std::to_string(sigma));
    }
    return 0.5 * std::log(sigma);
}

inline IntertwiningParams design_fixed_ground(const DesignTarget& target, double nu = 0.0) {
    const double e0 = target.ground_level;
    const double kappa = target.spacing_factor;
    if (!target.interval.same_sign()) {
        throw DesignError(DesignError::Kind::SameSign, "design_fixed_ground: interval endpoints must have the same sign");
    }
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw DesignError(DesignError::Kind::SameSign,
                          "design_fixed_ground: kappa = E0/E must be positive (E and E0 of the same sign), got " +
                              std::to_string(kappa));
    }
    if (!target.interval.contains(e0)) {
        throw DesignError(DesignError::Kind::Interval, "design_fixed_ground: E0 = " + std::to_string(e0) +
                                                           " lies outside the admissible interval");
    }
    const double energy = e0 / kappa;
    if (!target.interval.contains(energy)) {
        throw DesignError(DesignError::Kind::Interval, "design_fixed_ground: E = E0/kappa = " + std::to_string(energy) +
                                                           " leaves the admissible interval");
    }
    return {0.5 * std::log(kappa), energy, nu};
}

/// Predicted spectrum {E0, kappa (n + 1/2)} of the oscillator fixed-ground design.
inline std::vector<double> predicted_fixed_ground_spectrum(const DesignTarget& target, std::size_t k) {
    std::vector<double> base;
    for (std::size_t n = 0; n < k; ++n) base.push_back(static_cast<double>(n) + 0.5);
    const auto p = design_fixed_ground(target);
    return predicted_partner_spectrum(base, p.energy, p.lambda, k);
}

/// Figure-style sample set: `count` energies -0.5 * 10^{(k - 23)/23},
/// geometric in (-2.5, -0.05] and containing E = -1/2 exactly.
inline std::vector<double> figure1_energy_samples(std::size_t count = 40) {
    std::vector<double> out;
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(-0.5 * std::pow(10.0, (static_cast<double>(k) - 23.0) / 23.0));
    }
    return out;
}

struct FamilyRow {
    double energy = 0.0;
    double lambda = 0.0;
    std::optional<GridFunction> v2;
    WellShape shape = WellShape::SingleWell;
    double e0_computed = 0.0;
    double e1_computed = 0.0;
    std::string error;  // empty when the row succeeded

    bool ok() const { return error.empty(); }
};

/// One row of the fixed-ground oscillator family: lambda from e^{2 lambda} = E0/E,
/// V_2 on `grid`, its shape, and the two lowest FD levels computed on the
/// symmetric hull of `grid` dilated by e^{-lambda}.
inline FamilyRow family_row(double ground_level, double nu, double energy, const GridSpec& grid) {
    FamilyRow row;
    row.energy = energy;
    try {
        if (!(energy < 0.5)) throw DomainError("E must be < 1/2");
        if (!(energy * ground_level > 0.0)) throw DesignError(DesignError::Kind::SameSign, "E and E0 must have the same sign");
        if (energy > 0.0 && !(energy < 0.5 - kPositiveIntervalMargin)) throw DomainError("E must stay 1e-6 below 1/2");
        row.lambda = 0.5 * std::log(ground_level / energy);
        const auto sp = Superpotential::oscillator(energy, nu);
        const auto v = PotentialModel::harmonic();
        const auto sampled = sample_superpotential(sp, row.lambda, grid);
        row.v2 = scaled_partner(v, sampled.deriv, row.lambda);
        row.shape = classify_shape(*row.v2);

        const double half = std::max(std::abs(grid.x_min()), std::abs(grid.x_max()));
        const GridSpec xg = GridSpec(-half, half, grid.n()).dilated(row.lambda);
        const auto eig_alpha = sample_superpotential(sp, row.lambda, xg);
        const auto levels = lowest_k_eigenvalues(discretize(scaled_partner(v, eig_alpha.deriv, row.lambda)), 2);
        row.e0_computed = levels[0];
        row.e1_computed = levels[1];
    } catch (const Error& e) {
        row.v2.reset();
        row.error = e.what();
    }
    return row;
}

/// Rows in input order; a failing sample records its error and the sweep continues.
inline std::vector<FamilyRow> sweep_family(double ground_level, double nu, const std::vector<double>& energy_samples,
                                           const GridSpec& grid) {
    std::vector<FamilyRow> rows;
    rows.reserve(energy_samples.size());
    for (double e : energy_samples) rows.push_back(family_row(ground_level, nu, e, grid));
    return rows;
}

}  // namespace scalint
