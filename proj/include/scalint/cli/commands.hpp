#pragma once
// The five tool commands. Each returns a table plus an exit status:
// 0 all checks passed, 2 validation error, 3 numerical check failure, 4 I/O error.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "scalint/cli/config.hpp"
#include "scalint/cli/table.hpp"
#include "scalint/design.hpp"
#include "scalint/eigensolver.hpp"
#include "scalint/intertwining.hpp"
#include "scalint/riccati.hpp"
#include "scalint/separable2d.hpp"
#include "scalint/spectral_verify.hpp"

namespace scalint::cli {

enum ExitStatus : int { kExitOk = 0, kExitValidation = 2, kExitCheckFailed = 3, kExitIo = 4 };

/// Exit status for an exception escaping a command.
inline int exit_status_for(const std::exception& e) {
    if (dynamic_cast<const IoError*>(&e)) return kExitIo;
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
        dynamic_cast<const UsageError*>(&e) || dynamic_cast<const DesignError*>(&e)) {
        return kExitValidation;
    }
    return kExitCheckFailed;
}

struct CommandResult {
    Table table;
    int exit_status = kExitOk;
};

inline constexpr double kRiccatiTolerance = 1e-8;
inline constexpr double kDoubleFormTolerance = 1e-10;
inline constexpr double kOperatorTolerance = 5e-3;
/// Energies this close to -1/2 sit at the single/double/peaked transition.
inline constexpr double kAmbiguousBand = 0.02;

namespace detail {

inline Superpotential superpotential_for(const RunConfig& cfg) {
    return cfg.force ? Superpotential::oscillator_unchecked(cfg.params.energy, cfg.params.nu)
                     : Superpotential::oscillator(cfg.params.energy, cfg.params.nu);
}

/// Gaussians centred at 0 and +-1 plus the FD ground state of H.
inline std::vector<GridFunction> operator_test_functions(const PotentialModel& v, const GridSpec& base) {
    std::vector<GridFunction> tests;
    for (double c : {0.0, 1.0, -1.0}) {
        tests.push_back(GridFunction::sample(base, [c](double y) { return std::exp(-0.5 * (y - c) * (y - c)); }));
    }
    const auto h = discretize(v.sample(base));
    const auto e0 = lowest_k_eigenvalues(h, 1).front();
    tests.emplace_back(base, eigenvector(h, e0));
    return tests;
}

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline Table check_table() {
    return Table{{"kind", "name", "index", "expected", "computed", "residual", "tolerance", "passed", "message"}, {}};
}

}  // namespace detail

/// Columns x, V, alpha, V2, psi_ground for the oscillator family member (lambda, E, nu).
inline CommandResult cmd_generate(const RunConfig& cfg) {
    validate(cfg);
    const auto v = PotentialModel::harmonic();
    const auto grid = cfg.partner_grid();
    const auto sp = detail::superpotential_for(cfg);
    const auto sampled = sample_superpotential(sp, cfg.params.lambda, grid);
    const auto v2 = scaled_partner(v, sampled.deriv, cfg.params.lambda);
    const auto psi = ground_state_wavefunction(sampled.alpha);

    CommandResult r{Table{{"x", "V", "alpha", "V2", "psi_ground"}, {}}, kExitOk};
    r.table.rows.reserve(grid.n());
    for (std::size_t i = 0; i < grid.n(); ++i) {
        const double x = grid.x(i);
        r.table.add({x, v(x), sampled.alpha[i], v2[i], psi[i]});
    }
    return r;
}

/// Spectrum map plus the Riccati, intertwining, double-form and factorization
/// identities. Exit 0 iff every check passes.
inline CommandResult cmd_verify(const RunConfig& cfg) {
    validate(cfg);
    CommandResult r{detail::check_table(), kExitOk};
    auto check = [&](const std::string& name, double residual, double tol) {
        const bool ok = residual < tol;
        r.table.add({std::string("check"), name, -1LL, detail::kNaN, detail::kNaN, residual, tol, ok, std::string()});
        if (!ok) r.exit_status = kExitCheckFailed;
    };
    try {
        const auto v = PotentialModel::harmonic();
        const auto& p = cfg.params;
        const auto base = cfg.base_grid();
        const auto xg = base.dilated(p.lambda);
        const auto sp = detail::superpotential_for(cfg);

        const auto tilde = sample_superpotential(sp, 0.0, base);
        check("riccati (scaled coordinate)", riccati_residual(tilde.alpha, tilde.deriv, v, p.energy), kRiccatiTolerance);

        const auto sampled = sample_superpotential(sp, p.lambda, xg);
        const auto f = darboux_potential_difference(v, sampled.deriv, p.lambda);
        const auto v2 = scaled_partner(v, sampled.deriv, p.lambda);
        double worst = 0.0;
        for (std::size_t i = 0; i < xg.n(); ++i) {
            worst = std::max(worst, std::abs((v(xg.x(i)) - p.spectral_scale() * f[i]) - v2[i]));
        }
        check("partner double form V - e^{2l} f = e^{2l} V(e^l x) - alpha'", worst, kDoubleFormTolerance);

        const auto tests = detail::operator_test_functions(v, base);
        check("intertwining H2 A+ = e^{2l} A+ H", intertwining_residual(v, sampled.alpha, p, tests), kOperatorTolerance);
        const auto [f1, f2] = factorization_residual(v, sampled.alpha, p, tests);
        check("factorization H = e^{-2l} A A+ + E", f1, kOperatorTolerance);
        check("factorization H2 = A+ A + e^{2l} E", f2, kOperatorTolerance);

        const auto report = verify_spectrum_map(v, sp, p, cfg.k_levels, cfg.tol, base);
        for (std::size_t i = 0; i < report.expected.size(); ++i) {
            const bool ok = report.abs_errors[i] <= cfg.tol;
            r.table.add({std::string("eigenvalue"), std::string("level"), static_cast<long long>(i), report.expected[i],
                         report.computed[i], report.abs_errors[i], cfg.tol, ok, std::string()});
        }
        if (!report.passed) r.exit_status = kExitCheckFailed;
    } catch (const Error& e) {
        r.table.add({std::string("error"), std::string("exception"), -1LL, detail::kNaN, detail::kNaN, detail::kNaN,
                     detail::kNaN, false, std::string(e.what())});
        r.exit_status = kExitCheckFailed;
    }
    return r;
}

/// Fixed-ground design: (lambda, E, nu, epsilon) and the predicted spectrum,
/// optionally checked against the FD spectrum.
inline CommandResult cmd_design(const RunConfig& cfg) {
    validate(cfg);
    DesignTarget target = *cfg.design;
    target.interval = target.ground_level > 0.0 ? oscillator_positive_interval() : oscillator_negative_interval();
    const auto params = design_fixed_ground(target, cfg.params.nu);
    const auto predicted = predicted_fixed_ground_spectrum(target, cfg.k_levels);

    CommandResult r{Table{{"record", "name", "index", "value", "computed", "passed"}, {}}, kExitOk};
    r.table.add({std::string("param"), std::string("lambda"), -1LL, params.lambda, detail::kNaN, true});
    r.table.add({std::string("param"), std::string("energy"), -1LL, params.energy, detail::kNaN, true});
    r.table.add({std::string("param"), std::string("nu"), -1LL, params.nu, detail::kNaN, true});
    r.table.add({std::string("param"), std::string("epsilon"), -1LL, params.epsilon(), detail::kNaN, true});

    std::vector<double> computed(predicted.size(), detail::kNaN);
    bool passed = true;
    if (cfg.chain_verify) {
        const auto report = verify_spectrum_map(PotentialModel::harmonic(), params, cfg.k_levels, cfg.tol, cfg.base_grid());
        computed = report.computed;
        passed = report.passed;
    }
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool ok = !cfg.chain_verify || std::abs(computed[i] - predicted[i]) <= cfg.tol;
        r.table.add({std::string("level"), std::string("predicted"), static_cast<long long>(i), predicted[i], computed[i], ok});
    }
    if (!passed) r.exit_status = kExitCheckFailed;
    return r;
}

inline std::string shape_label(const FamilyRow& row) {
    if (!row.ok()) return "Error";
    const double d = std::abs(row.energy + 0.5);
    if (d > 0.0 && d < kAmbiguousBand) return "Ambiguous";
    return to_string(row.shape);
}

/// Long-format family table: one row per (E, x) for plotting V_2 as a surface.
inline CommandResult cmd_sweep(const RunConfig& cfg) {
    validate(cfg);
    const double e0 = cfg.design ? cfg.design->ground_level : -0.5;
    const auto samples = cfg.preset == "figure1" ? figure1_energy_samples() : cfg.energies;
    const auto grid = cfg.base_grid();
    const auto rows = sweep_family(e0, cfg.params.nu, samples, grid);

    CommandResult r{Table{{"energy", "lambda", "x", "V2", "shape_class", "e0_computed", "e1_computed", "error"}, {}},
                    kExitCheckFailed};
    for (const auto& row : rows) {
        if (!row.ok()) {
            r.table.add({row.energy, detail::kNaN, detail::kNaN, detail::kNaN, shape_label(row), detail::kNaN, detail::kNaN,
                         row.error});
            continue;
        }
        r.exit_status = kExitOk;
        const auto label = shape_label(row);
        for (std::size_t i = 0; i < grid.n(); ++i) {
            r.table.add({row.energy, row.lambda, grid.x(i), (*row.v2)[i], label, row.e0_computed, row.e1_computed,
                         std::string()});
        }
    }
    return r;
}

/// Per-axis Riccati residuals, block commutator residual and the 2D partner
/// spectrum against the additive per-axis prediction.
inline CommandResult cmd_check2d(const RunConfig& cfg) {
    validate(cfg);
    CommandResult r{detail::check_table(), kExitOk};
    auto check = [&](const std::string& name, double residual, double tol) {
        const bool ok = residual < tol;
        r.table.add({std::string("check"), name, -1LL, detail::kNaN, detail::kNaN, residual, tol, ok, std::string()});
        if (!ok) r.exit_status = kExitCheckFailed;
    };
    const auto px = cfg.params;
    const auto py = cfg.axis_y_params();
    const auto base = cfg.base_grid();
    const auto ax = oscillator_axis(px.energy, px.nu, px.lambda, base, Axis::X);
    const auto ay = oscillator_axis(py.energy, py.nu, py.lambda, base, Axis::Y);
    const auto v = PotentialModel::harmonic();

    for (const auto& [label, p] : {std::pair{"riccati axis x", px}, std::pair{"riccati axis y", py}}) {
        const auto a = sample_superpotential(Superpotential::oscillator(p.energy, p.nu), 0.0, base);
        check(label, riccati_residual(a.alpha, a.deriv, v, p.energy), kRiccatiTolerance);
    }

    auto ax0 = ax;
    auto ay0 = ay;
    ax0.lambda = ay0.lambda = 0.0;
    const auto tests = detail::operator_test_functions(v, base);
    check("block commutator [H, A+] = F A+", block_commutator_residual(ax0, ay0, tests, tests), kOperatorTolerance);

    const std::size_t k = cfg.k_levels;
    const auto spectrum = separable_spectrum(ax, ay, k, BlockSide::Partner);
    std::vector<double> base_levels;
    for (std::size_t n = 0; n < k; ++n) base_levels.push_back(static_cast<double>(n) + 0.5);
    const auto lx = predicted_partner_spectrum(base_levels, px.energy, px.lambda, k);
    const auto ly = predicted_partner_spectrum(base_levels, py.energy, py.lambda, k);
    std::vector<double> predicted;
    for (double a : lx)
        for (double b : ly) predicted.push_back(a + b);
    std::sort(predicted.begin(), predicted.end());
    predicted.resize(k);

    std::size_t index = 0;
    for (const auto& group : spectrum.groups) {
        for (std::size_t m = 0; m < group.multiplicity; ++m, ++index) {
            const double err = std::abs(spectrum.levels[index] - predicted[index]);
            const bool ok = err <= cfg.tol;
            r.table.add({std::string("level2d"), "multiplicity " + std::to_string(group.multiplicity),
                         static_cast<long long>(index), predicted[index], spectrum.levels[index], err, cfg.tol, ok,
                         std::string()});
            if (!ok) r.exit_status = kExitCheckFailed;
        }
    }
    return r;
}

inline CommandResult run(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::Generate: return cmd_generate(cfg);
        case Command::Verify: return cmd_verify(cfg);
        case Command::Design: return cmd_design(cfg);
        case Command::Sweep: return cmd_sweep(cfg);
        case Command::Check2d: return cmd_check2d(cfg);
    }
    throw ConfigError("unknown command");
}

}  // namespace scalint::cli
