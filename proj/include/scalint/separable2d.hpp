#pragma once
// Separable 2D potentials as 2x2 diagonal block operators: one first-order
// factorization per coordinate axis, each with its own factorization energy
// and scaling parameter. Nothing here ever materialises an n x n 2D grid.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scalint/eigensolver.hpp"
#include "scalint/errors.hpp"
#include "scalint/grid.hpp"
#include "scalint/intertwining.hpp"
#include "scalint/potential.hpp"
#include "scalint/riccati.hpp"
#include "scalint/spectral_verify.hpp"

namespace scalint {

enum class Axis { X, Y };

inline constexpr double kAxisRiccatiTolerance = 1e-8;

/// Superpotential of one axis, sampled in that axis' base coordinate.
struct AxisFactorization {
    PotentialModel potential;
    GridFunction alpha;
    GridFunction alpha_deriv;
    double axis_energy = -0.5;
    double lambda = 0.0;
    Axis axis = Axis::X;

    const GridSpec& grid() const { return alpha.grid(); }

    void validate() const {
        const double r = riccati_residual(alpha, alpha_deriv, potential, axis_energy);
        if (!(r < kAxisRiccatiTolerance)) {
            throw DomainError(std::string("axis ") + (axis == Axis::X ? "x" : "y") + ": Riccati residual " +
                              std::to_string(r) + " exceeds " + std::to_string(kAxisRiccatiTolerance));
        }
    }
};

inline AxisFactorization oscillator_axis(double energy, double nu, double lambda, const GridSpec& grid, Axis axis) {
    const auto sampled = sample_superpotential(Superpotential::oscillator(energy, nu), 0.0, grid);
    return {PotentialModel::harmonic(), sampled.alpha, sampled.deriv, energy, lambda, axis};
}

/// A two-component state (first component on the x axis, second on y).
struct BlockState {
    std::vector<double> first;
    std::vector<double> second;
};

/// diag(A+, B+). The off-diagonal blocks are identically zero, so component i
/// of the result depends only on component i of the input.
struct BlockOperator2D {
    GridFunction alpha_x;
    GridFunction alpha_y;

    static BlockOperator2D raising(const AxisFactorization& ax, const AxisFactorization& ay) { return {ax.alpha, ay.alpha}; }

    BlockState apply(const BlockState& s) const {
        return {apply_raising(alpha_x.values(), s.first, alpha_x.grid().h()),
                apply_raising(alpha_y.values(), s.second, alpha_y.grid().h())};
    }
};

namespace detail {

/// (alpha^2 + alpha')/2 + E, i.e. the potential of A A+ + E.
inline GridFunction block_potential(const AxisFactorization& a) {
    std::vector<double> v(a.alpha.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (a.alpha[i] * a.alpha[i] + a.alpha_deriv[i]) + a.axis_energy;
    return GridFunction(a.grid(), std::move(v));
}

/// Scaled partner block on the dilated grid: e^{2 lambda}((alpha^2 - alpha')/2 + E) per node.
inline GridFunction partner_block_potential(const AxisFactorization& a) {
    const double s2 = std::exp(2.0 * a.lambda);
    std::vector<double> v(a.alpha.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = s2 * (0.5 * (a.alpha[i] * a.alpha[i] - a.alpha_deriv[i]) + a.axis_energy);
    }
    return GridFunction(a.grid().dilated(a.lambda), std::move(v));
}

}  // namespace detail

/// Diagonal blocks H_x = A A+ + E_x and H_y = B B+ + E_y.
inline std::pair<TridiagonalHamiltonian, TridiagonalHamiltonian> build_block_hamiltonian(const AxisFactorization& ax,
                                                                                       const AxisFactorization& ay) {
    ax.validate();
    ay.validate();
    return {discretize(detail::block_potential(ax)), discretize(detail::block_potential(ay))};
}

/// Diagonal blocks of the scaled partner, each on its axis grid dilated by e^{-lambda_i}.
inline std::pair<TridiagonalHamiltonian, TridiagonalHamiltonian> build_partner_blocks(const AxisFactorization& ax,
                                                                                    const AxisFactorization& ay) {
    ax.validate();
    ay.validate();
    return {discretize(detail::partner_block_potential(ax)), discretize(detail::partner_block_potential(ay))};
}

/// Relative residual of [H, A+] psi = f A+ psi for one axis (lambda = 0), with f supplied.
inline double commutator_residual_1d(const AxisFactorization& a, const GridFunction& f,
                                     const std::vector<GridFunction>& tests) {
    const GridSpec& g = a.grid();
    if (!(f.grid() == g)) throw UsageError("commutator_residual_1d: f must share the axis grid");
    const auto v = detail::block_potential(a);
    const auto range = interior(g.n(), kInteriorTrim);
    double worst = 0.0;
    for (const auto& psi : tests) {
        if (!(psi.grid() == g)) throw UsageError("commutator_residual_1d: test function on a different grid");
        const auto raised = apply_raising(a.alpha.values(), psi.values(), g.h());
        const auto h_raised = detail::apply_hamiltonian(v.values(), raised, g.h());
        const auto h_psi = detail::apply_hamiltonian(v.values(), psi.values(), g.h());
        const auto raised_h = apply_raising(a.alpha.values(), h_psi, g.h());
        std::vector<double> r(psi.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = h_raised[i] - raised_h[i] - f[i] * raised[i];
        const double denom = l2_norm(raised, g.h(), range);
        if (denom == 0.0) throw DomainError("commutator_residual_1d: degenerate test function (A+ psi = 0)");
        worst = std::max(worst, l2_norm(r, g.h(), range) / denom);
    }
    return worst;
}

/// max over blocks of the residual of [H, A+] = F A+ with F = diag(f_x, f_y).
/// Without an override F = diag(alpha_x', alpha_y').
inline double block_commutator_residual(const AxisFactorization& ax, const AxisFactorization& ay,
                                        const std::vector<GridFunction>& tests_x, const std::vector<GridFunction>& tests_y,
                                        const std::optional<std::pair<GridFunction, GridFunction>>& f_override = std::nullopt) {
    if (ax.lambda != 0.0 || ay.lambda != 0.0) {
        throw UsageError("block_commutator_residual: the commutator form holds for lambda = 0 axis data");
    }
    const GridFunction& fx = f_override ? f_override->first : ax.alpha_deriv;
    const GridFunction& fy = f_override ? f_override->second : ay.alpha_deriv;
    return std::max(commutator_residual_1d(ax, fx, tests_x), commutator_residual_1d(ay, fy, tests_y));
}

enum class BlockSide { Original, Partner };

struct DegenerateLevel {
    double energy;
    std::size_t multiplicity;
};

/// Groups consecutive levels closer than `tol` (relative to max(1, |E|)).
inline std::vector<DegenerateLevel> group_degenerate(const std::vector<double>& levels, double tol = 1e-6) {
    std::vector<DegenerateLevel> out;
    for (double e : levels) {
        if (!out.empty() && std::abs(e - out.back().energy) <= tol * std::max(1.0, std::abs(e))) {
            ++out.back().multiplicity;
        } else {
            out.push_back({e, 1});
        }
    }
    return out;
}

struct SeparableSpectrum {
    std::vector<double> levels;  // k smallest sums, ascending
    std::vector<DegenerateLevel> groups;
};

/// k smallest E^(x)_m + E^(y)_n from the per-axis FD spectra of the chosen blocks.
/// Levels within `degeneracy_tol` are grouped; FD errors differ between
/// (m, n) pairs, so the tolerance must exceed the discretisation error.
inline SeparableSpectrum separable_spectrum(const AxisFactorization& ax, const AxisFactorization& ay, std::size_t k,
                                            BlockSide side = BlockSide::Partner, double degeneracy_tol = 1e-3) {
    const auto blocks = side == BlockSide::Original ? build_block_hamiltonian(ax, ay) : build_partner_blocks(ax, ay);
    const std::size_t nx = blocks.first.size();
    const std::size_t ny = blocks.second.size();
    if (k == 0 || k > nx * ny) throw UsageError("separable_spectrum: k exceeds the available cross products");
    const auto ex = lowest_k_eigenvalues(blocks.first, std::min(k, nx));
    const auto ey = lowest_k_eigenvalues(blocks.second, std::min(k, ny));
    std::vector<double> sums;
    sums.reserve(ex.size() * ey.size());
    for (double a : ex)
        for (double b : ey) sums.push_back(a + b);
    std::sort(sums.begin(), sums.end());
    sums.resize(k);
    return {sums, group_degenerate(sums, degeneracy_tol)};
}

}  // namespace scalint
