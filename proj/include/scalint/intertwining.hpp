#pragma once
// Partner potentials of the standard and scaled first-order intertwiners.
//
// The scaled intertwiner is A+_lambda = (1/sqrt 2)(-D + alpha) U with the
// dilation (U psi)(x) = e^{lambda/2} psi(e^lambda x). U is unitary on the line,
// and U H U+ = -e^{2 lambda}/2 D^2 + V(e^lambda x), which is the form that
// produces V(e^lambda x) when H_2 A+_lambda = e^{2 lambda} A+_lambda H is
// expanded in powers of D. With alpha(x) = e^lambda alpha~(e^lambda x) and
// alpha~ a Riccati solution at energy E, the partner
//     V_2(x) = e^{2 lambda} V(e^lambda x) - alpha'(x)
// has spectrum e^{2 lambda} {E, E_0, E_1, ...}.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "scalint/errors.hpp"
#include "scalint/grid.hpp"
#include "scalint/potential.hpp"
#include "scalint/riccati.hpp"

namespace scalint {

inline double epsilon_of_lambda(double lambda) { return std::expm1(-2.0 * lambda); }
inline double lambda_of_epsilon(double epsilon) {
    if (!(epsilon > -1.0)) throw DomainError("lambda_of_epsilon: need epsilon > -1");
    return -0.5 * std::log1p(epsilon);
}

/// V_1 = V - alpha'.
inline GridFunction standard_partner(const PotentialModel& v, const GridFunction& alpha, const GridFunction& alpha_deriv) {
    require_same_grid(alpha, alpha_deriv, "standard_partner");
    const GridSpec& g = alpha.grid();
    std::vector<double> out(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) out[i] = v(g.x(i)) - alpha_deriv[i];
    return GridFunction(g, std::move(out));
}

/// f(x) = e^{-2 lambda} alpha'(x) + e^{-2 lambda} V(x) - V(e^lambda x).
/// V enters at two different points, x and e^lambda x.
inline GridFunction darboux_potential_difference(const PotentialModel& v, const GridFunction& alpha_deriv, double lambda) {
    const GridSpec& g = alpha_deriv.grid();
    const double s = std::exp(lambda);
    const double inv_s2 = std::exp(-2.0 * lambda);
    std::vector<double> out(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double x = g.x(i);
        out[i] = inv_s2 * alpha_deriv[i] + inv_s2 * v(x) - v(s * x);
    }
    return GridFunction(g, std::move(out));
}

/// Local form of the difference for V homogeneous of degree d:
/// f = s^{-2} alpha' + (s^{-2} - s^d) V, s = e^lambda.
inline GridFunction homogeneous_dpd(const PotentialModel& v, const GridFunction& alpha_deriv, double lambda) {
    const auto degree = v.homogeneous_degree();
    if (!degree) throw UsageError("homogeneous_dpd: potential is not homogeneous");
    const GridSpec& g = alpha_deriv.grid();
    const double inv_s2 = std::exp(-2.0 * lambda);
    const double sd = std::exp(*degree * lambda);
    std::vector<double> out(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) out[i] = inv_s2 * alpha_deriv[i] + (inv_s2 - sd) * v(g.x(i));
    return GridFunction(g, std::move(out));
}

/// V_2(x) = e^{2 lambda} V(e^lambda x) - alpha'(x).
inline GridFunction scaled_partner(const PotentialModel& v, const GridFunction& alpha_deriv, double lambda) {
    const GridSpec& g = alpha_deriv.grid();
    const double s = std::exp(lambda);
    const double s2 = std::exp(2.0 * lambda);
    std::vector<double> out(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double x = g.x(i);
        out[i] = s2 * v(s * x) - alpha_deriv[i];
    }
    return GridFunction(g, std::move(out));
}

/// Oscillator family e^{4 lambda} x^2/2 - e^{2 lambda} alpha~'(e^lambda x).
inline GridFunction oscillator_partner(double energy, double nu, double lambda, const GridSpec& grid) {
    const auto sp = Superpotential::oscillator(energy, nu);
    const double s = std::exp(lambda);
    const double s2 = s * s;
    return GridFunction::sample(grid, [&](double x) { return s2 * s2 * 0.5 * x * x - s2 * sp(s * x).deriv; });
}

struct PartnerPotential {
    enum class Kind { Standard, Scaled };
    PotentialModel base;
    IntertwiningParams params;
    GridFunction values;
    Kind kind = Kind::Scaled;
};

inline PartnerPotential make_partner(const PotentialModel& v, const Superpotential& sp, const IntertwiningParams& params,
                                     const GridSpec& grid) {
    const auto sampled = sample_superpotential(sp, params.lambda, grid);
    const auto kind = params.lambda == 0.0 ? PartnerPotential::Kind::Standard : PartnerPotential::Kind::Scaled;
    auto values = kind == PartnerPotential::Kind::Standard ? standard_partner(v, sampled.alpha, sampled.deriv)
                                                           : scaled_partner(v, sampled.deriv, params.lambda);
    return {v, params, std::move(values), kind};
}

/// psi_E(x) proportional to exp(-int_0^x alpha), unit discrete L2 norm.
inline GridFunction ground_state_wavefunction(const GridFunction& alpha) {
    const GridSpec& g = alpha.grid();
    if (!g.contains(0.0)) throw UsageError("ground_state_wavefunction: grid must contain x = 0");
    const std::size_t n = g.n();
    std::vector<double> log_psi(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) log_psi[i] = log_psi[i - 1] - 0.5 * g.h() * (alpha[i - 1] + alpha[i]);
    double top = log_psi[0];
    for (double l : log_psi) {
        if (!std::isfinite(l)) throw OverflowError("ground_state_wavefunction: non-finite integral of alpha");
        top = std::max(top, l);
    }
    std::vector<double> psi(n);
    for (std::size_t i = 0; i < n; ++i) {
        psi[i] = std::exp(log_psi[i] - top);
        if (!(psi[i] > 0.0)) {
            throw OverflowError("ground_state_wavefunction: exp(-int alpha) underflows at x = " + std::to_string(g.x(i)) +
                                "; narrow the grid");
        }
    }
    const double norm = l2_norm(psi, g.h());
    for (auto& p : psi) p /= norm;
    return GridFunction(g, std::move(psi));
}

/// (U psi)(x) = e^{lambda/2} psi(e^lambda x) sampled on `target`.
inline GridFunction dilate(const GridFunction& psi, double lambda, const GridSpec& target) {
    const double s = std::exp(lambda);
    const double amp = std::exp(0.5 * lambda);
    return GridFunction::sample(target, [&](double x) { return amp * interpolate_cubic(psi, s * x); });
}

/// (A+ phi)(x) = (-phi' + alpha phi)/sqrt 2 on a shared grid.
inline std::vector<double> apply_raising(std::span<const double> alpha, std::span<const double> phi, double h) {
    const auto d = derivative(phi, h);
    std::vector<double> out(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) out[i] = (-d[i] + alpha[i] * phi[i]) / std::numbers::sqrt2;
    return out;
}

/// (phi' + alpha phi)/sqrt 2, the formal adjoint of apply_raising.
inline std::vector<double> apply_lowering(std::span<const double> alpha, std::span<const double> phi, double h) {
    const auto d = derivative(phi, h);
    std::vector<double> out(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) out[i] = (d[i] + alpha[i] * phi[i]) / std::numbers::sqrt2;
    return out;
}

/// A+_lambda psi = (1/sqrt 2)(-D + alpha) U psi on alpha's grid. psi is interpolated
/// (cubic) at e^lambda x unless those points fall on its nodes.
inline GridFunction apply_scaled_intertwiner(const GridFunction& alpha, double lambda, const GridFunction& psi) {
    const auto shifted = dilate(psi, lambda, alpha.grid());
    return GridFunction(alpha.grid(), apply_raising(alpha.values(), shifted.values(), alpha.grid().h()));
}

}  // namespace scalint
