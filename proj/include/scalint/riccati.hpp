#pragma once
// Superpotentials: solutions of the Riccati equation
//     alpha' + alpha^2 = 2 (V - E)
// in closed form for the harmonic oscillator and by integration of the
// linear Schroedinger equation for general potentials, plus the change of
// variable y = e^lambda x used by the scaled intertwiner.

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "scalint/eigensolver.hpp"
#include "scalint/errors.hpp"
#include "scalint/grid.hpp"
#include "scalint/potential.hpp"
#include "scalint/special_functions.hpp"

namespace scalint {

/// Scaling parameter lambda, factorization energy E and solution-family parameter nu.
struct IntertwiningParams {
    double lambda = 0.0;
    double energy = -0.5;
    double nu = 0.0;

    /// epsilon in H_1 = (1 + epsilon) H - f, tied to lambda by e^{-2 lambda} = 1 + epsilon.
    double epsilon() const { return std::expm1(-2.0 * lambda); }
    /// e^{2 lambda}: the factor multiplying every level of the scaled partner.
    double spectral_scale() const { return std::exp(2.0 * lambda); }
};

struct SuperpotentialValue {
    double alpha = 0.0;
    double deriv = 0.0;
};

inline constexpr double kBracketFloor = 1e-12;

namespace detail {

inline SuperpotentialValue oscillator_superpotential_raw(double energy, double nu, double y) {
    const double a1 = (1.0 + 2.0 * energy) / 4.0;
    const double a2 = (3.0 + 2.0 * energy) / 4.0;
    const double c = 2.0 * nu * std::exp(log_gamma((3.0 - 2.0 * energy) / 4.0) - log_gamma((1.0 - 2.0 * energy) / 4.0));
    const double z = -y * y;

    const double m1 = kummer_m({a1, 0.5, z});
    const double m1_z = kummer_m_deriv({a1, 0.5, z});
    const double m1_zz = a1 / 0.5 * kummer_m_deriv({a1 + 1.0, 1.5, z});

    double m2 = 0.0, m2_z = 0.0, m2_zz = 0.0;
    if (c != 0.0) {
        m2 = kummer_m({a2, 1.5, z});
        m2_z = kummer_m_deriv({a2, 1.5, z});
        m2_zz = a2 / 1.5 * kummer_m_deriv({a2 + 1.0, 2.5, z});
    }

    // B(y) = M1(-y^2) + c y M2(-y^2) and its y-derivatives via the chain rule.
    const double b0 = m1 + c * y * m2;
    const double b1 = -2.0 * y * m1_z + c * (m2 - 2.0 * y * y * m2_z);
    const double b2 = -2.0 * m1_z + 4.0 * y * y * m1_zz + c * (-6.0 * y * m2_z + 4.0 * y * y * y * m2_zz);
    if (!(b0 > kBracketFloor)) {
        throw SingularityError("oscillator_superpotential: bracket B(y) = " + std::to_string(b0) + " <= " +
                                   std::to_string(kBracketFloor) + " at y = " + std::to_string(y) +
                                   " (the partner potential would be singular; requires |nu| < 1, E < 1/2)",
                               y);
    }
    const double r = b1 / b0;
    return {y + r, 1.0 + b2 / b0 - r * r};
}

inline void check_oscillator_params(double energy, double nu) {
    if (!(energy < 0.5)) {
        throw DomainError("oscillator superpotential requires E < 1/2, got E = " + std::to_string(energy));
    }
    if (!(std::abs(nu) < 1.0)) {
        throw DomainError("oscillator superpotential requires |nu| < 1, got nu = " + std::to_string(nu));
    }
}

}  // namespace detail

/// Closed-form oscillator superpotential
///     alpha~(y) = y + B'(y)/B(y),
///     B(y) = M((1+2E)/4, 1/2; -y^2) + 2 nu G y M((3+2E)/4, 3/2; -y^2),
///     G = Gamma((3-2E)/4) / Gamma((1-2E)/4),
/// with the derivative taken analytically through dM/dz = (a/b) M(a+1, b+1, z).
inline SuperpotentialValue oscillator_superpotential(double energy, double nu, double y) {
    detail::check_oscillator_params(energy, nu);
    return detail::oscillator_superpotential_raw(energy, nu, y);
}

/// A superpotential alpha~ in the base coordinate y together with the
/// factorization energy it solves the Riccati equation for.
struct Superpotential {
    std::function<SuperpotentialValue(double)> eval;
    double energy = 0.0;

    SuperpotentialValue operator()(double y) const { return eval(y); }

    static Superpotential oscillator(double energy, double nu) {
        detail::check_oscillator_params(energy, nu);
        return {[energy, nu](double y) { return detail::oscillator_superpotential_raw(energy, nu, y); }, energy};
    }

    /// Skips the parameter bounds; singular brackets still raise SingularityError.
    static Superpotential oscillator_unchecked(double energy, double nu) {
        return {[energy, nu](double y) { return detail::oscillator_superpotential_raw(energy, nu, y); }, energy};
    }

    /// From sampled alpha~; the derivative follows from the Riccati equation itself,
    /// which the sampled solution satisfies by construction of the ODE solve.
    static Superpotential from_samples(GridFunction alpha, PotentialModel potential, double energy) {
        return {[alpha = std::move(alpha), potential = std::move(potential), energy](double y) {
                    const double a = interpolate_cubic(alpha, y);
                    return SuperpotentialValue{a, 2.0 * (potential(y) - energy) - a * a};
                },
                energy};
    }
};

/// alpha(x) = e^lambda alpha~(e^lambda x), the inverse of
/// alpha~(y) = e^{-lambda} alpha(e^{-lambda} y).
inline std::function<double(double)> unscale_superpotential(std::function<double(double)> alpha_tilde, double lambda) {
    const double s = std::exp(lambda);
    return [alpha_tilde = std::move(alpha_tilde), s](double x) { return s * alpha_tilde(s * x); };
}

/// Value and derivative of alpha at x: (e^l a~(e^l x), e^{2l} a~'(e^l x)).
inline SuperpotentialValue unscale_superpotential(const Superpotential& sp, double lambda, double x) {
    const double s = std::exp(lambda);
    const auto v = sp(s * x);
    return {s * v.alpha, s * s * v.deriv};
}

struct SampledSuperpotential {
    GridFunction alpha;
    GridFunction deriv;
};

/// alpha and alpha' of the scaled intertwiner sampled on `grid` (x coordinate).
inline SampledSuperpotential sample_superpotential(const Superpotential& sp, double lambda, const GridSpec& grid) {
    std::vector<double> a(grid.n()), d(grid.n());
    for (std::size_t i = 0; i < grid.n(); ++i) {
        const auto v = unscale_superpotential(sp, lambda, grid.x(i));
        a[i] = v.alpha;
        d[i] = v.deriv;
    }
    return {GridFunction(grid, std::move(a)), GridFunction(grid, std::move(d))};
}

/// max_y |alpha~' + alpha~^2 - 2 (V(y) - E)| over the grid.
inline double riccati_residual(const GridFunction& alpha_tilde, const GridFunction& alpha_tilde_deriv,
                               const PotentialModel& potential, double energy) {
    require_same_grid(alpha_tilde, alpha_tilde_deriv, "riccati_residual");
    double worst = 0.0;
    for (std::size_t i = 0; i < alpha_tilde.size(); ++i) {
        const double y = alpha_tilde.grid().x(i);
        const double r = alpha_tilde_deriv[i] + alpha_tilde[i] * alpha_tilde[i] - 2.0 * (potential(y) - energy);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

/// The mix value whose solution coincides with the closed-form bracket at nu:
/// psi_even + nu psi_odd ~ cos(theta) psi_even + sin(theta) psi_odd.
inline double mix_from_nu(double nu) { return 2.0 / std::numbers::pi * std::atan(nu); }

namespace detail {

/// One solution of psi'' = 2 (V - E) psi integrated across the grid with RK4,
/// stored as psi_i = value_i * e^{log_scale_i}.
struct ScaledSolution {
    std::vector<double> value;
    std::vector<double> slope;
    std::vector<double> log_scale;
};

/// Starts at one end with the WKB slope of the solution that decays outward and
/// integrates inward, the direction in which that solution grows.
inline ScaledSolution integrate_inward(const PotentialModel& v, double energy, const GridSpec& grid, bool from_right) {
    const std::size_t n = grid.n();
    ScaledSolution s{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n, 0.0)};
    const double step = from_right ? -grid.h() : grid.h();
    const std::size_t start = from_right ? n - 1 : 0;
    const double q0 = 2.0 * (v(grid.x(start)) - energy);
    double psi = 1.0;
    double dpsi = (from_right ? -1.0 : 1.0) * std::sqrt(std::max(q0, 0.0));
    double scale = 0.0;
    s.value[start] = psi;
    s.slope[start] = dpsi;
    auto q = [&](double x) { return 2.0 * (v(x) - energy); };
    for (std::size_t k = 1; k < n; ++k) {
        const std::size_t prev = from_right ? n - k : k - 1;
        const std::size_t cur = from_right ? n - 1 - k : k;
        const double x = grid.x(prev);
        const double qa = q(x);
        const double qm = q(x + 0.5 * step);
        const double qb = q(grid.x(cur));
        const double k1p = dpsi, k1d = qa * psi;
        const double k2p = dpsi + 0.5 * step * k1d, k2d = qm * (psi + 0.5 * step * k1p);
        const double k3p = dpsi + 0.5 * step * k2d, k3d = qm * (psi + 0.5 * step * k2p);
        const double k4p = dpsi + step * k3d, k4d = qb * (psi + step * k3p);
        psi += step / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        dpsi += step / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        const double mag = std::max(std::abs(psi), std::abs(dpsi));
        if (mag > 1e100) {
            psi /= mag;
            dpsi /= mag;
            scale += std::log(mag);
        }
        if (!std::isfinite(psi) || !std::isfinite(dpsi)) throw OverflowError("numeric_superpotential: integration overflow");
        s.value[cur] = psi;
        s.slope[cur] = dpsi;
        s.log_scale[cur] = scale;
    }
    return s;
}

inline std::size_t reference_index(const GridSpec& grid) {
    if (grid.contains(0.0)) return static_cast<std::size_t>(std::lround(-grid.x_min() / grid.h()));
    return grid.n() / 2;
}

}  // namespace detail

/// Lowest finite-difference eigenvalue of V on the grid (Dirichlet walls).
inline double ground_energy_estimate(const PotentialModel& potential, const GridSpec& grid) {
    return lowest_k_eigenvalues(discretize(potential.sample(grid)), 1).front();
}

/// Superpotential alpha = psi'/psi of the nodeless solution
///     psi = cos(theta) psi_even + sin(theta) psi_odd,  theta = mix * pi / 2,
/// where psi_even = (u+ + u-)/2 and psi_odd = (u- - u+)/2 are built from the
/// solutions u+ (decaying to the right) and u- (decaying to the left), both
/// normalised to 1 at x = 0. The solution is nodeless for |mix| <= 1/2.
inline GridFunction numeric_superpotential(const PotentialModel& potential, double energy, double mix,
                                           const GridSpec& grid) {
    const double e0 = ground_energy_estimate(potential, grid);
    if (energy > e0) {
        throw NodefulSolutionError("numeric_superpotential: E = " + std::to_string(energy) +
                                       " exceeds the ground energy E0 ~ " + std::to_string(e0) +
                                       "; for E > E0 the solution psi always has zeros",
                                   std::nan(""));
    }
    const auto right = detail::integrate_inward(potential, energy, grid, true);   // u+
    const auto left = detail::integrate_inward(potential, energy, grid, false);   // u-
    const std::size_t ref = detail::reference_index(grid);
    if (right.value[ref] == 0.0 || left.value[ref] == 0.0) {
        throw NodefulSolutionError("numeric_superpotential: solution vanishes at the reference point", grid.x(ref));
    }

    const double theta = mix * std::numbers::pi / 2.0;
    const double c_plus = 0.5 * (std::cos(theta) - std::sin(theta)) / right.value[ref];
    const double c_minus = 0.5 * (std::cos(theta) + std::sin(theta)) / left.value[ref];

    const std::size_t n = grid.n();
    std::vector<double> alpha(n), psi_sign(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lp = right.log_scale[i] - right.log_scale[ref];
        const double lm = left.log_scale[i] - left.log_scale[ref];
        const double top = std::max(lp, lm);
        const double wp = c_plus * std::exp(lp - top);
        const double wm = c_minus * std::exp(lm - top);
        const double value = wp * right.value[i] + wm * left.value[i];
        const double slope = wp * right.slope[i] + wm * left.slope[i];
        psi_sign[i] = value;
        if (i > 0 && (value == 0.0 || (value > 0.0) != (psi_sign[i - 1] > 0.0))) {
            const double where = 0.5 * (grid.x(i - 1) + grid.x(i));
            throw NodefulSolutionError("numeric_superpotential: psi has a zero near x = " + std::to_string(where) +
                                           " (|mix| must not exceed 1/2 for a nodeless combination)",
                                       where);
        }
        alpha[i] = slope / value;
    }
    return GridFunction(grid, std::move(alpha));
}

}  // namespace scalint
