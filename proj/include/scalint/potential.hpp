#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <variant>

#include "scalint/errors.hpp"
#include "scalint/grid.hpp"

namespace scalint {

/// V(x) = x^2 / 2.
struct Harmonic {};

/// V(x) = coefficient * |x|^degree, so V(s x) = s^degree V(x) for s > 0.
/// degree = 0 gives the constant potential.
struct HomogeneousPower {
    double degree = 2.0;
    double coefficient = 0.5;
};

/// Samples with linear (order 1) or cubic (order 3) interpolation. No extrapolation.
struct Tabulated {
    GridFunction samples;
    int order = 3;
};

class PotentialModel {
public:
    using Kind = std::variant<Harmonic, HomogeneousPower, Tabulated>;

    PotentialModel() : kind_(Harmonic{}) {}
    PotentialModel(Kind kind) : kind_(std::move(kind)) {
        if (const auto* t = std::get_if<Tabulated>(&kind_); t && t->order != 1 && t->order != 3) {
            throw UsageError("Tabulated potential: interpolation order must be 1 or 3");
        }
    }

    static PotentialModel harmonic() { return PotentialModel(Harmonic{}); }
    static PotentialModel power(double degree, double coefficient) {
        return PotentialModel(HomogeneousPower{degree, coefficient});
    }
    static PotentialModel constant(double c) { return power(0.0, c); }

    double operator()(double x) const {
        return std::visit(
            [x](const auto& k) -> double {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, Harmonic>) {
                    return 0.5 * x * x;
                } else if constexpr (std::is_same_v<T, HomogeneousPower>) {
                    if (k.degree == 0.0) return k.coefficient;
                    return k.coefficient * std::pow(std::abs(x), k.degree);
                } else {
                    if (!k.samples.grid().contains(x)) {
                        throw OutOfDomainError("Tabulated potential evaluated at x = " + std::to_string(x) +
                                               " outside its grid");
                    }
                    return k.order == 1 ? linear_interpolate(k.samples, x) : interpolate_cubic(k.samples, x);
                }
            },
            kind_);
    }

    /// Degree d when V is homogeneous (Harmonic counts, with d = 2).
    std::optional<double> homogeneous_degree() const {
        if (std::holds_alternative<Harmonic>(kind_)) return 2.0;
        if (const auto* p = std::get_if<HomogeneousPower>(&kind_)) return p->degree;
        return std::nullopt;
    }

    bool is_harmonic() const { return std::holds_alternative<Harmonic>(kind_); }
    const Kind& kind() const { return kind_; }

    GridFunction sample(const GridSpec& grid) const {
        return GridFunction::sample(grid, [this](double x) { return (*this)(x); });
    }

private:
    Kind kind_;
};

}  // namespace scalint
