#pragma once
// Gamma function and Kummer's confluent hypergeometric function M(a, b, z)
// for real arguments.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "scalint/errors.hpp"

namespace scalint {

struct KummerArgs {
    double a = 0.0;
    double b = 1.0;
    double z = 0.0;
};

/// Largest |z| accepted by kummer_m. The scaled series needs roughly |z| terms,
/// which keeps it inside the iteration cap.
inline constexpr double kKummerMaxArgument = 5000.0;
inline constexpr int kKummerMaxTerms = 10000;
inline constexpr double kKummerTermTolerance = 1e-16;
/// Ratio max|term| / |sum| above which the direct series for z < 0 is abandoned
/// in favour of the Kummer transform.
inline constexpr double kKummerCancellationLimit = 1e8;

/// ln Gamma(z) for z > 0 (Lanczos, g = 7, nine coefficients).
inline double log_gamma(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw DomainError("log_gamma: argument must be positive and finite, got " + std::to_string(z));
    }
    if (z == 1.0 || z == 2.0) return 0.0;
    static constexpr double g = 7.0;
    static constexpr std::array<double, 9> c = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z < 0.5) {
        // Reflection; 1 - z > 1/2 stays on the approximated branch.
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * z)) - log_gamma(1.0 - z);
    }
    const double x = z - 1.0;
    double sum = c[0];
    for (std::size_t i = 1; i < c.size(); ++i) sum += c[i] / (x + static_cast<double>(i));
    const double t = x + g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t + std::log(sum);
}

namespace detail {

inline bool is_nonpositive_integer(double v) {
    return v <= 0.0 && std::abs(v - std::round(v)) < 1e-12;
}

/// Series value held as mantissa * 2^exponent so that sums far beyond
/// DBL_MAX (z up to kKummerMaxArgument) stay representable.
struct ScaledSum {
    double mantissa = 0.0;
    long exponent = 0;
    double max_term_ratio = 1.0;  // max|term| / |sum|, a cancellation measure
    int terms = 0;
    bool converged = false;

    double log_abs() const { return std::log(std::abs(mantissa)) + static_cast<double>(exponent) * std::numbers::ln2; }
    double value() const { return std::ldexp(mantissa, static_cast<int>(exponent)); }
};

/// Direct Taylor series sum_n (a)_n z^n / ((b)_n n!) with term-ratio recursion.
inline ScaledSum kummer_series(double a, double b, double z) {
    ScaledSum s;
    double sum = 1.0;
    double term = 1.0;
    long exponent = 0;
    double log_max_term = 0.0;  // log |term| maximum, unscaled
    for (int n = 0; n < kKummerMaxTerms; ++n) {
        const double ratio = (a + n) * z / ((b + n) * (n + 1.0));
        term *= ratio;
        sum += term;
        s.terms = n + 1;
        if (term != 0.0) {
            log_max_term = std::max(log_max_term, std::log(std::abs(term)) + exponent * std::numbers::ln2);
        }
        if (std::abs(sum) > 0x1p+900 || std::abs(term) > 0x1p+900) {
            sum = std::ldexp(sum, -900);
            term = std::ldexp(term, -900);
            exponent += 900;
        }
        const double next_ratio = std::abs((a + n + 1) * z / ((b + n + 1) * (n + 2.0)));
        if (term == 0.0 ||
            (next_ratio < 1.0 && std::abs(term) / (1.0 - next_ratio) <= kKummerTermTolerance * std::abs(sum))) {
            s.converged = true;
            break;
        }
    }
    s.mantissa = sum;
    s.exponent = exponent;
    const double log_sum = sum != 0.0 ? std::log(std::abs(sum)) + exponent * std::numbers::ln2 : -HUGE_VAL;
    s.max_term_ratio = std::exp(std::min(log_max_term - log_sum, 700.0));
    return s;
}

inline void check_kummer_args(const KummerArgs& args) {
    if (!std::isfinite(args.a) || !std::isfinite(args.b) || !std::isfinite(args.z)) {
        throw DomainError("kummer_m: non-finite argument");
    }
    if (is_nonpositive_integer(args.b)) {
        throw DomainError("kummer_m: b must not be zero or a negative integer (pole), got " + std::to_string(args.b));
    }
    if (std::abs(args.z) > kKummerMaxArgument) {
        throw DomainError("kummer_m: |z| exceeds the supported bound " + std::to_string(kKummerMaxArgument));
    }
}

}  // namespace detail

/// Kummer's function M(a, b, z) = sum (a)_n z^n / ((b)_n n!).
///
/// For z < 0 the direct series alternates. The value is taken from whichever of
/// the direct series and M(a,b,z) = e^z M(b-a,b,-z) cancels less; beyond
/// |z| = 50 or a cancellation ratio of kKummerCancellationLimit the transformed
/// series is always used.
inline double kummer_m(const KummerArgs& args) {
    detail::check_kummer_args(args);
    const auto [a, b, z] = args;
    if (z == 0.0 || a == 0.0) return 1.0;

    auto finish = [&](const detail::ScaledSum& s, double log_prefactor) {
        if (!s.converged) {
            throw AccuracyError("kummer_m: series did not converge within " + std::to_string(kKummerMaxTerms) + " terms",
                                s.mantissa);
        }
        if (s.mantissa == 0.0) return 0.0;
        const double sign = s.mantissa < 0.0 ? -1.0 : 1.0;
        return sign * std::exp(log_prefactor + s.log_abs());
    };

    if (z > 0.0 || detail::is_nonpositive_integer(a)) {
        const auto s = detail::kummer_series(a, b, z);
        return finish(s, 0.0);
    }
    const auto transformed = detail::kummer_series(b - a, b, -z);
    if (std::abs(z) <= 50.0) {
        const auto direct = detail::kummer_series(a, b, z);
        const bool prefer_direct = !transformed.converged || direct.max_term_ratio <= transformed.max_term_ratio;
        if (direct.converged && direct.max_term_ratio <= kKummerCancellationLimit && prefer_direct) {
            return finish(direct, 0.0);
        }
    }
    return finish(transformed, z);
}

/// dM/dz = (a/b) M(a+1, b+1, z).
inline double kummer_m_deriv(const KummerArgs& args) {
    detail::check_kummer_args(args);
    if (args.a == 0.0) return 0.0;
    return args.a / args.b * kummer_m({args.a + 1.0, args.b + 1.0, args.z});
}

}  // namespace scalint
