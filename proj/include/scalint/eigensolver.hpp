#pragma once
// Finite-difference Schroedinger operators -1/2 d^2/dx^2 + V on a uniform grid
// with Dirichlet ends, and a symmetric tridiagonal eigensolver: Sturm-sequence
// bisection for eigenvalues, inverse iteration for eigenvectors.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "scalint/errors.hpp"
#include "scalint/grid.hpp"

namespace scalint {

struct TridiagonalHamiltonian {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;  // size n - 1; the matrix is symmetric
    GridSpec grid;

    std::size_t size() const { return diagonal.size(); }
};

inline TridiagonalHamiltonian discretize(const GridFunction& potential) {
    const GridSpec& g = potential.grid();
    const double h2 = g.h() * g.h();
    TridiagonalHamiltonian t;
    t.grid = g;
    t.diagonal.resize(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) t.diagonal[i] = 1.0 / h2 + potential[i];
    t.off_diagonal.assign(g.n() - 1, -0.5 / h2);
    return t;
}

/// Number of eigenvalues strictly below mu (LDL^T inertia).
inline std::size_t sturm_count(const TridiagonalHamiltonian& t, double mu) {
    constexpr double pivmin = std::numeric_limits<double>::min() * 1e10;
    std::size_t count = 0;
    double q = t.diagonal[0] - mu;
    for (std::size_t i = 0;; ++i) {
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
        if (i + 1 == t.size()) break;
        const double e = t.off_diagonal[i];
        q = t.diagonal[i + 1] - mu - e * e / q;
    }
    return count;
}

inline constexpr double kEigenBracketWidth = 1e-10;

/// The k smallest eigenvalues, ascending, each bisected to width <= 1e-10.
inline std::vector<double> lowest_k_eigenvalues(const TridiagonalHamiltonian& t, std::size_t k) {
    const std::size_t n = t.size();
    if (k == 0 || k > n) throw UsageError("lowest_k_eigenvalues: need 1 <= k <= n, got k = " + std::to_string(k));
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(t.off_diagonal[i - 1]) : 0.0) + (i + 1 < n ? std::abs(t.off_diagonal[i]) : 0.0);
        lo = std::min(lo, t.diagonal[i] - r);
        hi = std::max(hi, t.diagonal[i] + r);
    }
    lo -= 1e-12 * std::max(1.0, std::abs(lo));
    hi += 1e-12 * std::max(1.0, std::abs(hi));

    std::vector<double> out(k);
    double floor = lo;
    for (std::size_t j = 0; j < k; ++j) {
        double a = floor;
        double b = hi;
        while (b - a > std::max(kEigenBracketWidth, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(a + b))) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(t, mid) >= j + 1) {
                b = mid;
            } else {
                a = mid;
            }
        }
        out[j] = 0.5 * (a + b);
        floor = a;
    }
    return out;
}

/// Eigenvector for a converged eigenvalue by inverse iteration, normalised to
/// unit discrete L2 norm with its largest-magnitude component positive.
inline std::vector<double> eigenvector(const TridiagonalHamiltonian& t, double eigenvalue, int iterations = 3) {
    const std::size_t n = t.size();
    std::mt19937_64 rng(0x5ca1ab1eULL);
    std::uniform_real_distribution<double> dist(0.5, 1.5);
    std::vector<double> x(n);
    for (auto& v : x) v = dist(rng);

    const double scale = std::max(1.0, std::abs(t.diagonal[0]) + 2.0 * std::abs(t.off_diagonal[0]));
    const double tiny = std::numeric_limits<double>::epsilon() * scale;
    std::vector<double> c(n), d(n);
    for (int it = 0; it < iterations; ++it) {
        // Thomas algorithm on (T - mu I) y = x.
        double piv = t.diagonal[0] - eigenvalue;
        if (std::abs(piv) < tiny) piv = tiny;
        c[0] = (n > 1 ? t.off_diagonal[0] : 0.0) / piv;
        d[0] = x[0] / piv;
        for (std::size_t i = 1; i < n; ++i) {
            const double e = t.off_diagonal[i - 1];
            piv = t.diagonal[i] - eigenvalue - e * c[i - 1];
            if (std::abs(piv) < tiny) piv = tiny;
            c[i] = (i + 1 < n ? t.off_diagonal[i] : 0.0) / piv;
            d[i] = (x[i] - e * d[i - 1]) / piv;
        }
        x[n - 1] = d[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        if (!(m > 0.0) || !std::isfinite(m)) throw OverflowError("eigenvector: inverse iteration diverged");
        for (auto& v : x) v /= m;
    }
    const double norm = l2_norm(x, t.grid.h());
    const auto peak = std::max_element(x.begin(), x.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    const double sign = *peak < 0.0 ? -1.0 : 1.0;
    for (auto& v : x) v *= sign / norm;
    return x;
}

/// max(|v_1|, |v_{n-2}|) / max|v|: how much a state still feels the Dirichlet walls.
inline double boundary_amplitude(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    if (m == 0.0) return 0.0;
    return std::max(std::abs(v[1]), std::abs(v[v.size() - 2])) / m;
}

}  // namespace scalint
