#pragma once
// Uniform 1D grids, sampled functions on them, and the finite-difference and
// interpolation stencils shared by the rest of the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "scalint/errors.hpp"

namespace scalint {

class GridSpec {
public:
    GridSpec() = default;
    GridSpec(double x_min, double x_max, std::size_t n) : x_min_(x_min), x_max_(x_max), n_(n) {
        if (n < 3) throw UsageError("GridSpec: need at least 3 points, got " + std::to_string(n));
        if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
            throw UsageError("GridSpec: require finite x_min < x_max");
        }
        h_ = (x_max - x_min) / static_cast<double>(n - 1);
    }

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t n() const { return n_; }
    double h() const { return h_; }
    double x(std::size_t i) const { return i + 1 == n_ ? x_max_ : x_min_ + static_cast<double>(i) * h_; }
    bool contains(double x) const { return x >= x_min_ && x <= x_max_; }

    std::vector<double> points() const {
        std::vector<double> xs(n_);
        for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
        return xs;
    }

    /// The image of this grid under x -> e^{-lambda} x. Node i of the result maps
    /// back onto node i of *this under the dilation x -> e^{lambda} x.
    GridSpec dilated(double lambda) const {
        const double s = std::exp(-lambda);
        return GridSpec(x_min_ * s, x_max_ * s, n_);
    }

    friend bool operator==(const GridSpec& l, const GridSpec& r) {
        return l.x_min_ == r.x_min_ && l.x_max_ == r.x_max_ && l.n_ == r.n_;
    }

private:
    double x_min_ = 0.0;
    double x_max_ = 1.0;
    std::size_t n_ = 3;
    double h_ = 0.5;
};

/// Real samples on a GridSpec. Immutable after construction.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(GridSpec grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.n()) {
            throw UsageError("GridFunction: " + std::to_string(values_.size()) + " values for a grid of " +
                             std::to_string(grid_.n()) + " points");
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i])) {
                throw DomainError("GridFunction: non-finite value at x = " + std::to_string(grid_.x(i)));
            }
        }
    }

    static GridFunction sample(const GridSpec& grid, const std::function<double(double)>& f) {
        std::vector<double> v(grid.n());
        for (std::size_t i = 0; i < grid.n(); ++i) v[i] = f(grid.x(i));
        return GridFunction(grid, std::move(v));
    }

    const GridSpec& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

private:
    GridSpec grid_;
    std::vector<double> values_;
};

inline void require_same_grid(const GridFunction& a, const GridFunction& b, const char* where) {
    if (!(a.grid() == b.grid())) throw UsageError(std::string(where) + ": grid functions live on different grids");
}

/// Range of node indices [begin, end) that excludes a fraction of the grid at each end.
struct IndexRange {
    std::size_t begin;
    std::size_t end;
};

inline IndexRange interior(std::size_t n, double trim_fraction) {
    auto cut = static_cast<std::size_t>(std::ceil(trim_fraction * static_cast<double>(n)));
    cut = std::max<std::size_t>(cut, 3);
    if (2 * cut >= n) throw UsageError("interior: grid too small for the requested trim");
    return {cut, n - cut};
}

/// First derivative: 4th-order central differences in the interior, 2nd-order
/// one-sided in the two outermost layers at each end.
inline std::vector<double> derivative(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 5) throw UsageError("derivative: need at least 5 points");
    std::vector<double> d(n);
    for (std::size_t i = 2; i + 2 < n; ++i) {
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    }
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d[1] = (-3.0 * f[1] + 4.0 * f[2] - f[3]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    d[n - 2] = (3.0 * f[n - 2] - 4.0 * f[n - 3] + f[n - 4]) / (2.0 * h);
    return d;
}

inline GridFunction derivative(const GridFunction& f) {
    return GridFunction(f.grid(), derivative(f.values(), f.grid().h()));
}

/// Local cubic (4-point Lagrange) interpolation. Points that coincide with a
/// node to within 1e-9 of a cell return the node value exactly.
inline double interpolate_cubic(const GridFunction& f, double x) {
    const GridSpec& g = f.grid();
    if (!g.contains(x)) {
        // Tolerate roundoff from dilated grids landing a hair outside.
        const double slack = 1e-9 * g.h();
        if (x < g.x_min() - slack || x > g.x_max() + slack) {
            throw OutOfDomainError("interpolate: x = " + std::to_string(x) + " outside [" + std::to_string(g.x_min()) +
                                   ", " + std::to_string(g.x_max()) + "]");
        }
        x = std::clamp(x, g.x_min(), g.x_max());
    }
    const double t = (x - g.x_min()) / g.h();
    const double nearest = std::round(t);
    if (std::abs(t - nearest) < 1e-9) return f[static_cast<std::size_t>(nearest)];
    const std::size_t n = g.n();
    auto i1 = static_cast<std::size_t>(std::floor(t));
    i1 = std::clamp<std::size_t>(i1, 1, n - 3);
    const std::size_t i0 = i1 - 1;
    const double s = t - static_cast<double>(i0);  // position relative to node i0
    const double w0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
    const double w1 = s * (s - 2.0) * (s - 3.0) / 2.0;
    const double w2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
    const double w3 = s * (s - 1.0) * (s - 2.0) / 6.0;
    return w0 * f[i0] + w1 * f[i0 + 1] + w2 * f[i0 + 2] + w3 * f[i0 + 3];
}

inline double linear_interpolate(const GridFunction& f, double x) {
    const GridSpec& g = f.grid();
    if (!g.contains(x)) throw OutOfDomainError("interpolate: x = " + std::to_string(x) + " outside tabulated range");
    const double t = (x - g.x_min()) / g.h();
    auto i = std::min<std::size_t>(static_cast<std::size_t>(t), g.n() - 2);
    const double s = t - static_cast<double>(i);
    return (1.0 - s) * f[i] + s * f[i + 1];
}

/// Discrete L2 norm sqrt(h * sum v_i^2) over [range.begin, range.end).
inline double l2_norm(std::span<const double> v, double h, IndexRange range) {
    double s = 0.0;
    for (std::size_t i = range.begin; i < range.end; ++i) s += v[i] * v[i];
    return std::sqrt(h * s);
}

inline double l2_norm(std::span<const double> v, double h) { return l2_norm(v, h, {0, v.size()}); }

inline double inner_product(std::span<const double> a, std::span<const double> b, double h) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return h * s;
}

/// |<a,b>| / (|a| |b|), sign-insensitive overlap of two sampled states.
inline double overlap(std::span<const double> a, std::span<const double> b, IndexRange range) {
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = range.begin; i < range.end; ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    if (aa == 0.0 || bb == 0.0) throw DomainError("overlap: zero-norm state");
    return std::abs(ab) / std::sqrt(aa * bb);
}

inline double overlap(std::span<const double> a, std::span<const double> b) { return overlap(a, b, {0, a.size()}); }

}  // namespace scalint
