#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "scalint/eigensolver.hpp"
#include "scalint/grid.hpp"
#include "scalint/potential.hpp"

using namespace scalint;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

TridiagonalHamiltonian raw_matrix(std::vector<double> diag, std::vector<double> off) {
    const std::size_t n = diag.size();
    return {std::move(diag), std::move(off), GridSpec(0.0, 1.0, std::max<std::size_t>(n, 3))};
}

std::vector<double> oscillator_levels(std::size_t n, std::size_t k) {
    const GridSpec g(-12.0, 12.0, n);
    return lowest_k_eigenvalues(discretize(PotentialModel::harmonic().sample(g)), k);
}

}  // namespace

TEST_CASE("GridSpec geometry") {
    const GridSpec g(-2.0, 2.0, 5);
    CHECK(g.h() == 1.0);
    CHECK(g.x(0) == -2.0);
    CHECK(g.x(4) == 2.0);
    CHECK(g.points() == std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0});
    CHECK_THROWS_AS(GridSpec(0.0, 1.0, 2), UsageError);
    CHECK_THROWS_AS(GridSpec(1.0, 0.0, 10), UsageError);

    const auto d = g.dilated(std::log(2.0));
    CHECK_THAT(d.x_min(), WithinAbs(-1.0, 1e-15));
    CHECK_THAT(d.x_max(), WithinAbs(1.0, 1e-15));
    CHECK(d.n() == g.n());
}

TEST_CASE("GridFunction rejects bad samples") {
    const GridSpec g(0.0, 1.0, 3);
    CHECK_THROWS_AS(GridFunction(g, {1.0, 2.0}), UsageError);
    CHECK_THROWS_AS(GridFunction(g, {1.0, std::nan(""), 2.0}), DomainError);
    CHECK_THROWS_AS(GridFunction(g, {1.0, INFINITY, 2.0}), DomainError);
}

TEST_CASE("derivative is fourth order in the interior") {
    auto max_error = [](std::size_t n) {
        const GridSpec g(-2.0, 2.0, n);
        const auto f = GridFunction::sample(g, [](double x) { return std::sin(2.0 * x); });
        const auto d = derivative(f);
        const auto r = interior(n, 0.05);
        double e = 0.0;
        for (std::size_t i = r.begin; i < r.end; ++i) e = std::max(e, std::abs(d[i] - 2.0 * std::cos(2.0 * g.x(i))));
        return e;
    };
    const double coarse = max_error(101);
    const double fine = max_error(201);
    CHECK(coarse < 1e-5);
    CHECK(coarse / fine > 12.0);
}

TEST_CASE("cubic interpolation reproduces cubics and nodes") {
    const GridSpec g(-1.0, 3.0, 9);
    const auto f = GridFunction::sample(g, [](double x) { return x * x * x - 2.0 * x + 1.0; });
    for (double x : {-1.0, -0.77, 0.1, 1.49, 2.999, 3.0}) {
        CHECK_THAT(interpolate_cubic(f, x), WithinAbs(x * x * x - 2.0 * x + 1.0, 1e-12));
    }
    CHECK(interpolate_cubic(f, g.x(3)) == f[3]);
    CHECK_THROWS_AS(interpolate_cubic(f, 3.1), OutOfDomainError);
    CHECK_THROWS_AS(linear_interpolate(f, -1.2), OutOfDomainError);
}

TEST_CASE("potential models") {
    const auto h = PotentialModel::harmonic();
    CHECK(h(3.0) == 4.5);
    CHECK(h.is_harmonic());
    CHECK(*h.homogeneous_degree() == 2.0);

    const auto p = PotentialModel::power(-2.0, 0.3);
    for (double s : {0.5, 1.7, 3.0}) {
        for (double x : {-2.0, 0.4, 1.1}) CHECK_THAT(p(s * x), WithinRel(std::pow(s, -2.0) * p(x), 1e-14));
    }
    CHECK(PotentialModel::constant(2.5)(100.0) == 2.5);

    const GridSpec g(-1.0, 1.0, 21);
    const PotentialModel tab(Tabulated{GridFunction::sample(g, [](double x) { return x * x; }), 3});
    CHECK_THAT(tab(0.33), WithinAbs(0.33 * 0.33, 1e-12));
    CHECK_FALSE(tab.homogeneous_degree().has_value());
    CHECK_THROWS_AS(tab(1.5), OutOfDomainError);
    CHECK_THROWS_AS(PotentialModel(Tabulated{GridFunction::sample(g, [](double) { return 0.0; }), 2}), UsageError);
}

TEST_CASE("discretize builds the symmetric 3-point operator") {
    const GridSpec g(0.0, 2.0, 5);
    const auto t = discretize(GridFunction::sample(g, [](double x) { return x; }));
    CHECK(t.off_diagonal.size() == 4);
    for (double e : t.off_diagonal) CHECK(e == -0.5 / (0.5 * 0.5));
    CHECK(t.diagonal[2] == 4.0 + 1.0);
}

TEST_CASE("small matrices") {
    const auto diag = raw_matrix({3.0, 1.0, 2.0}, {1e-300, 1e-300});
    const auto ev = lowest_k_eigenvalues(diag, 2);
    CHECK_THAT(ev[0], WithinAbs(1.0, 1e-10));
    CHECK_THAT(ev[1], WithinAbs(2.0, 1e-10));

    const double a = 0.7, b = -0.4;
    const auto two = lowest_k_eigenvalues(raw_matrix({a, a}, {b}), 2);
    CHECK_THAT(two[0], WithinAbs(a - std::abs(b), 1e-10));
    CHECK_THAT(two[1], WithinAbs(a + std::abs(b), 1e-10));

    CHECK_THROWS_AS(lowest_k_eigenvalues(diag, 4), UsageError);
    CHECK_THROWS_AS(lowest_k_eigenvalues(diag, 0), UsageError);
}

TEST_CASE("particle in a box") {
    const double length = 3.0, c = 0.25;
    const std::size_t n = 2001;
    // Dirichlet nodes sit one spacing outside the stored interval.
    const GridSpec g(0.0, length, n);
    const double box = length + 2.0 * g.h();
    const auto ev = lowest_k_eigenvalues(discretize(PotentialModel::constant(c).sample(g)), 4);
    for (std::size_t k = 1; k <= 4; ++k) {
        const double exact = c + 0.5 * std::pow(std::numbers::pi * static_cast<double>(k) / box, 2);
        CHECK_THAT(ev[k - 1], WithinAbs(exact, 1e-4));
    }
}

TEST_CASE("discretised oscillator") {
    CHECK_THAT(oscillator_levels(3001, 1)[0], WithinAbs(0.5, 1e-5));
    // Level 5 carries an O(h^2) error of 1.2e-4 at n = 3001.
    const auto ev = oscillator_levels(4001, 6);
    for (std::size_t n = 0; n < 6; ++n) CHECK_THAT(ev[n], WithinAbs(n + 0.5, 1e-4));
}

TEST_CASE("eigenvalue error is second order in h") {
    const auto coarse = oscillator_levels(751, 4);
    const auto fine = oscillator_levels(1501, 4);
    for (std::size_t n = 0; n < 4; ++n) {
        const double ratio = std::abs(coarse[n] - (n + 0.5)) / std::abs(fine[n] - (n + 0.5));
        CHECK(ratio > 3.5);
    }
}

TEST_CASE("Sturm count agrees with the computed eigenvalues") {
    const GridSpec g(-8.0, 8.0, 401);
    const auto t = discretize(PotentialModel::harmonic().sample(g));
    const auto ev = lowest_k_eigenvalues(t, 30);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, ev.back() - 1e-6);
    for (int i = 0; i < 50; ++i) {
        const double mu = dist(rng);
        const auto below = static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [mu](double e) { return e < mu; }));
        CHECK(sturm_count(t, mu) == below);
    }
}

TEST_CASE("eigenvectors are normalised eigenpairs") {
    const GridSpec g(-10.0, 10.0, 1001);
    const auto t = discretize(PotentialModel::harmonic().sample(g));
    const auto ev = lowest_k_eigenvalues(t, 3);
    for (std::size_t k = 0; k < 3; ++k) {
        const auto v = eigenvector(t, ev[k]);
        CHECK_THAT(l2_norm(v, g.h()), WithinAbs(1.0, 1e-12));
        double res = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            double hv = t.diagonal[i] * v[i];
            if (i > 0) hv += t.off_diagonal[i - 1] * v[i - 1];
            if (i + 1 < v.size()) hv += t.off_diagonal[i] * v[i + 1];
            res = std::max(res, std::abs(hv - ev[k] * v[i]));
        }
        CHECK(res < 1e-6);
        CHECK(boundary_amplitude(v) < 1e-8);
    }
    const auto ground = eigenvector(t, ev[0]);
    const auto exact = GridFunction::sample(g, [](double x) { return std::exp(-0.5 * x * x); });
    CHECK(overlap(ground, exact.values()) > 0.999999);
}
