#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "scalint/separable2d.hpp"

using namespace scalint;
using Catch::Matchers::WithinAbs;

namespace {

const GridSpec kGrid(-10.0, 10.0, 2001);

std::vector<GridFunction> gaussians(const GridSpec& g) {
    std::vector<GridFunction> out;
    for (double c : {0.0, 0.5, -1.0}) {
        out.push_back(GridFunction::sample(g, [c](double y) { return std::exp(-0.5 * (y - c) * (y - c)); }));
    }
    return out;
}

std::vector<double> levels_1d(const TridiagonalHamiltonian& t, std::size_t k) { return lowest_k_eigenvalues(t, k); }

}  // namespace

TEST_CASE("block Hamiltonian of oscillator axes is the 1D oscillator") {
    const auto ax = oscillator_axis(-0.5, 0.0, 0.0, kGrid, Axis::X);
    const auto ay = oscillator_axis(-0.5, 0.0, 0.0, kGrid, Axis::Y);
    const auto [hx, hy] = build_block_hamiltonian(ax, ay);
    const auto osc = discretize(PotentialModel::harmonic().sample(kGrid));
    for (std::size_t i = 0; i < kGrid.n(); ++i) CHECK_THAT(hx.diagonal[i], WithinAbs(osc.diagonal[i], 1e-9));
    const auto ex = levels_1d(hx, 4);
    const auto eo = levels_1d(osc, 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK_THAT(ex[i], WithinAbs(eo[i], 1e-4));
    CHECK(hy.diagonal == hx.diagonal);
}

TEST_CASE("blocks are independent") {
    const auto ax = oscillator_axis(-0.7, 0.2, 0.1, kGrid, Axis::X);
    const auto ay = oscillator_axis(-1.1, -0.4, 0.3, kGrid, Axis::Y);
    const auto ax2 = oscillator_axis(-0.2, 0.6, -0.2, kGrid, Axis::X);
    const auto a = build_partner_blocks(ax, ay);
    const auto b = build_partner_blocks(ax2, ay);
    CHECK(a.second.diagonal == b.second.diagonal);
    CHECK(a.second.off_diagonal == b.second.off_diagonal);
    CHECK(a.first.diagonal != b.first.diagonal);
}

TEST_CASE("block operator acts componentwise") {
    const auto ax = oscillator_axis(-0.7, 0.2, 0.0, kGrid, Axis::X);
    const auto ay = oscillator_axis(-1.1, -0.4, 0.0, kGrid, Axis::Y);
    const auto op = BlockOperator2D::raising(ax, ay);
    const auto g = gaussians(kGrid);
    const std::vector<double> zero(kGrid.n(), 0.0);
    const std::vector<double> first(g[0].values().begin(), g[0].values().end());
    const auto out = op.apply({first, zero});
    for (double v : out.second) REQUIRE(v == 0.0);
    CHECK(out.first == apply_raising(ax.alpha.values(), first, kGrid.h()));
}

TEST_CASE("axis validation") {
    auto ax = oscillator_axis(-0.7, 0.2, 0.0, kGrid, Axis::X);
    CHECK_NOTHROW(ax.validate());
    ax.axis_energy = -0.6;
    CHECK_THROWS_AS(ax.validate(), DomainError);
}

TEST_CASE("block commutator residual") {
    const auto tests = gaussians(kGrid);
    const auto ax = oscillator_axis(-0.7, 0.2, 0.0, kGrid, Axis::X);
    const auto ay = oscillator_axis(-1.4, -0.5, 0.0, kGrid, Axis::Y);

    const double r = block_commutator_residual(ax, ay, tests, tests);
    CHECK(r < 5e-3);
    CHECK_THAT(r, WithinAbs(std::max(commutator_residual_1d(ax, ax.alpha_deriv, tests),
                                     commutator_residual_1d(ay, ay.alpha_deriv, tests)),
                            1e-12));

    // Swapped F.
    CHECK(block_commutator_residual(ax, ay, tests, tests, std::pair{ay.alpha_deriv, ax.alpha_deriv}) > 0.1);

    // Constant alpha: zero commutator, zero F.
    const auto c = GridFunction::sample(kGrid, [](double) { return 0.8; });
    const auto zero = GridFunction::sample(kGrid, [](double) { return 0.0; });
    const AxisFactorization flat{PotentialModel::constant(0.32 - 0.1), c, zero, -0.1, 0.0, Axis::X};
    CHECK(commutator_residual_1d(flat, zero, tests) < 1e-10);

    const auto scaled = oscillator_axis(-0.7, 0.2, 0.3, kGrid, Axis::X);
    CHECK_THROWS_AS(block_commutator_residual(scaled, ay, tests, tests), UsageError);
}

TEST_CASE("commutator residual decays at second order") {
    auto residual = [](std::size_t n) {
        const GridSpec g(-10.0, 10.0, n);
        const auto ax = oscillator_axis(-0.7, 0.2, 0.0, g, Axis::X);
        const auto ay = oscillator_axis(-1.4, -0.5, 0.0, g, Axis::Y);
        return block_commutator_residual(ax, ay, gaussians(g), gaussians(g));
    };
    CHECK(residual(501) / residual(1001) > 3.5);
}

TEST_CASE("2D oscillator degeneracy") {
    const auto ax = oscillator_axis(-0.5, 0.0, 0.0, kGrid, Axis::X);
    const auto ay = oscillator_axis(-0.5, 0.0, 0.0, kGrid, Axis::Y);
    const auto s = separable_spectrum(ax, ay, 10, BlockSide::Original);
    REQUIRE(s.groups.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(s.groups[i].multiplicity == i + 1);
        CHECK_THAT(s.groups[i].energy, WithinAbs(static_cast<double>(i) + 1.0, 1e-3));
    }
    CHECK_THAT(s.levels[0], WithinAbs(1.0, 1e-4));
    CHECK_THROWS_AS(separable_spectrum(ax, ay, 0), UsageError);
}

TEST_CASE("scaled 2D spectra") {
    const GridSpec g(-12.0, 12.0, 2401);
    SECTION("equal lambdas scale every level") {
        const double lambda = 0.3;
        const auto s0 = separable_spectrum(oscillator_axis(-0.9, 0.1, 0.0, g, Axis::X),
                                           oscillator_axis(-0.9, 0.1, 0.0, g, Axis::Y), 8);
        const auto s1 = separable_spectrum(oscillator_axis(-0.9, 0.1, lambda, g, Axis::X),
                                           oscillator_axis(-0.9, 0.1, lambda, g, Axis::Y), 8);
        for (std::size_t i = 0; i < 8; ++i) CHECK_THAT(s1.levels[i], WithinAbs(std::exp(2.0 * lambda) * s0.levels[i], 2e-3));
    }
    SECTION("different lambdas add per-axis spectra") {
        const double lx = 0.35, ly = -0.2, ex = -0.6, ey = 0.1;
        const auto s = separable_spectrum(oscillator_axis(ex, 0.0, lx, g, Axis::X), oscillator_axis(ey, 0.3, ly, g, Axis::Y), 8);
        std::vector<double> base{0.5, 1.5, 2.5, 3.5, 4.5, 5.5, 6.5};
        const auto px = predicted_partner_spectrum(base, ex, lx, 8);
        const auto py = predicted_partner_spectrum(base, ey, ly, 8);
        std::vector<double> sums;
        for (double a : px)
            for (double b : py) sums.push_back(a + b);
        std::sort(sums.begin(), sums.end());
        for (std::size_t i = 0; i < 8; ++i) CHECK_THAT(s.levels[i], WithinAbs(sums[i], 2e-3));
        // Ground level is the sum of the axis ground levels.
        CHECK_THAT(s.levels[0], WithinAbs(std::exp(2.0 * lx) * ex + std::exp(2.0 * ly) * ey, 1e-4));
    }
}
