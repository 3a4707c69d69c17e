#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "scalint/design.hpp"

using namespace scalint;
using Catch::Matchers::WithinAbs;

namespace {
const double kHalfLn2 = std::log(2.0) / 2.0;
const GridSpec kBase(-12.0, 12.0, 3001);
}  // namespace

TEST_CASE("energy intervals") {
    CHECK(oscillator_negative_interval().same_sign());
    CHECK(oscillator_positive_interval().same_sign());
    CHECK(oscillator_positive_interval().contains(0.4999));
    CHECK_FALSE(oscillator_positive_interval().contains(0.5 - 1e-7));
    CHECK_FALSE(oscillator_negative_interval().contains(0.0));
    CHECK_FALSE((EnergyInterval{-1.0, 1.0}).same_sign());
}

TEST_CASE("uniform scale") {
    CHECK(design_uniform_scale(1.0) == 0.0);
    CHECK_THAT(design_uniform_scale(4.0), WithinAbs(std::log(2.0), 1e-15));
    CHECK_THROWS_AS(design_uniform_scale(0.0), DesignError);
    CHECK_THROWS_AS(design_uniform_scale(-2.0), DesignError);

    const double lambda = design_uniform_scale(2.0);
    const auto base = verify_spectrum_map(PotentialModel::harmonic(), {0.0, -0.7, 0.0}, 5, 1e-3, kBase);
    const auto scaled = verify_spectrum_map(PotentialModel::harmonic(), {lambda, -0.7, 0.0}, 5, 1e-3, kBase);
    for (std::size_t i = 0; i < 5; ++i) CHECK_THAT(scaled.computed[i], WithinAbs(2.0 * base.computed[i], 1e-3));
}

TEST_CASE("fixed-ground design") {
    const auto same = design_fixed_ground({-0.5, 1.0, oscillator_negative_interval()});
    CHECK(same.lambda == 0.0);
    CHECK(same.energy == -0.5);

    const auto doubled = design_fixed_ground({-0.5, 2.0, oscillator_negative_interval()});
    CHECK_THAT(doubled.lambda, WithinAbs(kHalfLn2, 1e-15));
    CHECK(doubled.energy == -0.25);
    CHECK_THAT(-1.0 / (2.0 * doubled.energy), WithinAbs(2.0, 1e-15));
    CHECK_THAT(doubled.spectral_scale() * doubled.energy, WithinAbs(-0.5, 1e-15));

    try {
        design_fixed_ground({-0.5, -3.0, oscillator_negative_interval()});
        FAIL("expected a design error");
    } catch (const DesignError& e) {
        CHECK(e.kind == DesignError::Kind::SameSign);
    }
    try {
        design_fixed_ground({0.3, 0.5, oscillator_positive_interval()});  // E = 0.6 leaves (0, 1/2)
        FAIL("expected a design error");
    } catch (const DesignError& e) {
        CHECK(e.kind == DesignError::Kind::Interval);
    }
    CHECK_THROWS_AS(design_fixed_ground({0.3, 2.0, oscillator_negative_interval()}), DesignError);
    CHECK_THROWS_AS(design_fixed_ground({-0.5, 2.0, EnergyInterval{-1.0, 1.0}}), DesignError);
    CHECK_NOTHROW(design_fixed_ground({0.3, 2.0, oscillator_positive_interval()}));
}

TEST_CASE("designed spectra keep the ground level fixed") {
    for (double kappa : {0.5, 1.0, 2.0, 4.0}) {
        const DesignTarget target{-0.5, kappa, oscillator_negative_interval()};
        const auto p = design_fixed_ground(target);
        const auto r = verify_spectrum_map(PotentialModel::harmonic(), p, 3, 1e-3, kBase);
        INFO("kappa=" << kappa);
        CHECK(r.passed);
        CHECK_THAT(r.computed[0], WithinAbs(-0.5, 1e-3));
        CHECK_THAT(r.computed[2] - r.computed[1], WithinAbs(kappa, 1e-3));
        const auto predicted = predicted_fixed_ground_spectrum(target, 3);
        CHECK_THAT(predicted[1], WithinAbs(kappa * 0.5, 1e-14));
    }
}

TEST_CASE("uniform and fixed-ground designs agree") {
    for (double sigma : {0.5, 2.0, 3.0}) {
        const double e = -0.3;
        const auto p = design_fixed_ground({e * sigma, sigma, oscillator_negative_interval()});
        CHECK_THAT(p.lambda, WithinAbs(design_uniform_scale(sigma), 1e-15));
        CHECK_THAT(p.energy, WithinAbs(e, 1e-15));
    }
}

TEST_CASE("figure sample set") {
    const auto s = figure1_energy_samples();
    CHECK(s.size() == 40);
    CHECK(std::count(s.begin(), s.end(), -0.5) == 1);
    CHECK(s.front() > -2.5);
    CHECK(s.back() <= -0.05);
    CHECK(std::all_of(s.begin(), s.end(), [](double e) { return e > -2.5 && e <= -0.05 + 1e-15; }));
}

TEST_CASE("family sweep") {
    const GridSpec grid(-6.0, 6.0, 1201);
    const auto rows = sweep_family(-0.5, 0.0, {-0.5, -0.25, -0.1, -2.0, 0.1, 0.6}, grid);
    REQUIRE(rows.size() == 6);

    const auto& osc = rows[0];
    REQUIRE(osc.ok());
    CHECK(osc.lambda == 0.0);
    for (std::size_t i = 0; i < grid.n(); ++i) CHECK(std::abs((*osc.v2)[i] - (0.5 * grid.x(i) * grid.x(i) - 1.0)) < 1e-12);
    CHECK(osc.shape == WellShape::SingleWell);
    CHECK_THAT(osc.e0_computed, WithinAbs(-0.5, 1e-3));
    CHECK_THAT(osc.e1_computed, WithinAbs(0.5, 1e-3));

    CHECK(rows[1].shape == WellShape::DoubleWell);
    CHECK(rows[2].shape == WellShape::DoubleWell);
    CHECK(rows[3].shape == WellShape::PeakedSingleWell);
    // Squeezed excited levels: factor -1/(2E) = 1/4, so E_1 = (1/4)(1/2).
    CHECK_THAT(rows[3].e1_computed, WithinAbs(0.125, 1e-3));
    for (std::size_t i = 0; i < 4; ++i) CHECK_THAT(rows[i].e0_computed, WithinAbs(-0.5, 1e-3));

    CHECK_FALSE(rows[4].ok());  // opposite sign to E0
    CHECK_FALSE(rows[5].ok());  // E >= 1/2
    CHECK_FALSE(rows[4].v2.has_value());
}

TEST_CASE("sweep rows are independent of order") {
    const GridSpec grid(-6.0, 6.0, 801);
    const std::vector<double> a{-0.3, -1.1, -0.5};
    const std::vector<double> b{-0.5, -0.3, -1.1};
    const auto ra = sweep_family(-0.5, 0.2, a, grid);
    const auto rb = sweep_family(-0.5, 0.2, b, grid);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto j = static_cast<std::size_t>(std::find(b.begin(), b.end(), a[i]) - b.begin());
        CHECK(ra[i].e0_computed == rb[j].e0_computed);
        CHECK(ra[i].e1_computed == rb[j].e1_computed);
        CHECK(ra[i].shape == rb[j].shape);
        for (std::size_t k = 0; k < grid.n(); ++k) REQUIRE((*ra[i].v2)[k] == (*rb[j].v2)[k]);
    }
}
