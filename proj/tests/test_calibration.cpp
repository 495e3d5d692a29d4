#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "cohesive/calibration.hpp"

using namespace cohesive;

TEST_CASE("moduli formulas at exact moments") {
    auto f = CohesivePotential::exponential(1.0, 1.0);
    auto one = InfluenceFunction::constant();

    auto m2 = elastic_moduli(f, one, 2);
    CHECK_THAT(m2.mu, Catch::Matchers::WithinRel(1.0 / 12.0, 1e-10));
    CHECK(m2.mu == m2.lambda);

    auto m3 = elastic_moduli(f, one, 3);
    CHECK_THAT(m3.mu, Catch::Matchers::WithinRel(1.0 / 20.0, 1e-10));
    CHECK(m3.mu == m3.lambda);

    SECTION("degenerate limit: moduli vanish with the initial slope") {
        auto tiny = CohesivePotential::exponential(1e-12, 1.0);
        CHECK(elastic_moduli(tiny, one, 2).mu < 1e-12);
        // linear in f'(0): scaling the slope scales mu
        auto f2 = CohesivePotential::exponential(3.5, 1.0);
        CHECK_THAT(elastic_moduli(f2, one, 2).mu, Catch::Matchers::WithinRel(3.5 * m2.mu, 1e-12));
    }
}

TEST_CASE("energy release rate formulas") {
    auto f = CohesivePotential::exponential(1.0, 1.0);
    auto one = InfluenceFunction::constant();

    CHECK_THAT(energy_release_rate(f, one, 2),
               Catch::Matchers::WithinRel(4.0 / (3.0 * std::numbers::pi), 1e-10));
    CHECK_THAT(energy_release_rate(f, one, 3), Catch::Matchers::WithinRel(3.0 / 8.0, 1e-10));

    SECTION("vanishes with the plateau") {
        auto tiny = CohesivePotential::exponential(1.0, 1e-12);
        CHECK(energy_release_rate(tiny, one, 2) < 1e-12);
        auto f2 = CohesivePotential::exponential(1.0, 2.5);
        CHECK_THAT(energy_release_rate(f2, one, 2),
                   Catch::Matchers::WithinRel(2.5 * energy_release_rate(f, one, 2), 1e-12));
    }
}

TEST_CASE("kernel fitting") {
    auto one = InfluenceFunction::constant();
    auto cone = InfluenceFunction::conical();

    SECTION("inverse of the exact-moment examples") {
        auto f = fit_kernel(1.0 / 12.0, 4.0 / (3.0 * std::numbers::pi), one, 2);
        CHECK_THAT(f.initial_slope(), Catch::Matchers::WithinRel(1.0, 1e-12));
        CHECK_THAT(f.plateau(), Catch::Matchers::WithinRel(1.0, 1e-12));
    }
    SECTION("conical influence, d=2, mu=1") {
        auto f = fit_kernel(1.0, 1.0, cone, 2);
        CHECK_THAT(f.initial_slope(), Catch::Matchers::WithinRel(48.0, 1e-10));
    }
    SECTION("linearity under target scaling") {
        auto f1 = fit_kernel(0.37, 0.81, one, 3);
        auto f2 = fit_kernel(5.0 * 0.37, 5.0 * 0.81, one, 3);
        CHECK_THAT(f2.initial_slope(), Catch::Matchers::WithinRel(5.0 * f1.initial_slope(), 1e-13));
        CHECK_THAT(f2.plateau(), Catch::Matchers::WithinRel(5.0 * f1.plateau(), 1e-13));
    }
    SECTION("round trip on 100 random target pairs to 1e-12") {
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> logu(-3.0, 3.0);
        for (int it = 0; it < 100; ++it) {
            double mu = std::pow(10.0, logu(rng));
            double gc = std::pow(10.0, logu(rng));
            int dim = (it % 2) ? 2 : 3;
            const auto& j = (it % 3) ? one : cone;
            auto f = fit_kernel(mu, gc, j, dim);
            auto back = elastic_moduli(f, j, dim);
            REQUIRE_THAT(back.mu, Catch::Matchers::WithinRel(mu, 1e-12));
            REQUIRE_THAT(back.lambda, Catch::Matchers::WithinRel(mu, 1e-12));
            REQUIRE_THAT(energy_release_rate(f, j, dim), Catch::Matchers::WithinRel(gc, 1e-12));
        }
    }
    SECTION("nonpositive targets rejected") {
        CHECK_THROWS_AS(fit_kernel(0.0, 1.0, one, 2), std::invalid_argument);
        CHECK_THROWS_AS(fit_kernel(1.0, -2.0, one, 2), std::invalid_argument);
    }
}

TEST_CASE("material model derived constants") {
    auto f = CohesivePotential::exponential(1.0, 1.0);
    auto one = InfluenceFunction::constant();
    auto mat = MaterialModel::make(1.0, 0.1, 2, f, one);
    CHECK(mat.mu == mat.lambda);
    CHECK_THAT(mat.mu, Catch::Matchers::WithinRel(1.0 / 12.0, 1e-10));
    CHECK_THAT(mat.gc, Catch::Matchers::WithinRel(4.0 / (3.0 * std::numbers::pi), 1e-10));
    CHECK_THAT(mat.ball_volume(), Catch::Matchers::WithinRel(std::numbers::pi * 0.01, 1e-13));
    CHECK_THROWS_AS(MaterialModel::make(0.0, 0.1, 2, f, one), std::invalid_argument);
    CHECK_THROWS_AS(MaterialModel::make(1.0, 1.5, 2, f, one), std::invalid_argument);
}
