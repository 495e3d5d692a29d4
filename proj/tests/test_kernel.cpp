#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "cohesive/bond.hpp"
#include "cohesive/influence.hpp"
#include "cohesive/potential.hpp"
#include "cohesive/quadrature.hpp"
#include "cohesive/vec.hpp"

using namespace cohesive;

namespace {

// Argmax oracle: bisection on the sign of a wide-spaced central difference.
// The spacing keeps the difference far above round-off, so the located
// extremum is good to ~1e-10 relative (golden-section alone stalls at
// sqrt(machine eps)).
template <class G>
double argmax_abs(G&& g, double a, double b) {
    const double delta = 1e-5 * (b - a);
    auto slope_sign = [&](double s) { return std::abs(g(s + delta)) - std::abs(g(s - delta)); };
    double lo = a + 2 * delta, hi = b - 2 * delta;
    REQUIRE(slope_sign(lo) > 0);
    REQUIRE(slope_sign(hi) < 0);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (slope_sign(mid) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("bond strain") {
    BondGeometry<2> geom{0.1, vec2(1, 0), 0.2};
    REQUIRE(geom.valid());

    SECTION("rigid translation has zero strain") {
        Vec<2> u = vec2(0.3, -0.7);
        CHECK(bond_strain(u, u, geom) == 0.0);
    }
    SECTION("uniform dilation u = c x gives S = c on any bond") {
        double c = 0.37;
        std::mt19937 rng(41);
        std::uniform_real_distribution<double> coord(-1.0, 1.0);
        for (int it = 0; it < 50; ++it) {
            Vec<2> x = vec2(coord(rng), coord(rng));
            Vec<2> dir = vec2(coord(rng), coord(rng)).normalized();
            double q = 0.05 + 0.04 * coord(rng);
            Vec<2> y = x + dir * q;
            BondGeometry<2> g{q, dir, 0.2};
            CHECK_THAT(bond_strain(x * c, y * c, g), Catch::Matchers::WithinAbs(c, 1e-13));
        }
    }
    SECTION("difference quotient") {
        CHECK_THAT(bond_strain(vec2(0, 0), vec2(0.01, 0), geom),
                   Catch::Matchers::WithinAbs(0.1, 1e-15));
    }
}

TEST_CASE("bond potential") {
    auto f = CohesivePotential::exponential(1.0, 1.0);
    auto j = InfluenceFunction::constant();
    BondGeometry<2> geom{0.05, vec2(1, 0), 0.1};

    CHECK(bond_potential(0.0, geom, f, j) == 0.0);

    SECTION("saturates at (1/eps) J f_inf for large strain") {
        double cap = 1.0 / geom.horizon * 1.0 * f.plateau();
        CHECK_THAT(bond_potential(1e6, geom, f, j), Catch::Matchers::WithinRel(cap, 1e-9));
        CHECK(bond_potential(1e6, geom, f, j) <= cap);
    }
    SECTION("closed-form value for the exponential profile") {
        // (1/0.1)(1 - exp(-0.05 * 1^2))
        double expected = 10.0 * -std::expm1(-0.05);
        CHECK_THAT(bond_potential(1.0, geom, f, j), Catch::Matchers::WithinRel(expected, 1e-13));
        CHECK_THAT(bond_potential(1.0, geom, f, j), Catch::Matchers::WithinAbs(0.48771, 1e-5));
    }
}

TEST_CASE("bond force per unit length") {
    auto f = CohesivePotential::exponential(1.0, 1.0);
    auto j = InfluenceFunction::constant();
    BondGeometry<2> geom{0.05, vec2(1, 0), 0.1};

    CHECK(bond_force_per_length(0.0, geom, f, j) == 0.0);

    SECTION("odd in S") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> su(-20.0, 20.0);
        for (int it = 0; it < 200; ++it) {
            double s = su(rng);
            CHECK(bond_force_per_length(-s, geom, f, j) == -bond_force_per_length(s, geom, f, j));
        }
    }
    SECTION("argmax of |force| sits at the critical strain") {
        double sc = critical_strain(geom.separation, f);
        auto g = [&](double s) { return bond_force_per_length(s, geom, f, j); };
        double smax = argmax_abs(g, 0.0, 5.0 * sc);
        CHECK_THAT(smax, Catch::Matchers::WithinAbs(sc, 1e-8));
    }
}

TEST_CASE("bond force curvature") {
    auto f = CohesivePotential::exponential(1.0, 1.0);
    auto j = InfluenceFunction::constant();
    BondGeometry<2> geom{0.05, vec2(1, 0), 0.1};
    double sc = critical_strain(geom.separation, f);

    SECTION("value at S = 0") {
        double expected = 2.0 / geom.horizon * 1.0 * f.initial_slope();
        CHECK_THAT(bond_force_curvature(0.0, geom, f, j), Catch::Matchers::WithinRel(expected, 1e-13));
        CHECK(bond_force_curvature(0.0, geom, f, j) > 0);
    }
    SECTION("vanishes at the critical strain") {
        CHECK_THAT(bond_force_curvature(sc, geom, f, j), Catch::Matchers::WithinAbs(0.0, 1e-10));
    }
    SECTION("sign structure around the critical strain") {
        CHECK(bond_force_curvature(0.999 * sc, geom, f, j) > 0);
        CHECK(bond_force_curvature(1.001 * sc, geom, f, j) < 0);
        // exactly one sign change on (0, inf)
        int changes = 0;
        double prev = bond_force_curvature(1e-4 * sc, geom, f, j);
        for (int i = 1; i <= 4000; ++i) {
            double s = 4.0 * sc * i / 4000.0;
            double cur = bond_force_curvature(s, geom, f, j);
            if (prev > 0 && cur <= 0) ++changes;
            if (prev <= 0 && cur > 0) ++changes;
            prev = cur;
        }
        CHECK(changes == 1);
    }
    SECTION("matches centered finite differences of the force") {
        for (auto profile : {CohesivePotential::exponential(1.3, 0.8),
                             CohesivePotential::rational(2.0, 1.5)}) {
            double scp = critical_strain(geom.separation, profile);
            double ds = 1e-6 * scp;
            for (int i = 1; i <= 100; ++i) {
                double s = 3.0 * scp * i / 100.0;
                double fd = (bond_force_per_length(s + ds, geom, profile, j) -
                             bond_force_per_length(s - ds, geom, profile, j)) /
                            (2 * ds);
                double an = bond_force_curvature(s, geom, profile, j);
                double scale = std::max(std::abs(fd), 2.0 / geom.horizon * profile.initial_slope());
                CHECK(std::abs(an - fd) <= 1e-6 * scale);
            }
        }
    }
}

TEST_CASE("force is the strain derivative of the per-unit-length potential") {
    // bond_potential returns q * (potential per unit length), so the force
    // law equals d/dS of bond_potential / q.
    auto j = InfluenceFunction::conical();
    BondGeometry<2> geom{0.08, vec2(0, 1), 0.12};
    for (auto f : {CohesivePotential::exponential(1.0, 1.0), CohesivePotential::rational(0.7, 2.0)}) {
        double sc = critical_strain(geom.separation, f);
        double ds = 1e-6 * sc;
        for (int i = 1; i <= 120; ++i) {
            double s = -3.0 * sc + 6.0 * sc * i / 120.0;
            if (std::abs(s) < 10 * ds) continue;
            double fd = (bond_potential(s + ds, geom, f, j) - bond_potential(s - ds, geom, f, j)) /
                        (2 * ds * geom.separation);
            double an = bond_force_per_length(s, geom, f, j);
            double scale = std::max({std::abs(an), std::abs(fd), 1e-12});
            CHECK(std::abs(an - fd) / scale <= 1e-6);
        }
    }
}

TEST_CASE("critical strain") {
    SECTION("exponential profile has rho_bar = f_inf / (2 f'(0))") {
        auto f = CohesivePotential::exponential(1.0, 1.0);
        CHECK_THAT(f.inflection_argument(), Catch::Matchers::WithinRel(0.5, 1e-14));
        CHECK_THAT(f.inflection_root(), Catch::Matchers::WithinAbs(0.70711, 1e-5));
        // root of f'(p) + 2p f''(p) = 0, checked directly
        double p = f.inflection_argument();
        CHECK_THAT(f.slope(p) + 2 * p * f.curvature(p), Catch::Matchers::WithinAbs(0.0, 1e-14));
    }
    SECTION("inverse square root scaling in the separation") {
        auto f = CohesivePotential::exponential(2.0, 0.5);
        CHECK_THAT(critical_strain(0.4, f), Catch::Matchers::WithinRel(0.5 * critical_strain(0.1, f), 1e-13));
    }
    SECTION("rational profile root satisfies the defining equation") {
        auto f = CohesivePotential::rational(1.7, 0.9);
        double p = f.inflection_argument();
        CHECK_THAT(f.slope(p) + 2 * p * f.curvature(p), Catch::Matchers::WithinAbs(0.0, 1e-14));
    }
    SECTION("table profile reproduces the tabulated exponential") {
        auto exact = CohesivePotential::exponential(1.0, 1.0);
        std::vector<double> r, v;
        for (int i = 0; i <= 400; ++i) {
            double x = 12.0 * i / 400.0;
            r.push_back(x);
            v.push_back(exact.value(x));
        }
        auto tab = CohesivePotential::from_table(r, v);
        CHECK_THAT(tab.inflection_argument(), Catch::Matchers::WithinRel(0.5, 1e-3));
        CHECK_THAT(tab.initial_slope(), Catch::Matchers::WithinRel(1.0, 1e-3));
    }
    SECTION("non-concave table is rejected") {
        std::vector<double> r{0, 1, 2, 3}, v{0, 1, 2.5, 3};
        CHECK_THROWS_AS(CohesivePotential::from_table(r, v), std::invalid_argument);
    }
}

TEST_CASE("influence moments") {
    auto one = InfluenceFunction::constant();
    auto cone = InfluenceFunction::conical();

    CHECK_THAT(one.moment(2), Catch::Matchers::WithinRel(1.0 / 3.0, 1e-12));
    CHECK_THAT(cone.moment(2), Catch::Matchers::WithinRel(1.0 / 12.0, 1e-12));

    SECTION("full-ball normalization against a polar quadrature oracle") {
        // m = Int over the unit disk of |xi| J(|xi|) = 2 pi Int r^2 J dr for d=2
        auto polar = gauss_legendre(200, 0.0, 1.0);
        double oracle = 0;
        for (std::size_t i = 0; i < polar.node.size(); ++i)
            oracle += polar.weight[i] * polar.node[i] * polar.node[i] * one(polar.node[i]);
        oracle *= 2 * std::numbers::pi;
        CHECK_THAT(one.normalization(2), Catch::Matchers::WithinRel(oracle, 1e-12));
        CHECK_THAT(one.normalization(2), Catch::Matchers::WithinAbs(2.0944, 1e-4));
    }
    SECTION("moment quadrature is converged: fixed rules agree to 1e-10") {
        for (const auto& j : {one, cone}) {
            for (int p = 0; p <= 6; ++p) {
                double coarse = 0, fine = 0;
                auto rc = gauss_legendre(64, 0.0, 1.0);
                auto rf = gauss_legendre(128, 0.0, 1.0);
                for (std::size_t i = 0; i < rc.node.size(); ++i)
                    coarse += rc.weight[i] * std::pow(rc.node[i], p) * j(rc.node[i]);
                for (std::size_t i = 0; i < rf.node.size(); ++i)
                    fine += rf.weight[i] * std::pow(rf.node[i], p) * j(rf.node[i]);
                CHECK(std::abs(coarse - fine) < 1e-10);
                CHECK(std::abs(j.moment(p) - fine) < 1e-10);
            }
        }
    }
    SECTION("table influence stays within bounds and integrates") {
        auto tab = InfluenceFunction::from_table({0.0, 0.3, 0.6, 0.9}, {1.0, 0.8, 0.4, 0.1});
        CHECK(tab(0.99) >= 0.0);
        CHECK(tab(1.0) == 0.0);
        CHECK(tab.moment(2) > 0.0);
    }
}

TEST_CASE("oddness across random bonds and profiles") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> uq(0.01, 0.99), us(-30.0, 30.0), up(0.2, 3.0);
    for (int it = 0; it < 300; ++it) {
        double eps = uq(rng);
        double q = uq(rng) * eps;
        if (q <= 0) continue;
        BondGeometry<2> geom{q, vec2(1, 0), eps};
        auto f = (it % 2) ? CohesivePotential::exponential(up(rng), up(rng))
                          : CohesivePotential::rational(up(rng), up(rng));
        auto j = (it % 3) ? InfluenceFunction::constant() : InfluenceFunction::conical();
        double s = us(rng);
        REQUIRE(bond_force_per_length(-s, geom, f, j) == -bond_force_per_length(s, geom, f, j));
    }
}
