#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "plc/mathutil.hpp"
#include "support/test_oracles.hpp"

using namespace plc;
using plc::testing::shared_quadrature;

TEST_CASE("gaussian tail basics") {
    CHECK(gaussian_tail(0.0) == doctest::Approx(0.5).epsilon(1e-15));

    // tenth percentile threshold, checked against plain quadrature
    const double t = gaussian_tail(1.2816);
    CHECK(t == doctest::Approx(0.1000).epsilon(1e-3));
    CHECK(t == doctest::Approx(plc::testing::quad_gaussian_tail(1.2816)).epsilon(1e-9));

    // far left tail is 1 within double precision but stays below 1
    const double left = gaussian_tail(-8.0);
    CHECK(left < 1.0);
    CHECK(left > 1.0 - 1e-14);
    const double right = gaussian_tail(8.0);
    CHECK(1.0 - left == doctest::Approx(right).epsilon(1e-9));
    CHECK(right == doctest::Approx(plc::testing::quad_gaussian_tail(8.0)).epsilon(1e-4));

    CHECK_THROWS_AS(gaussian_tail(std::numeric_limits<double>::quiet_NaN()), InvalidArgument);
    CHECK_THROWS_AS(gaussian_tail(std::numeric_limits<double>::infinity()), InvalidArgument);
}

TEST_CASE("gaussian tail symmetry") {
    for (double x = -9.0; x <= 9.0; x += 0.37) {
        CHECK(gaussian_tail(x) + gaussian_tail(-x) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);

    const double direct = -(0.11 * std::log2(0.11) + 0.89 * std::log2(0.89));
    CHECK(binary_entropy(0.11) == doctest::Approx(direct).epsilon(1e-15));
    CHECK(binary_entropy(0.11) == doctest::Approx(0.4999).epsilon(1e-3));

    CHECK_THROWS_AS(binary_entropy(-0.01), InvalidArgument);
    CHECK_THROWS_AS(binary_entropy(1.01), InvalidArgument);
}

TEST_CASE("inverse binary entropy") {
    CHECK(inv_binary_entropy(1.0) == 0.5);
    CHECK(inv_binary_entropy(0.0) == 0.0);

    const double q = inv_binary_entropy(0.5);
    CHECK(binary_entropy(q) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(q == doctest::Approx(0.1100).epsilon(5e-4));

    CHECK_THROWS_AS(inv_binary_entropy(-0.1), InvalidArgument);
    CHECK_THROWS_AS(inv_binary_entropy(1.1), InvalidArgument);
}

TEST_CASE("entropy round trip") {
    for (double h = 0.0; h <= 1.0; h += 0.01) {
        CHECK(binary_entropy(inv_binary_entropy(h)) == doctest::Approx(h).epsilon(1e-10));
    }
}

TEST_CASE("cavity geometry") {
    const CavityGeometry geo = cavity_geometry(0.3, 0.1, 0.25, 1.0, 1e-12);
    CHECK(geo.one_minus_q == doctest::Approx(0.75));
    CHECK(geo.w_plus >= geo.w_minus);
    CHECK(geo.w_plus - geo.w_minus == doctest::Approx(2.0 / std::sqrt(0.75)).epsilon(1e-12));

    // clamp keeps the variance positive as q -> 1
    const CavityGeometry hard = cavity_geometry(0.0, 0.0, 1.0 - 1e-16, 1.0, 1e-12);
    CHECK(hard.one_minus_q == 1e-12);

    for (double k = 0.0; k < 3.0; k += 0.31) {
        for (double delta = -2.0; delta <= 2.0; delta += 0.41) {
            const CavityGeometry g = cavity_geometry(delta, -0.4, 0.5, k, 1e-12);
            CHECK(g.w_plus >= g.w_minus);
        }
    }
}

TEST_CASE("channel integrals: beta -> 0 limit") {
    const XiIntegrals xi = xi_integrals(+1, 0.7, -0.2, 0.4, 1.3, 1e-12);
    CHECK(xi.i0 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(xi.i1) < 1e-9);
    CHECK(std::abs(xi.i2) < 1e-9);

    const XiIntegrals xi2 = xi_integrals(-1, -1.2, 0.9, 0.0, 0.5, 1e-12);
    CHECK(xi2.i0 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(xi2.i1) < 1e-9);
}

TEST_CASE("channel integrals: k -> infinity with y = +1 matches everything") {
    for (double beta : {0.5, 2.0, 20.0}) {
        const XiIntegrals xi = xi_integrals(+1, 0.4, 0.3, 0.2, 1e15, beta);
        CHECK(xi.i0 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(xi.i1 == 0.0);
        CHECK(xi.i2 == 0.0);
    }
}

TEST_CASE("channel integrals match quadrature at the reference point") {
    const auto quad = shared_quadrature().integrate(-1, 0.3, 0.1, 0.25, 1.0, 2.0);
    const XiIntegrals xi = xi_integrals(-1, 0.3, 0.1, 0.25, 1.0, 2.0);
    CHECK(std::abs(xi.i0 - quad.i0) <= 1e-8);
    CHECK(std::abs(xi.i1 - quad.i1) <= 1e-8);
    CHECK(std::abs(xi.i2 - quad.i2) <= 1e-8);
}

TEST_CASE("channel integrals match quadrature on a full grid") {
    const auto& grid = shared_quadrature();
    const double deltas[] = {-3.0, -0.7, 0.0, 1.1, 2.5};
    const double as[] = {-1.0, -0.3, 0.0, 0.4, 1.0};
    const double qs[] = {0.0, 0.3, 0.6, 0.9, 0.99};
    const double ks[] = {0.0, 0.25, 0.67, 1.28, 2.5};
    const double betas[] = {0.1, 0.5, 2.0, 5.0, 10.0};

    const auto close = [](double closed, double quad) {
        const double tol = std::max(1e-6 * std::max(std::abs(closed), std::abs(quad)), 1e-9);
        return std::abs(closed - quad) <= tol;
    };

    std::size_t checked = 0;
    for (int y : {-1, +1})
        for (double delta : deltas)
            for (double a : as)
                for (double q : qs)
                    for (double k : ks)
                        for (double beta : betas) {
                            const XiIntegrals xi = xi_integrals(y, delta, a, q, k, beta);
                            const auto quad = grid.integrate(y, delta, a, q, k, beta);
                            const bool ok = close(xi.i0, quad.i0) && close(xi.i1, quad.i1) &&
                                            close(xi.i2, quad.i2);
                            if (!ok) {
                                CAPTURE(y);
                                CAPTURE(delta);
                                CAPTURE(a);
                                CAPTURE(q);
                                CAPTURE(k);
                                CAPTURE(beta);
                                CHECK(xi.i0 == doctest::Approx(quad.i0));
                                CHECK(xi.i1 == doctest::Approx(quad.i1));
                                CHECK(xi.i2 == doctest::Approx(quad.i2));
                            }
                            REQUIRE(ok);
                            ++checked;
                        }
    CHECK(checked == 6250);

    // i0 stays in (0,1]
    const XiIntegrals probe = xi_integrals(+1, 0.5, 0.2, 0.3, 0.8, 3.0);
    CHECK(probe.i0 > 0.0);
    CHECK(probe.i0 <= 1.0);
}

TEST_CASE("channel integral symmetries") {
    for (double delta : {-1.4, -0.2, 0.8}) {
        for (double a : {-0.9, 0.3}) {
            for (double q : {0.0, 0.55}) {
                // i1 flips sign exactly with the source symbol
                const XiIntegrals plus = xi_integrals(+1, delta, a, q, 0.9, 2.5);
                const XiIntegrals minus = xi_integrals(-1, delta, a, q, 0.9, 2.5);
                CHECK(plus.i1 == -minus.i1);
                CHECK(plus.i2 == -minus.i2);

                // mirror symmetry of the factor: i0 invariant under
                // (delta, a) -> (-delta, -a)
                const XiIntegrals mirrored = xi_integrals(+1, -delta, -a, q, 0.9, 2.5);
                CHECK(plus.i0 == doctest::Approx(mirrored.i0).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("channel integral input validation") {
    CHECK_THROWS_AS(xi_integrals(0, 0.0, 0.0, 0.0, 1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(xi_integrals(+1, 0.0, 0.0, 1.0, 1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(xi_integrals(+1, 0.0, 0.0, -0.1, 1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(xi_integrals(+1, 0.0, 0.0, 0.0, -1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(xi_integrals(+1, 0.0, 0.0, 0.0, 1.0, 0.0), InvalidArgument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(xi_integrals(+1, nan, 0.0, 0.0, 1.0, 1.0), InvalidArgument);
}

TEST_CASE("overflowing cavity thresholds raise a numeric-overflow error") {
    // finite inputs whose center delta - (1-q) a overflows to infinity
    try {
        xi_integrals(+1, 1e308, -1e308, 0.0, 1.0, 1.0);
        FAIL("expected a throw");
    } catch (const NumericOverflow& e) {
        CHECK((std::isinf(e.w_minus()) || std::isinf(e.w_plus())));
    }
}
