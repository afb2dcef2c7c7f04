#include "wprelay/numerics/quadrature.hpp"
#include "wprelay/numerics/special.hpp"

#include <doctest.h>

#include <cmath>

using namespace wpr;

// Reference values computed independently with an arbitrary-precision
// library and rounded to double.

TEST_CASE("lower incomplete gamma") {
    CHECK(numerics::gamma_lower(1.0, 1.0) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));
    CHECK(numerics::gamma_lower(0.5, 1.0) ==
          doctest::Approx(1.49364826562485405).epsilon(1e-13));
    CHECK(numerics::gamma_lower(1.0, 0.9) ==
          doctest::Approx(0.593430340259400888).epsilon(1e-13));
    // Deep saturation: gamma(2/3, 49.39) is Gamma(2/3) to double precision.
    CHECK(numerics::gamma_lower(2.0 / 3.0, 49.3901) ==
          doctest::Approx(1.35411793942640042).epsilon(1e-13));
    CHECK(numerics::gamma_lower(0.7, 0.0) == 0.0);

    SUBCASE("monotone in x") {
        double prev = 0.0;
        for (double x = 0.1; x <= 12.0; x += 0.37) {
            const double cur = numerics::gamma_lower(2.0 / 3.0, x);
            CHECK(cur > prev);
            prev = cur;
        }
    }

    SUBCASE("regularized form matches erf") {
        // P(1/2, x) = erf(sqrt(x)).
        for (double x : {0.1, 0.5, 1.0, 2.5, 7.0}) {
            CHECK(numerics::gamma_lower_regularized(0.5, x) ==
                  doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
        }
    }
}

TEST_CASE("gauss hypergeometric") {
    SUBCASE("b == c reduction to a binomial") {
        for (double x : {0.05, 0.1, 0.4, 0.8, 0.95}) {
            CHECK(numerics::gauss_2f1(0.7, 1.3, 1.3, x) ==
                  doctest::Approx(std::pow(1.0 - x, -0.7)).epsilon(1e-12));
            CHECK(numerics::gauss_2f1(2.0, 0.5, 0.5, x) ==
                  doctest::Approx(std::pow(1.0 - x, -2.0)).epsilon(1e-12));
        }
    }
    SUBCASE("domain is [0,1)") {
        CHECK_THROWS(numerics::gauss_2f1(1.0, 2.0, 4.0 / 3.0, -0.2));
        CHECK_THROWS(numerics::gauss_2f1(1.0, 2.0, 4.0 / 3.0, 1.0));
    }
    // The parameter pattern used by the interference transform, on both
    // sides of the series/transformation switch.
    CHECK(numerics::gauss_2f1(1.0, 2.0, 4.0 / 3.0, 0.3) ==
          doctest::Approx(1.71857727126660542).epsilon(1e-12));
    CHECK(numerics::gauss_2f1(1.0, 2.0, 4.0 / 3.0, 0.875) ==
          doctest::Approx(26.7494993380530536).epsilon(1e-12));
}

TEST_CASE("modified bessel I0") {
    CHECK(numerics::bessel_i0(0.0) == 1.0);
    CHECK(numerics::bessel_i0(1.0) ==
          doctest::Approx(1.26606587775200834).epsilon(1e-13));
    CHECK(numerics::bessel_i0(3.7) ==
          doctest::Approx(8.73861752416939558).epsilon(1e-13));
    // Only the nonnegative axis is defined (the model never needs x < 0).
    CHECK_THROWS(numerics::bessel_i0(-1.0));
}

TEST_CASE("adaptive quadrature on polynomials is exact") {
    // Gauss-Kronrod 7-15 integrates these without any subdivision error;
    // only rounding remains.
    const double q1 = numerics::integrate_1d(
        [](double x) { return x * x * x * x * x; }, 0.0, 1.0);
    CHECK(std::abs(q1 - 1.0 / 6.0) <= 1e-12);

    auto poly = [](double x) {
        return ((((5.0 * x - 4.0) * x + 3.0) * x - 2.0) * x + 1.0) * x - 1.0;
    };
    auto antiderivative = [](double x) {
        const double x2 = x * x, x3 = x2 * x;
        return 5.0 / 6.0 * x3 * x3 - 4.0 / 5.0 * x2 * x3 + 3.0 / 4.0 * x2 * x2 -
               2.0 / 3.0 * x3 + 0.5 * x2 - x;
    };
    const double want = antiderivative(2.0) - antiderivative(-1.0);
    CHECK(std::abs(numerics::integrate_1d(poly, -1.0, 2.0) - want) <= 1e-12);
}

TEST_CASE("adaptive quadrature on transcendental integrands") {
    CHECK(numerics::integrate_1d([](double x) { return std::sin(x); }, 0.0,
                                 3.14159265358979323846) ==
          doctest::Approx(2.0).epsilon(1e-10));
    // Peaked integrand forcing subdivision.
    const double peaked = numerics::integrate_1d(
        [](double x) { return std::exp(-50.0 * x * x); }, -3.0, 3.0);
    CHECK(peaked == doctest::Approx(std::sqrt(3.14159265358979323846 / 50.0))
                        .epsilon(1e-9));
}

TEST_CASE("polar disc integral recovers the area") {
    const double rho = 3.0;
    const double area = numerics::integrate_polar_disc(
        [](double r, double) { return r; }, rho);
    CHECK(area == doctest::Approx(3.14159265358979323846 * rho * rho).epsilon(1e-9));
}

TEST_CASE("nested 3d integral matches separable product") {
    numerics::Bounds3 b{0.0, 1.5, 0.0, 2.0, 0.0, 1.0};
    const double got = numerics::integrate_3d(
        [](double r, double x, double theta) {
            return std::exp(-r) * x * std::cos(theta);
        },
        b);
    const double want = (1.0 - std::exp(-1.5)) * 2.0 * std::sin(1.0);
    CHECK(got == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("exhausted subdivisions raise tolerance_error with the best estimate") {
    numerics::QuadratureSpec strangled{1e-15, 1e-300, 1};
    bool threw = false;
    try {
        numerics::integrate_1d([](double x) { return std::cos(40.0 * x * x); },
                               0.0, 10.0, strangled);
    } catch (const tolerance_error& e) {
        threw = true;
        CHECK(std::isfinite(e.best_estimate));
        CHECK(e.achieved_error > 0.0);
    }
    CHECK(threw);
}
