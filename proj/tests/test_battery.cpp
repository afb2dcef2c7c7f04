#include "wprelay/battery/steady_state.hpp"
#include "wprelay/errors.hpp"
#include "wprelay/model/config.hpp"

#include <doctest.h>

#include <cmath>

using namespace wpr;

namespace {
constexpr double kPi = 3.14159265358979323846;

model::NetworkConfig config_with(double lambda, double alpha) {
    model::NetworkConfig cfg;
    cfg.lambda = lambda;
    cfg.alpha = alpha;
    return cfg;
}
} // namespace

// Reference values below were computed independently with an
// arbitrary-precision library.

TEST_CASE("charge probability") {
    CHECK(battery::charge_probability(config_with(1.0, 2.0)) ==
          doctest::Approx(0.596619974293908057).epsilon(1e-12));
    CHECK(battery::charge_probability(config_with(1.0, 3.0)) ==
          doctest::Approx(0.407577235468996552).epsilon(1e-12));
    // Density does not enter the per-relay harvest chance.
    CHECK(battery::charge_probability(config_with(0.25, 3.0)) ==
          battery::charge_probability(config_with(2.0, 3.0)));
}

TEST_CASE("mean inverse count restricted to nonzero") {
    CHECK(battery::mean_inverse_count_nonzero(4.5 * kPi) ==
          doctest::Approx(0.0766671238531465435).epsilon(1e-12));
    CHECK(battery::mean_inverse_count_nonzero(9.0 * kPi) ==
          doctest::Approx(0.0367181441884979285).epsilon(1e-12));
    SUBCASE("pmf recurrence and asymptotic branches agree at the switch") {
        // Independent long-form sum e^-m sum_k m^k/(k! k), evaluated on both
        // sides of the library's internal branch point.
        auto direct = [](double m) {
            double pmf = m * std::exp(-m);
            double sum = pmf;
            for (int k = 2; k <= 600; ++k) {
                pmf *= m / k;
                sum += pmf / k;
            }
            return sum;
        };
        for (double m : {49.999, 50.001}) {
            CHECK(battery::mean_inverse_count_nonzero(m) ==
                  doctest::Approx(direct(m)).epsilon(1e-12));
        }
    }
    SUBCASE("bounded by the unconditioned Jensen value") {
        for (double m : {5.0, 15.0, 40.0, 120.0}) {
            const double exact = battery::mean_inverse_count_nonzero(m);
            CHECK(exact > 1.0 / m);  // E[1/N | N>=1] exceeds 1/E[N]
            CHECK(exact < 1.0);
        }
    }
}

TEST_CASE("stationary distribution closed forms") {
    SUBCASE("uniform selection") {
        CHECK(battery::steady_state(model::SchemeId::RRS, config_with(1.0, 2.0)).eta1 ==
              doctest::Approx(0.944037260653685737).epsilon(1e-12));
        CHECK(battery::steady_state(model::SchemeId::RRS, config_with(0.5, 3.0)).eta1 ==
              doctest::Approx(0.852114483804747813).epsilon(1e-12));
        CHECK(battery::steady_state(model::SchemeId::RRS, config_with(1.0, 3.0)).eta1 ==
              doctest::Approx(0.92015314523567947).epsilon(1e-12));
    }
    SUBCASE("nearest selection shares the chain with uniform") {
        const auto a = battery::steady_state(model::SchemeId::RRS, config_with(1.0, 3.0));
        const auto b = battery::steady_state(model::SchemeId::RCS, config_with(1.0, 3.0));
        CHECK(a.eta1 == b.eta1);
        CHECK(a.pi1 == b.pi1);
    }
    SUBCASE("battery-aware selection") {
        CHECK(battery::steady_state(model::SchemeId::RRSB, config_with(1.0, 2.0)).eta1 ==
              doctest::Approx(0.940719776984688478).epsilon(1e-12));
        const auto c = battery::steady_state(model::SchemeId::RCSB, config_with(1.0, 2.0));
        CHECK(c.eta1 == doctest::Approx(0.940719776984688478).epsilon(1e-12));
    }
    SUBCASE("beamforming") {
        const auto db = battery::steady_state(model::SchemeId::DB, config_with(1.0, 2.0));
        CHECK(db.eta1 == doctest::Approx(0.373676882351267272).epsilon(1e-12));
        CHECK(db.pi1 == 1.0);
    }
    SUBCASE("occupancies sum to one") {
        for (auto scheme : model::kAllSchemes) {
            const auto s = battery::steady_state(scheme, config_with(1.0, 3.0));
            CHECK(s.eta0 + s.eta1 == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(s.pi0 > 0.0);
            CHECK(s.pi1 > 0.0);
        }
    }
}

TEST_CASE("uniform and battery-aware charged fractions are algebraically tied") {
    // eta1 for uniform selection equals 1/(2 - eta1 for battery-aware
    // selection) in the Jensen-averaged chain.
    for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double rrs =
            battery::steady_state(model::SchemeId::RRS, config_with(lambda, 3.0)).eta1;
        const double rrsb =
            battery::steady_state(model::SchemeId::RRSB, config_with(lambda, 3.0)).eta1;
        CHECK(std::abs(rrs - 1.0 / (2.0 - rrsb)) <= 1e-12);
    }
}

TEST_CASE("beamforming charged fraction is density-invariant and at most 1/2") {
    const double ref =
        battery::steady_state(model::SchemeId::DB, config_with(1.0, 3.0)).eta1;
    for (double lambda : {0.1, 0.5, 2.0, 8.0}) {
        const double v =
            battery::steady_state(model::SchemeId::DB, config_with(lambda, 3.0)).eta1;
        CHECK(std::abs(v - ref) <= 1e-12);
        CHECK(v <= 0.5);
    }
}

TEST_CASE("exact count averaging") {
    SUBCASE("uniform selection uses the truncated-Poisson mean directly") {
        const model::NetworkConfig cfg = config_with(1.0, 3.0);
        const double m = model::derive(cfg).mean_count;
        const double pi0 = battery::charge_probability(cfg);
        const double want = pi0 / (pi0 + battery::mean_inverse_count_nonzero(m));
        CHECK(battery::steady_state(model::SchemeId::RRS, cfg,
                                    battery::CountAveraging::exact_poisson)
                  .eta1 == doctest::Approx(want).epsilon(1e-14));
    }
    SUBCASE("battery-aware selection satisfies its fixed point") {
        const model::NetworkConfig cfg = config_with(1.0, 3.0);
        const double m = model::derive(cfg).mean_count;
        const double pi0 = battery::charge_probability(cfg);
        const double eta =
            battery::steady_state(model::SchemeId::RRSB, cfg,
                                  battery::CountAveraging::exact_poisson)
                .eta1;
        const double residual =
            eta - pi0 / (pi0 + battery::mean_inverse_count_nonzero(m * eta));
        CHECK(std::abs(residual) <= 1e-12);
    }
    SUBCASE("beamforming has no count average to approximate") {
        const model::NetworkConfig cfg = config_with(1.0, 3.0);
        CHECK(battery::steady_state(model::SchemeId::DB, cfg).eta1 ==
              battery::steady_state(model::SchemeId::DB, cfg,
                                    battery::CountAveraging::exact_poisson)
                  .eta1);
    }
    SUBCASE("approximation gap shrinks with the mean relay count") {
        double prev = 1.0;
        for (double lambda : {0.5, 1.0, 2.0, 4.0}) {
            const model::NetworkConfig cfg = config_with(lambda, 3.0);
            const double gap = std::abs(
                battery::steady_state(model::SchemeId::RRS, cfg).eta1 -
                battery::steady_state(model::SchemeId::RRS, cfg,
                                      battery::CountAveraging::exact_poisson)
                    .eta1);
            CHECK(gap < prev);
            prev = gap;
        }
    }
}

TEST_CASE("battery-starved regime has no stationary point") {
    // With pi0 < 1/m, the battery-aware chain's self-consistency has no
    // solution in the model; the closed form must refuse rather than return
    // an occupancy above one.
    const model::NetworkConfig sparse = config_with(0.05, 3.0);
    CHECK_THROWS_AS(battery::steady_state(model::SchemeId::RRSB, sparse),
                    model_domain_error);
    CHECK_THROWS_AS(battery::steady_state(model::SchemeId::RCSB, sparse),
                    model_domain_error);
    // Uniform selection and beamforming remain well defined there.
    CHECK_NOTHROW(battery::steady_state(model::SchemeId::RRS, sparse));
    CHECK_NOTHROW(battery::steady_state(model::SchemeId::DB, sparse));
}
