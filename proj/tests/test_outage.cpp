#include "wprelay/battery/steady_state.hpp"
#include "wprelay/errors.hpp"
#include "wprelay/model/config.hpp"
#include "wprelay/outage/single_cell.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace wpr;

namespace {

model::NetworkConfig config_at(double lambda, double power_db) {
    model::NetworkConfig cfg;
    cfg.lambda = lambda;
    cfg.power = std::pow(10.0, power_db / 10.0) * cfg.noise;
    return cfg;
}

} // namespace

TEST_CASE("estimate mode names round trip") {
    using outage::EstimateMode;
    for (auto mode : {EstimateMode::analytic, EstimateMode::asymptotic,
                      EstimateMode::simulated}) {
        CHECK(outage::mode_from_name(outage::mode_name(mode)) == mode);
    }
    CHECK_THROWS_AS(outage::mode_from_name("exact"), std::invalid_argument);
}

// Frozen references were produced by this implementation at first
// validation and are cross-checked against the Monte Carlo engine (within
// three standard errors at 1e6 slots) in the acceptance suite; here they pin
// the closed forms against regressions.
TEST_CASE("closed-form outage reference points") {
    SUBCASE("lambda 1, 30 dB") {
        const auto cfg = config_at(1.0, 30.0);
        CHECK(std::abs(outage::outage(model::SchemeId::RRS, cfg).value -
                       0.11479784553738362) <= 1e-12);
        CHECK(std::abs(outage::outage(model::SchemeId::RCS, cfg).value - 0.107837) <= 5e-7);
        CHECK(std::abs(outage::outage(model::SchemeId::RRSB, cfg).value - 0.037984) <= 5e-7);
        CHECK(std::abs(outage::outage(model::SchemeId::RCSB, cfg).value - 0.030473) <= 5e-7);
        CHECK(std::abs(outage::outage(model::SchemeId::DB, cfg).value - 0.000351) <= 5e-7);
    }
    SUBCASE("lambda 0.5, 20 dB") {
        const auto cfg = config_at(0.5, 20.0);
        CHECK(std::abs(outage::outage(model::SchemeId::RRS, cfg).value - 0.406343) <= 5e-7);
        CHECK(std::abs(outage::outage(model::SchemeId::RCS, cfg).value - 0.375922) <= 5e-7);
        CHECK(std::abs(outage::outage(model::SchemeId::RRSB, cfg).value - 0.303319) <= 5e-7);
        CHECK(std::abs(outage::outage(model::SchemeId::RCSB, cfg).value - 0.268897) <= 5e-7);
        CHECK(std::abs(outage::outage(model::SchemeId::DB, cfg).value - 0.040762) <= 5e-7);
    }
    SUBCASE("result metadata") {
        const auto est = outage::outage(model::SchemeId::RCS, config_at(1.0, 30.0));
        CHECK(est.mode == outage::EstimateMode::analytic);
        CHECK(est.scheme == model::SchemeId::RCS);
        CHECK_FALSE(est.std_error.has_value());
        CHECK_FALSE(est.trials.has_value());
    }
}

TEST_CASE("hop factor decompositions") {
    const auto cfg = config_at(1.0, 30.0);
    SUBCASE("uniform success equals the product of its hops") {
        const auto hops = outage::hop_factors_uniform(cfg);
        CHECK(hops.first_hop > 0.0);
        CHECK(hops.first_hop <= 1.0);
        CHECK(hops.second_hop > 0.0);
        CHECK(hops.second_hop <= 1.0);
        CHECK(outage::success_uniform(cfg) ==
              doctest::Approx(hops.first_hop * hops.second_hop).epsilon(1e-12));
    }
    SUBCASE("nearest literal triple integral matches the factored product") {
        // The integrand separates in (r, theta) and x, so the 3d quadrature
        // and the product of 1d/2d quadratures must agree to their tolerances.
        for (double lambda_eff : {0.5, 1.0}) {
            const auto hops = outage::hop_factors_nearest(cfg, lambda_eff);
            const double literal = outage::success_nearest(cfg, lambda_eff);
            CHECK(literal ==
                  doctest::Approx(hops.first_hop * hops.second_hop).epsilon(1e-5));
        }
    }
    SUBCASE("uniform outage reassembles from void, occupancy, and success") {
        const double m = model::derive(cfg).mean_count;
        const double eta1 = battery::steady_state(model::SchemeId::RRS, cfg).eta1;
        const double q = outage::success_uniform(cfg);
        const double want =
            std::exp(-m) + (1.0 - std::exp(-m)) * (1.0 - eta1 * q);
        CHECK(outage::outage_rrs(cfg).value == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("beamforming series truncation") {
    SUBCASE("tiny term cap reports the partial sum") {
        const auto cfg = config_at(1.0, 30.0);
        try {
            outage::outage_db(cfg, 2);
            FAIL("expected convergence_error");
        } catch (const convergence_error& e) {
            CHECK(std::isfinite(e.best_estimate));
            CHECK(e.iterations_used == 2);
        }
    }
    SUBCASE("default truncation is stable against a far deeper sum") {
        // lambda = 4 pushes the mixture mode past 30 terms, the regime where
        // a fixed-count truncation would bite.
        const auto cfg = config_at(4.0, 30.0);
        const double coarse = outage::outage_db(cfg).value;
        const double deep = outage::outage_db(cfg, 400, 1e-16).value;
        CHECK(coarse == doctest::Approx(deep).epsilon(1e-10));
        CHECK(coarse > 0.0);
        CHECK(coarse < 1.0);
        const double floor = outage::outage_floor(model::SchemeId::DB, cfg).value;
        CHECK(coarse >= floor * (1.0 - 1e-9));
    }
    SUBCASE("beamforming beats single-relay selection") {
        const auto cfg = config_at(1.0, 30.0);
        CHECK(outage::outage_db(cfg).value < outage::outage_rrs(cfg).value);
    }
}

TEST_CASE("high-power floors") {
    SUBCASE("frozen values") {
        // Independently computed with an arbitrary-precision library at
        // alpha = 2, lambda = 1 (floors do not depend on transmit power).
        model::NetworkConfig cfg;
        cfg.alpha = 2.0;
        CHECK(outage::outage_floor(model::SchemeId::RRS, cfg).value ==
              doctest::Approx(0.055962739346314263).epsilon(1e-12));
        CHECK(outage::outage_floor(model::SchemeId::RRSB, cfg).value ==
              doctest::Approx(2.80890871923855369e-12).epsilon(1e-12));
        CHECK(outage::outage_floor(model::SchemeId::DB, cfg).value ==
              doctest::Approx(2.57915165577442995e-5).epsilon(1e-12));
    }
    SUBCASE("uniform and nearest selection share a floor; battery-aware wins") {
        const auto cfg = config_at(1.0, 30.0);
        const double f_rrs = outage::outage_floor(model::SchemeId::RRS, cfg).value;
        const double f_rcs = outage::outage_floor(model::SchemeId::RCS, cfg).value;
        const double f_rrsb = outage::outage_floor(model::SchemeId::RRSB, cfg).value;
        const double f_rcsb = outage::outage_floor(model::SchemeId::RCSB, cfg).value;
        const double f_db = outage::outage_floor(model::SchemeId::DB, cfg).value;
        CHECK(std::abs(f_rrs - f_rcs) <= 1e-15 * f_rrs);
        CHECK(std::abs(f_rrsb - f_rcsb) <= 1e-15 * std::max(f_rrsb, 1e-300));
        CHECK(f_rrsb < f_db);
        CHECK(f_db < f_rrs);
    }
    SUBCASE("floors do not depend on the target rate") {
        for (auto scheme : model::kAllSchemes) {
            model::NetworkConfig a = config_at(1.0, 30.0);
            model::NetworkConfig b = a;
            a.rate = 0.1;
            b.rate = 1.5;
            const double fa = outage::outage_floor(scheme, a).value;
            const double fb = outage::outage_floor(scheme, b).value;
            CHECK(std::abs(fa - fb) <= 1e-12 * std::max(fa, 1e-300));
        }
    }
    SUBCASE("outage approaches its floor from above") {
        // The residual above the floor decays like the inverse power, so at
        // 80 dB it is ~1e-7 absolute; for the battery-aware schemes, whose
        // floor is ~6e-12 here, that residual dominates the band.
        for (auto scheme : model::kAllSchemes) {
            const double floor =
                outage::outage_floor(scheme, config_at(1.0, 80.0)).value;
            const double gap60 =
                outage::outage(scheme, config_at(1.0, 60.0)).value - floor;
            const double gap80 =
                outage::outage(scheme, config_at(1.0, 80.0)).value - floor;
            CHECK(gap80 >= -1e-9 * floor);
            CHECK(gap80 <= 0.01 * floor + 1e-6);
            CHECK(gap80 < gap60);
        }
    }
}

TEST_CASE("outage is a probability and decreases with power") {
    for (double lambda : {0.1, 1.0, 4.0}) {
        for (auto scheme : model::kAllSchemes) {
            double prev = 1.0 + 1e-12;
            for (double db : {0.0, 10.0, 20.0, 30.0, 40.0, 50.0}) {
                const double pi = outage::outage(scheme, config_at(lambda, db)).value;
                CHECK(pi >= 0.0);
                CHECK(pi <= 1.0);
                CHECK(pi <= prev * (1.0 + 1e-12));
                prev = pi;
            }
        }
    }
}

TEST_CASE("moderate-power expansions") {
    const auto cfg3 = config_at(1.0, 40.0);
    SUBCASE("uniform selection expansion is a probability-scale value") {
        const auto est = outage::outage_asymptote_moderate(model::SchemeId::RRS, cfg3);
        CHECK(est.mode == outage::EstimateMode::asymptotic);
        CHECK(std::isfinite(est.value));
        CHECK(est.value > 0.0);
        CHECK(est.value < 1.0);
    }
    SUBCASE("nearest selection expansion exists only for quadratic path loss") {
        model::NetworkConfig cfg2 = cfg3;
        cfg2.alpha = 2.0;
        const auto est = outage::outage_asymptote_moderate(model::SchemeId::RCS, cfg2);
        CHECK(est.value > 0.0);
        CHECK(est.value < 1.0);
        CHECK_THROWS_AS(outage::outage_asymptote_moderate(model::SchemeId::RCS, cfg3),
                        model_domain_error);
    }
    SUBCASE("battery-aware schemes have no moderate expansion") {
        CHECK_THROWS_AS(outage::outage_asymptote_moderate(model::SchemeId::RRSB, cfg3),
                        model_domain_error);
        CHECK_THROWS_AS(outage::outage_asymptote_moderate(model::SchemeId::RCSB, cfg3),
                        model_domain_error);
    }
    SUBCASE("beamforming expansion tracks the exact series at moderate power") {
        const double approx =
            outage::outage_asymptote_moderate(model::SchemeId::DB, cfg3).value;
        const double exact = outage::outage_db(cfg3).value;
        CHECK(approx > 0.0);
        const double ratio = approx / exact;
        CHECK(ratio > 0.7);
        CHECK(ratio < 1.4);
    }
}

TEST_CASE("quadrature failures carry their partial result") {
    const auto cfg = config_at(1.0, 30.0);
    numerics::QuadratureSpec strangled;
    strangled.relative_tolerance = 1e-14;
    strangled.absolute_tolerance = 1e-300;
    strangled.max_subdivisions = 1;
    try {
        outage::hop_factors_uniform(cfg, strangled);
        FAIL("expected tolerance_error");
    } catch (const tolerance_error& e) {
        CHECK(std::isfinite(e.best_estimate));
        CHECK(e.achieved_error > 0.0);
    }
}
