#include "wprelay/validate.hpp"

#include <doctest.h>

#include <stdexcept>
#include <string>

using namespace wpr;

namespace {

validate::Options quick_options() {
    validate::Options o;
    o.quick = true;
    return o;
}

} // namespace

TEST_CASE("criterion index range") {
    CHECK_THROWS_AS(validate::run_criterion(0, quick_options()), std::invalid_argument);
    CHECK_THROWS_AS(validate::run_criterion(9, quick_options()), std::invalid_argument);
}

TEST_CASE("numerics criterion runs standalone") {
    const auto checks = validate::run_criterion(7, quick_options());
    CHECK_FALSE(checks.empty());
    CHECK(validate::all_passed(checks));
    for (const auto& c : checks) CHECK(c.criterion == 7);
}

TEST_CASE("quick validation passes end to end") {
    const auto checks = validate::run_all(quick_options());
    CHECK(validate::all_passed(checks));
    // Every criterion contributes at least one check.
    for (int k = 1; k <= 8; ++k) {
        bool seen = false;
        for (const auto& c : checks) seen = seen || c.criterion == k;
        CHECK_MESSAGE(seen, "criterion " << k << " produced no checks");
    }
    SUBCASE("report format") {
        const std::string report = validate::format_report(checks);
        CHECK(report.find("[PASS]") != std::string::npos);
        CHECK(report.find("[FAIL]") == std::string::npos);
        // Reports must be reproducible verbatim for the same options.
        CHECK(report == validate::format_report(validate::run_all(quick_options())));
    }
}

TEST_CASE("a corrupted floor is caught") {
    // Negative control: breaking the beamforming floor must flip criterion 3
    // to FAIL, proving the harness actually compares against the floors.
    auto o = quick_options();
    o.corrupt_eta1 = true;
    const auto checks = validate::run_criterion(3, o);
    CHECK_FALSE(validate::all_passed(checks));
}
