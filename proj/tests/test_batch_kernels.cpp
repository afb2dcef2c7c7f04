#include "wprelay/sim/batch.hpp"
#include "wprelay/sim/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <vector>

using namespace wpr::sim;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Argument set covering normal range, branch cuts, and IEEE specials.
std::vector<double> awkward_args() {
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> xs = {0.0,   -0.0,  1.0,    -1.0,  0.5,    1.5,  3.25,
                              -3.25, 2e-8,  -2e-8,  709.0, -709.0, 710.0, -746.0,
                              1e30,  -1e30, 5e-324, 1e-310, 6.25,  0.1};
    xs.push_back(inf);
    xs.push_back(-inf);
    xs.push_back(nan);
    // Dense fill so the vector bodies (not just tails) are exercised.
    RandomStream s(4242, kPurposeFadeH, 0);
    for (int i = 0; i < 997; ++i) xs.push_back((s.u01() - 0.5) * 20.0);
    return xs;
}

template <typename Fill>
std::vector<double> run_with_backend(bool scalar, std::size_t n, Fill fill) {
    std::vector<double> out(n);
    batch::force_scalar(scalar);
    fill(out.data());
    batch::force_scalar(false);
    return out;
}

} // namespace

TEST_CASE("runtime backend reporting is consistent") {
    if (!batch::avx2_compiled_in()) {
        CHECK(batch::active_backend() == batch::Backend::scalar);
        return;
    }
    batch::force_scalar(true);
    CHECK(batch::active_backend() == batch::Backend::scalar);
    batch::force_scalar(false);
}

TEST_CASE("vector backends agree bit for bit") {
    if (!batch::avx2_compiled_in() ||
        batch::active_backend() != batch::Backend::avx2) {
        MESSAGE("AVX2 unavailable; cross-backend equality not checkable here");
        return;
    }
    const auto xs = awkward_args();
    const std::size_t n = xs.size();

    SUBCASE("uniform fill") {
        const std::size_t m = 1003; // odd length forces a partial last block
        auto a = run_with_backend(true, m, [&](double* out) {
            batch::fill_u01(9001, kPurposePosition, 77, 0, out, m);
        });
        auto b = run_with_backend(false, m, [&](double* out) {
            batch::fill_u01(9001, kPurposePosition, 77, 0, out, m);
        });
        CHECK(same_bits(a, b));
    }
    SUBCASE("exponential fill") {
        auto a = run_with_backend(true, 1003, [&](double* out) {
            batch::fill_exponentials(9001, kPurposeFadeG, 3, 5, out, 1003);
        });
        auto b = run_with_backend(false, 1003, [&](double* out) {
            batch::fill_exponentials(9001, kPurposeFadeG, 3, 5, out, 1003);
        });
        CHECK(same_bits(a, b));
    }
    SUBCASE("exp") {
        auto a = run_with_backend(true, n,
                                  [&](double* out) { batch::vexp(xs.data(), out, n); });
        auto b = run_with_backend(false, n,
                                  [&](double* out) { batch::vexp(xs.data(), out, n); });
        CHECK(same_bits(a, b));
    }
    SUBCASE("log") {
        // Include negative arguments: both backends must yield NaN with the
        // same payload pattern as the scalar kernel.
        auto a = run_with_backend(true, n,
                                  [&](double* out) { batch::vlog(xs.data(), out, n); });
        auto b = run_with_backend(false, n,
                                  [&](double* out) { batch::vlog(xs.data(), out, n); });
        CHECK(same_bits(a, b));
    }
    SUBCASE("cos") {
        auto a = run_with_backend(true, n,
                                  [&](double* out) { batch::vcos(xs.data(), out, n); });
        auto b = run_with_backend(false, n,
                                  [&](double* out) { batch::vcos(xs.data(), out, n); });
        CHECK(same_bits(a, b));
    }
    SUBCASE("pow") {
        for (double e : {2.0, 3.0, -1.0, 0.5, 3.7}) {
            CAPTURE(e);
            auto a = run_with_backend(
                true, n, [&](double* out) { batch::vpow(xs.data(), e, out, n); });
            auto b = run_with_backend(
                false, n, [&](double* out) { batch::vpow(xs.data(), e, out, n); });
            CHECK(same_bits(a, b));
        }
    }
}

TEST_CASE("vector kernels match their scalar singles") {
    const auto xs = awkward_args();
    const std::size_t n = xs.size();
    std::vector<double> v(n);
    batch::vexp(xs.data(), v.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
        const double want = batch::det_exp(xs[i]);
        const bool equal = std::memcmp(&v[i], &want, sizeof(double)) == 0 ||
                           (std::isnan(v[i]) && std::isnan(want));
        CHECK(equal);
    }
    batch::vcos(xs.data(), v.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
        const double want = batch::det_cos(xs[i]);
        const bool equal = std::memcmp(&v[i], &want, sizeof(double)) == 0 ||
                           (std::isnan(v[i]) && std::isnan(want));
        CHECK(equal);
    }
}

TEST_CASE("kernel accuracy against the standard library") {
    RandomStream s(31, kPurposeFadeH, 9);
    for (int i = 0; i < 5000; ++i) {
        const double x = (s.u01() - 0.5) * 40.0;
        const double e = batch::det_exp(x);
        CHECK(std::abs(e - std::exp(x)) <= 5e-15 * std::exp(x));
        const double ax = std::abs(x) + 1e-6;
        CHECK(std::abs(batch::det_log(ax) - std::log(ax)) <=
              5e-15 * std::max(1.0, std::abs(std::log(ax))));
        const double theta = s.u01() * 6.283185307179586;
        CHECK(std::abs(batch::det_cos(theta) - std::cos(theta)) <= 5e-15);
        const double base = s.u01() * 10.0 + 0.01;
        CHECK(std::abs(batch::det_pow(base, 3.7) - std::pow(base, 3.7)) <=
              1e-13 * std::pow(base, 3.7));
    }
}

TEST_CASE("deterministic special values") {
    const double inf = std::numeric_limits<double>::infinity();
    SUBCASE("exp saturates cleanly") {
        CHECK(batch::det_exp(710.0) == inf);
        CHECK(batch::det_exp(-746.0) == 0.0);
        CHECK(batch::det_exp(0.0) == 1.0);
        CHECK(batch::det_exp(inf) == inf);
        CHECK(batch::det_exp(-inf) == 0.0);
    }
    SUBCASE("log edge cases") {
        CHECK(batch::det_log(0.0) == -inf);
        CHECK(std::isnan(batch::det_log(-1.0)));
        CHECK(batch::det_log(1.0) == 0.0);
        CHECK(std::isfinite(batch::det_log(5e-324)));  // subnormal argument
        CHECK(std::isfinite(batch::det_log(1e-310)));
    }
    SUBCASE("pow with the hot-path integer exponents is plain multiplies") {
        RandomStream s(77, kPurposeFadeG, 1);
        for (int i = 0; i < 200; ++i) {
            const double b = (s.u01() + 0.01) * 5.0;
            const double sq = b * b;
            CHECK(batch::det_pow(b, 2.0) == sq);
            CHECK(batch::det_pow(b, 3.0) == sq * b);
            CHECK(batch::det_pow(b, 4.0) == sq * sq);
            CHECK(batch::det_pow(b, -2.0) == 1.0 / sq);
            CHECK(batch::det_pow(b, -3.0) == 1.0 / (sq * b));
            // Other exponents take the exp/log route and are only
            // accuracy-equal, not bit-equal, to the closed form.
            CHECK(batch::det_pow(b, -1.0) ==
                  doctest::Approx(1.0 / b).epsilon(1e-14));
        }
    }
    SUBCASE("cos at exact zero") {
        CHECK(batch::det_cos(0.0) == 1.0);
    }
}

TEST_CASE("uniform fill semantics") {
    const std::size_t n = 1000;
    std::vector<double> whole(n);
    batch::fill_u01(6502, kPurposeSubset, 12, 0, whole.data(), n);
    SUBCASE("range") {
        double sum = 0.0;
        for (double u : whole) {
            CHECK(u >= 0.0);
            CHECK(u < 1.0);
            sum += u;
        }
        CHECK(std::abs(sum / n - 0.5) <= 4.5 / std::sqrt(12.0 * n));
    }
    SUBCASE("chunked fills reproduce the whole fill") {
        // Each counter block yields two doubles, so element 300 begins at
        // block 150; filling [0,300) then [300,1000) must match one call.
        std::vector<double> parts(n);
        batch::fill_u01(6502, kPurposeSubset, 12, 0, parts.data(), 300);
        batch::fill_u01(6502, kPurposeSubset, 12, 150, parts.data() + 300, 700);
        CHECK(same_bits(whole, parts));
    }
    SUBCASE("distinct substreams differ") {
        std::vector<double> other(n);
        batch::fill_u01(6502, kPurposeSubset, 13, 0, other.data(), n);
        CHECK_FALSE(same_bits(whole, other));
    }
}

TEST_CASE("exponential fill semantics") {
    const std::size_t n = 4000;
    std::vector<double> out(n);
    batch::fill_exponentials(99, kPurposeFadeH, 4, 0, out.data(), n);
    double sum = 0.0;
    for (double e : out) {
        CHECK(e >= 0.0);
        CHECK(std::isfinite(e));
        sum += e;
    }
    CHECK(std::abs(sum / n - 1.0) <= 4.5 / std::sqrt(static_cast<double>(n)));
}
