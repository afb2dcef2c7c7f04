#include "wprelay/sim/multicell.hpp"

#include "engine_detail.hpp"
#include "wprelay/errors.hpp"
#include "wprelay/sim/batch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace wpr::sim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 2 pi mu integral_a^b r^(1-alpha) dr: expected normalized interference of
// the annulus [a, b].
double band_mean(double mu, double alpha, double a, double b) {
    const double p = 2.0 - alpha;
    return 2.0 * kPi * mu * (std::pow(a, p) - std::pow(b, p)) / (alpha - 2.0);
}

// Variance of the same band for unit-mean exponential marks (E[H^2] = 2):
// 2 pi mu E[H^2] integral_a^b r^(-2 alpha) r dr.
double band_variance(double mu, double alpha, double a, double b) {
    const double p = 2.0 - 2.0 * alpha;
    return 4.0 * kPi * mu * (std::pow(a, p) - std::pow(b, p)) / (2.0 * alpha - 2.0);
}

} // namespace

InterferenceParams make_interference_params(const model::MultiCellConfig& config) {
    model::validate(config);
    const auto dp = model::derive(config.base);
    InterferenceParams p;
    p.mu = config.mu;
    p.alpha = config.base.alpha;
    p.epsilon = dp.epsilon;
    p.inner_radius = config.base.rho;
    p.outer_radius = config.truncation_radius;
    p.split_radius = std::min(8.0 * p.inner_radius, p.outer_radius);
    p.inner_mean_count =
        p.mu * kPi * (p.split_radius * p.split_radius - p.inner_radius * p.inner_radius);
    if (p.split_radius < p.outer_radius) {
        p.remainder_mean = band_mean(p.mu, p.alpha, p.split_radius, p.outer_radius);
        p.remainder_sd = std::sqrt(band_variance(p.mu, p.alpha, p.split_radius, p.outer_radius));
    }
    return p;
}

double mean_interference(const InterferenceParams& params) {
    return band_mean(params.mu, params.alpha, params.inner_radius, params.outer_radius);
}

double sample_interference(const InterferenceParams& params, RandomStream& rng) {
    // Near band: exact PPP. Counts, radii (area-uniform), and marks all come
    // from the same sequential stream; the sum accumulates in draw order,
    // scalar, so it is reproducible.
    const long long k = rng.poisson(params.inner_mean_count);
    const double r2lo = params.inner_radius * params.inner_radius;
    const double r2span = params.split_radius * params.split_radius - r2lo;
    double sum = 0.0;
    for (long long i = 0; i < k; ++i) {
        const double r = std::sqrt(r2lo + rng.u01() * r2span);
        const double mark = rng.exponential();
        sum += mark * batch::det_pow(r, -params.alpha);
    }
    // Far band: thousands of tiny independent terms; a clipped Gaussian with
    // the exact aggregate mean/sd is indistinguishable at the tolerances in
    // play here.
    if (params.remainder_mean > 0.0) {
        const double g = rng.normal();
        sum += std::max(0.0, params.remainder_mean + params.remainder_sd * g);
    }
    return sum;
}

double sample_interference(const InterferenceParams& params, std::uint64_t seed,
                           std::uint64_t stream_id) {
    RandomStream rng(seed, kPurposeInterference, stream_id);
    return sample_interference(params, rng);
}

SlotOutcome run_slot_multicell(model::SchemeId scheme, const TopologyRealization& topology,
                               BatteryState& battery, const model::MultiCellConfig& config,
                               RandomStream& rng) {
    if (scheme == model::SchemeId::DB)
        throw model_domain_error("distributed beamforming is not part of the multi-cell model");
    if (battery.size() != topology.relays.size())
        throw std::invalid_argument("run_slot_multicell: battery vector does not match topology");
    model::validate(config);
    const auto dp = model::derive(config.base);
    const InterferenceParams ip = make_interference_params(config);
    const double interference = sample_interference(ip, rng);
    const double decode_coef = dp.xi + dp.epsilon * interference;
    const double charge_coeff = config.base.psi / config.base.zeta;
    const int n = static_cast<int>(topology.relays.size());

    std::vector<double> d(static_cast<std::size_t>(n)), theta(static_cast<std::size_t>(n)),
        dalpha(static_cast<std::size_t>(n)), t_first(static_cast<std::size_t>(n)),
        t_charge(static_cast<std::size_t>(n)), h2(static_cast<std::size_t>(n)),
        g2(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        d[static_cast<std::size_t>(j)] = topology.relays[static_cast<std::size_t>(j)].distance_to_ap;
        theta[static_cast<std::size_t>(j)] = topology.relays[static_cast<std::size_t>(j)].angle;
    }
    batch::vpow(d.data(), config.base.alpha, dalpha.data(), static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        // First hop is an SINR test with unbounded loss; harvesting keeps the
        // bounded model.
        t_first[static_cast<std::size_t>(j)] = dalpha[static_cast<std::size_t>(j)] * decode_coef;
        t_charge[static_cast<std::size_t>(j)] =
            charge_coeff * (1.0 + dalpha[static_cast<std::size_t>(j)]);
    }
    for (int j = 0; j < n; ++j) h2[static_cast<std::size_t>(j)] = rng.exponential();
    for (int j = 0; j < n; ++j) g2[static_cast<std::size_t>(j)] = rng.exponential();

    detail::SlotView view;
    view.n = n;
    view.d = d.data();
    view.theta = theta.data();
    view.t_first = t_first.data();
    view.t_charge = t_charge.data();
    view.h2 = h2.data();
    view.g2 = g2.data();
    view.second_coeff = dp.xi / config.base.psi;
    view.d0 = topology.destination_distance;
    view.alpha = config.base.alpha;
    auto bat = [&battery](int j) -> Battery& { return battery[static_cast<std::size_t>(j)]; };
    return detail::step_slot(scheme, view, bat, rng, nullptr);
}

} // namespace wpr::sim
